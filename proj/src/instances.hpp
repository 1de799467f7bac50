#ifndef MAJ3_INSTANCES_HPP
#define MAJ3_INSTANCES_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "rng.hpp"

namespace maj3::instances {

// Finite-domain hard instance: domain {1..N}, target is the all-zeros
// function, the function class assigns 1 to at most d points.
struct FiniteHardInstance {
  std::int64_t domain_size;  // N
  std::int64_t d;
};

// Interval hard instance: domain (0,1] under the uniform distribution,
// target all-zeros, class = unions of at most 2d intervals (VC dimension
// 4d; documented, not asserted at runtime). C is the partition constant
// consumed by the adversarial interval ERM.
struct IntervalHardInstance {
  std::int64_t d;
  double C;
};

using Instance = std::variant<FiniteHardInstance, IntervalHardInstance>;

// Labeled sample over (0,1]. Labels are stored explicitly even though the
// targets here are all-zeros.
struct RealSample {
  std::vector<double> points;
  std::vector<std::uint8_t> labels;
};

// Labeled sample over {1..N}.
struct FiniteSample {
  std::int64_t domain_size;  // N
  std::vector<std::int64_t> points;
  std::vector<std::uint8_t> labels;
};

using Sample = std::variant<RealSample, FiniteSample>;

// Domain size for the finite hard instance at training size n:
// N = max(d+1, ceil(n / ln(n/d))). Requires n >= 2d and d >= 1; throws
// std::invalid_argument otherwise. The d+1 floor keeps the class
// nontrivial (some point is always unseen-able).
std::int64_t finite_domain_size(std::int64_t n, std::int64_t d);

// n i.i.d. uniform draws from the instance's domain, labeled by the
// all-zeros target. Fully determined by the rng stream.
Sample draw_sample(const Instance& instance, std::int64_t n, Rng& rng);

}  // namespace maj3::instances

#endif  // MAJ3_INSTANCES_HPP
