#ifndef MAJ3_ERMS_HPP
#define MAJ3_ERMS_HPP

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "instances.hpp"

namespace maj3::erms {

// The triple of equal-length grids the adversarial interval ERM overlays on
// (0,1] at training size m:
//   m1 = ceil(C*m / ln(C*m/d))          coarse cells I_i
//   m2 = ceil(4*C*m / (m1*ln(ln(C*m/d)))) subcells I_(i,j) per coarse cell
//   m3 = ceil(2*C*m / ln(2*C*m/d))      cells J_k
// m3 at size m is computed by evaluating the m1 formula at size 2m, so the
// identity m3(m) == m1(2m) holds bit-for-bit by construction.
struct PartitionScheme {
  std::int64_t m;
  std::int64_t d;
  double C;
  std::int64_t m1;
  std::int64_t m2;
  std::int64_t m3;
};

// Requires C*m/d > e (so both ln(C*m/d) and ln(ln(C*m/d)) are positive) and
// m >= 2; throws std::invalid_argument naming the failing inequality.
PartitionScheme build_partition(std::int64_t m, std::int64_t d, double C);

// Right endpoint of cell j in the k-cell equal partition of (0,1]; the
// canonical rounding of the rational j/k. All grid endpoints everywhere in
// this module come from this one function, so identical grids compare
// bit-equal.
double grid_edge(std::int64_t j, std::int64_t k);

// 1-based index of the cell of the k-cell grid containing x in (0,1],
// under the (lo, hi] convention evaluated against the rounded endpoint
// doubles (membership agrees exactly with geometry::contains on cells built
// from grid_edge).
std::int64_t cell_of(double x, std::int64_t k);

// The two index sets the adversarial ERM marks with label 1: L1 holds up to
// d subcell pairs (i,j), L2 up to d J-cell indices, both first-d in
// lexicographic order ((i,j) <= (i',j') iff i < i', or i == i' and j <= j').
struct IndexSelection {
  std::vector<std::pair<std::int64_t, std::int64_t>> L1;
  std::vector<std::int64_t> L2;
};

// Hypothesis over the finite domain {1..N}: indicator of `ones` (sorted
// ascending, distinct).
struct FiniteHypothesis {
  std::int64_t domain_size;
  std::vector<std::int64_t> ones;
  friend bool operator==(const FiniteHypothesis&, const FiniteHypothesis&) =
      default;
};

using Hypothesis = std::variant<geometry::IntervalSet, FiniteHypothesis>;

struct IntervalErmResult {
  geometry::IntervalSet hypothesis;
  IndexSelection selection;
  PartitionScheme scheme;
};

// The adversarial interval ERM at training size m = |sample|:
//   - coarse occupancy from the first floor(m/2) points against the I_i(m)
//     grid, subcell occupancy from the remaining points against I_(i,j)(m),
//     J occupancy from all points against J_k(m);
//   - L1 = first d empty subcells (i,j) with i among the first d empty
//     coarse cells; L2 = first d empty J cells;
//   - hypothesis = union of those subcells and J cells: at most 2d
//     intervals before canonical merging, consistent with the sample.
// A sample containing 1-labels (impossible under the all-zeros target) is
// handled by the degenerate consistent rule: at most 2d maximal zero-free
// intervals covering the runs of 1-points; throws if more runs exist, and
// the returned selection is empty.
IntervalErmResult adversarial_interval_erm(const instances::RealSample& sample,
                                           std::int64_t d, double C);

// Same occupancy / selection / hypothesis pipeline on an explicit scheme
// (m1, m2, m3 taken as given instead of derived from the sample size; the
// coarse half is still the first floor(|sample|/2) points). Requires an
// all-zeros labeled sample; throws std::invalid_argument otherwise. Lets a
// test or a diagram pin a small hand-made grid.
IntervalErmResult erm_on_scheme(const instances::RealSample& sample,
                                const PartitionScheme& scheme);

// Consistent hypothesis with as many 1s as possible: the d smallest-index
// domain elements absent from the sample (fewer if fewer exist). On
// 1-labeled inputs, returns the indicator of the distinct 1-points if there
// are at most d of them; throws otherwise.
FiniteHypothesis max_ones_erm(const instances::FiniteSample& sample,
                              std::int64_t d);

// The minimal consistent hypothesis under the all-zeros target: empty set /
// zero vector. Throws if any label is 1.
Hypothesis zero_erm(const instances::Sample& sample);

}  // namespace maj3::erms

#endif  // MAJ3_ERMS_HPP
