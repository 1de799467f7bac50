#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>

#include "doctest.h"
#include "instances.hpp"
#include "rng.hpp"

using maj3::Rng;
using maj3::instances::draw_sample;
using maj3::instances::FiniteHardInstance;
using maj3::instances::FiniteSample;
using maj3::instances::finite_domain_size;
using maj3::instances::Instance;
using maj3::instances::IntervalHardInstance;
using maj3::instances::RealSample;
using maj3::instances::Sample;

TEST_CASE("finite domain size at the documented points") {
  CHECK(finite_domain_size(1000, 1) == 145);
  CHECK(finite_domain_size(4, 2) == 6);
}

TEST_CASE("finite domain size needs n at least 2d") {
  CHECK_THROWS_AS(finite_domain_size(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(finite_domain_size(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(finite_domain_size(10, 0), std::invalid_argument);
  CHECK(finite_domain_size(2, 1) >= 2);
}

TEST_CASE("finite domain size is monotone in n") {
  std::int64_t prev = finite_domain_size(2, 1);
  for (std::int64_t n = 3; n <= 200000; ++n) {
    const std::int64_t cur = finite_domain_size(n, 1);
    CHECK(cur >= prev);
    prev = cur;
  }
  // Strided continuation to the spec's sweep limit.
  prev = finite_domain_size(200000, 1);
  for (std::int64_t n = 200000; n <= 1000000; n += 997) {
    const std::int64_t cur = finite_domain_size(n, 1);
    CHECK(cur >= prev);
    prev = cur;
  }
  prev = finite_domain_size(14, 7);
  for (std::int64_t n = 15; n <= 100000; n += 3) {
    const std::int64_t cur = finite_domain_size(n, 7);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("finite domain size never drops below d + 1") {
  for (std::int64_t d = 1; d <= 20; ++d) {
    for (std::int64_t n = 2 * d; n <= 2 * d + 50; ++n) {
      CHECK(finite_domain_size(n, d) >= d + 1);
    }
  }
}

TEST_CASE("same stream state gives the identical sample") {
  const Instance inst = IntervalHardInstance{2, 4.0};
  Rng a(42), b(42);
  const Sample sa = draw_sample(inst, 100, a);
  const Sample sb = draw_sample(inst, 100, b);
  const auto& ra = std::get<RealSample>(sa);
  const auto& rb = std::get<RealSample>(sb);
  CHECK(ra.points == rb.points);
  CHECK(ra.labels == rb.labels);
}

TEST_CASE("interval draws look uniform and carry zero labels") {
  const Instance inst = IntervalHardInstance{1, 4.0};
  Rng rng(7);
  const std::int64_t n = 20000;
  const Sample s = draw_sample(inst, n, rng);
  const auto& real = std::get<RealSample>(s);
  REQUIRE(real.points.size() == static_cast<std::size_t>(n));
  REQUIRE(real.labels.size() == static_cast<std::size_t>(n));
  double sum = 0.0;
  for (const double x : real.points) {
    CHECK(x > 0.0);
    CHECK(x <= 1.0);
    sum += x;
  }
  for (const auto lab : real.labels) CHECK(lab == 0);
  const double mean = sum / static_cast<double>(n);
  CHECK(std::abs(mean - 0.5) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("finite draws stay inside the domain with zero labels") {
  const Instance inst = FiniteHardInstance{37, 2};
  Rng rng(11);
  const Sample s = draw_sample(inst, 5000, rng);
  const auto& fin = std::get<FiniteSample>(s);
  CHECK(fin.domain_size == 37);
  bool saw_low = false;
  bool saw_high = false;
  for (const std::int64_t p : fin.points) {
    CHECK(p >= 1);
    CHECK(p <= 37);
    saw_low = saw_low || p == 1;
    saw_high = saw_high || p == 37;
  }
  for (const auto lab : fin.labels) CHECK(lab == 0);
  // 5000 draws over 37 values miss a fixed value with prob < 1e-59.
  CHECK(saw_low);
  CHECK(saw_high);
}
