#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "doctest.h"
#include "erms.hpp"
#include "evaluation.hpp"
#include "geometry.hpp"
#include "instances.hpp"
#include "learners.hpp"
#include "rng.hpp"
#include "stats.hpp"

using maj3::Rng;
using maj3::erms::FiniteHypothesis;
using maj3::erms::Hypothesis;
using maj3::evaluation::conditional_error;
using maj3::evaluation::estimate_pointwise_mistake_prob;
using maj3::evaluation::exact_error;
using maj3::evaluation::joint_error;
using maj3::evaluation::monte_carlo_error;
using maj3::geometry::Interval;
using maj3::geometry::IntervalSet;
using maj3::geometry::measure;
using maj3::geometry::set_intersect;
using maj3::instances::FiniteHardInstance;
using maj3::instances::Instance;
using maj3::instances::IntervalHardInstance;

namespace {

IntervalSet make(std::initializer_list<Interval> raw) {
  std::vector<Interval> v(raw);
  return IntervalSet::normalize(v);
}

IntervalSet random_set(Rng& rng, int max_pieces) {
  for (;;) {
    const auto k = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::uint64_t>(max_pieces)));
    std::vector<double> cuts(2 * k);
    for (double& c : cuts) c = rng.uniform01();
    std::sort(cuts.begin(), cuts.end());
    if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) continue;
    std::vector<Interval> raw;
    raw.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      raw.push_back({cuts[2 * i], cuts[2 * i + 1]});
    }
    return IntervalSet::normalize(raw);
  }
}

const Instance kUnitInstance = IntervalHardInstance{1, 4.0};

}  // namespace

TEST_CASE("exact error of the empty hypothesis is zero") {
  CHECK(exact_error(Hypothesis{IntervalSet{}}, kUnitInstance) == 0.0);
  const Instance fin = FiniteHardInstance{30, 3};
  CHECK(exact_error(Hypothesis{FiniteHypothesis{30, {}}}, fin) == 0.0);
}

TEST_CASE("exact error counts ones over the finite domain") {
  const Instance fin = FiniteHardInstance{30, 3};
  const Hypothesis h = FiniteHypothesis{30, {4, 17, 30}};
  CHECK(exact_error(h, fin) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("exact error is the support measure on the interval domain") {
  const Hypothesis h = make({{0.1, 0.15}, {0.5, 0.52}});
  CHECK(exact_error(h, kUnitInstance) == doctest::Approx(0.07).epsilon(1e-12));
}

TEST_CASE("exact error rejects a domain mismatch") {
  const Instance fin = FiniteHardInstance{30, 3};
  CHECK_THROWS_AS(exact_error(Hypothesis{IntervalSet{}}, fin),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      exact_error(Hypothesis{FiniteHypothesis{30, {}}}, kUnitInstance),
      std::invalid_argument);
}

TEST_CASE("joint error of a hypothesis with itself is its error") {
  Rng rng(0xA1u);
  for (int it = 0; it < 100; ++it) {
    const IntervalSet s = random_set(rng, 6);
    CHECK(joint_error(Hypothesis{s}, Hypothesis{s}, kUnitInstance) ==
          exact_error(Hypothesis{s}, kUnitInstance));
  }
}

TEST_CASE("joint error of disjoint supports is zero") {
  const Hypothesis a = make({{0.1, 0.2}});
  const Hypothesis b = make({{0.7, 0.9}});
  CHECK(joint_error(a, b, kUnitInstance) == 0.0);
}

TEST_CASE("joint error equals the intersection measure") {
  Rng rng(0xA2u);
  for (int it = 0; it < 200; ++it) {
    const IntervalSet a = random_set(rng, 6);
    const IntervalSet b = random_set(rng, 6);
    CHECK(joint_error(Hypothesis{a}, Hypothesis{b}, kUnitInstance) ==
          measure(set_intersect(a, b)));
  }
}

TEST_CASE("finite joint error counts shared ones") {
  const Instance fin = FiniteHardInstance{20, 3};
  const Hypothesis a = FiniteHypothesis{20, {1, 5, 9}};
  const Hypothesis b = FiniteHypothesis{20, {5, 9, 11}};
  CHECK(joint_error(a, b, fin) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("conditioning on the full domain changes nothing") {
  Rng rng(0xA3u);
  const IntervalSet full = make({{0.0, 1.0}});
  for (int it = 0; it < 50; ++it) {
    const IntervalSet h = random_set(rng, 6);
    CHECK(conditional_error(Hypothesis{h}, full, kUnitInstance) ==
          doctest::Approx(exact_error(Hypothesis{h}, kUnitInstance))
              .epsilon(1e-15));
  }
}

TEST_CASE("conditioning scales a contained support by the region mass") {
  const Hypothesis h = make({{0.3, 0.4}});
  const IntervalSet region = make({{0.25, 0.75}});
  CHECK(conditional_error(h, region, kUnitInstance) ==
        doctest::Approx(0.1 / 0.5).epsilon(1e-12));
}

TEST_CASE("conditioning on a null region is an explicit error") {
  const Hypothesis h = make({{0.3, 0.4}});
  CHECK_THROWS_AS(conditional_error(h, IntervalSet{}, kUnitInstance),
                  std::domain_error);
}

TEST_CASE("iterated conditioning equals conditioning on the intersection") {
  // Restricting to R and then to B inside R is the same as restricting to
  // R n B directly: both sides reduce to mass(h n R n B) / mass(R n B).
  Rng rng(0xA4u);
  int checked = 0;
  while (checked < 100) {
    const IntervalSet h = random_set(rng, 5);
    const IntervalSet r = random_set(rng, 5);
    const IntervalSet b = random_set(rng, 5);
    const IntervalSet rb = set_intersect(r, b);
    if (measure(rb) <= 0.0) continue;
    ++checked;
    const double direct = conditional_error(Hypothesis{h}, rb, kUnitInstance);
    // Compose the two restrictions by hand: the outer restriction to R
    // leaves the conditional distribution on R, whose further restriction
    // to B weights h by mass(h n (R n B)) over mass(R n B).
    const double h_in_rb = measure(set_intersect(h, rb));
    const double composed = h_in_rb / measure(rb);
    CHECK(direct == doctest::Approx(composed).epsilon(1e-12));
  }
}

TEST_CASE("total probability over a partition recovers the exact error") {
  Rng rng(0xA5u);
  const IntervalSet bands[4] = {
      make({{0.0, 0.25}}),
      make({{0.25, 0.5}}),
      make({{0.5, 0.75}}),
      make({{0.75, 1.0}}),
  };
  for (int it = 0; it < 100; ++it) {
    const IntervalSet h = random_set(rng, 6);
    double total = 0.0;
    for (const IntervalSet& band : bands) {
      total +=
          measure(band) * conditional_error(Hypothesis{h}, band, kUnitInstance);
    }
    CHECK(total ==
          doctest::Approx(exact_error(Hypothesis{h}, kUnitInstance))
              .epsilon(1e-12));
  }
}

TEST_CASE("monte carlo error is unbiased within binomial noise") {
  Rng set_rng(0xA6u);
  Rng mc_rng(0xB6u);
  for (int it = 0; it < 20; ++it) {
    const IntervalSet h = random_set(set_rng, 6);
    const double p = exact_error(Hypothesis{h}, kUnitInstance);
    for (const std::int64_t samples : {300L, 3000L, 30000L}) {
      const auto rep =
          monte_carlo_error(Hypothesis{h}, kUnitInstance, samples, mc_rng);
      CHECK(rep.monte_carlo_samples == samples);
      const double sigma = std::sqrt(
          std::max(p * (1.0 - p), 1e-12) / static_cast<double>(samples));
      CHECK(std::abs(rep.value - p) <= 4.0 * sigma + 1e-12);
    }
  }
}

TEST_CASE("monte carlo on the empty hypothesis is exactly zero") {
  Rng rng(0xA7u);
  const auto rep =
      monte_carlo_error(Hypothesis{IntervalSet{}}, kUnitInstance, 1000, rng);
  CHECK(rep.value == 0.0);
}

TEST_CASE("monte carlo is reproducible from the stream seed") {
  Rng set_rng(0xA8u);
  const IntervalSet h = random_set(set_rng, 6);
  Rng r1(99), r2(99);
  const auto a = monte_carlo_error(Hypothesis{h}, kUnitInstance, 5000, r1);
  const auto b = monte_carlo_error(Hypothesis{h}, kUnitInstance, 5000, r2);
  CHECK(a.value == b.value);
}

TEST_CASE("finite monte carlo matches the counting error") {
  const Instance fin = FiniteHardInstance{25, 2};
  const Hypothesis h = FiniteHypothesis{25, {3, 18}};
  const double p = exact_error(h, fin);
  Rng rng(0xA9u);
  const auto rep = monte_carlo_error(h, fin, 40000, rng);
  const double sigma =
      std::sqrt(p * (1.0 - p) / static_cast<double>(rep.monte_carlo_samples));
  CHECK(std::abs(rep.value - p) <= 4.0 * sigma);
}

TEST_CASE("pointwise mistakes never happen under the zero rule") {
  Rng rng(0xAAu);
  CHECK(estimate_pointwise_mistake_prob(0.37, kUnitInstance,
                                        maj3::learners::ErmKind::kZero, 40, 50,
                                        rng) == 0.0);
  const Instance fin = FiniteHardInstance{15, 1};
  CHECK(estimate_pointwise_mistake_prob(std::int64_t{3}, fin,
                                        maj3::learners::ErmKind::kZero, 40, 50,
                                        rng) == 0.0);
}

TEST_CASE("pointwise mistake estimates stay in range") {
  Rng rng(0xABu);
  const Instance fin = FiniteHardInstance{15, 1};
  for (std::int64_t x = 1; x <= 15; x += 7) {
    const double p = estimate_pointwise_mistake_prob(
        x, fin, maj3::learners::ErmKind::kMaxOnes, 30, 200, rng);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("averaged pointwise mistakes match the mean single-rule error") {
  // Swapping the order of expectation over (sample, test point) equates
  // the average of p_x over the uniform domain with the expected error of
  // the single learner.
  const std::int64_t n = 60;
  const std::int64_t domain = maj3::instances::finite_domain_size(n, 1);
  const Instance fin = FiniteHardInstance{domain, 1};

  Rng rng(0xACu);
  const std::int64_t trials_per_x = 400;
  double p_sum = 0.0;
  for (std::int64_t x = 1; x <= domain; ++x) {
    p_sum += estimate_pointwise_mistake_prob(
        x, fin, maj3::learners::ErmKind::kMaxOnes, n, trials_per_x, rng);
  }
  const double p_avg = p_sum / static_cast<double>(domain);

  maj3::stats::ExperimentConfig cfg;
  cfg.instance.kind = maj3::stats::InstanceSpec::Kind::kFinite;
  cfg.instance.d = 1;
  cfg.learner.kind = maj3::learners::LearnerKind::kSingle;
  cfg.learner.erm = maj3::learners::ErmKind::kMaxOnes;
  cfg.n_grid = {n};
  cfg.trials = 4000;
  cfg.master_seed = 0xF0B1u;
  const auto sweep = maj3::stats::run_trials(cfg, 2);
  const double mean_err = sweep.per_n[0].mean;

  // Binomial noise: each p_x over 400 trials contributes sigma <= 0.025;
  // averaged over the domain and combined with the sweep's own noise a
  // 0.01 band is a > 4 sigma margin at these scales.
  CHECK(std::abs(p_avg - mean_err) <= 0.01);
}
