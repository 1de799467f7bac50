#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "learners.hpp"
#include "rng.hpp"
#include "stats.hpp"

using maj3::Rng;
using maj3::stats::coupon_collector_sim;
using maj3::stats::CouponStats;
using maj3::stats::ErrorStats;
using maj3::stats::ExperimentConfig;
using maj3::stats::InstanceSpec;
using maj3::stats::make_instance;
using maj3::stats::pilot_select_C;
using maj3::stats::PilotResult;
using maj3::stats::quantile;
using maj3::stats::run_indexed;
using maj3::stats::run_trials;
using maj3::stats::summarize;
using maj3::stats::SweepResult;

namespace {

ExperimentConfig interval_maj3_config() {
  ExperimentConfig cfg;
  cfg.instance.kind = InstanceSpec::Kind::kInterval;
  cfg.instance.d = 1;
  cfg.instance.C = 16.0;
  cfg.learner.kind = maj3::learners::LearnerKind::kMaj3Disjoint;
  cfg.learner.erm = maj3::learners::ErmKind::kAdversarialInterval;
  cfg.n_grid = {30, 60};
  cfg.trials = 60;
  cfg.master_seed = 0xFEEDu;
  return cfg;
}

bool same_stats(const ErrorStats& a, const ErrorStats& b) {
  return a.n == b.n && a.trials == b.trials && a.mean == b.mean &&
         a.q_level == b.q_level && a.q_value == b.q_value &&
         a.ratio_dn == b.ratio_dn && a.ratio_dlog == b.ratio_dlog &&
         a.ratio_dloglog == b.ratio_dloglog;
}

}  // namespace

TEST_CASE("config validation rejects malformed experiments") {
  ExperimentConfig cfg = interval_maj3_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.n_grid = {};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_grid = {60, 30};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_grid = {30, 30};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = interval_maj3_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = interval_maj3_config();
  cfg.delta = 0.6;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = interval_maj3_config();
  cfg.instance.d = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = interval_maj3_config();
  cfg.q_level = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("the quantile level defaults to one minus delta") {
  ExperimentConfig cfg = interval_maj3_config();
  cfg.delta = 0.25;
  cfg.q_level = 0.0;
  CHECK(cfg.effective_q_level() == 0.75);
  cfg.q_level = 0.9;
  CHECK(cfg.effective_q_level() == 0.9);
}

TEST_CASE("instances materialize per grid value") {
  InstanceSpec fin;
  fin.kind = InstanceSpec::Kind::kFinite;
  fin.d = 1;
  const auto inst = make_instance(fin, 1000);
  const auto& f = std::get<maj3::instances::FiniteHardInstance>(inst);
  CHECK(f.domain_size == 145);
  CHECK(f.d == 1);

  InstanceSpec iv;
  iv.kind = InstanceSpec::Kind::kInterval;
  iv.d = 3;
  iv.C = 2.5;
  const auto inst2 = make_instance(iv, 77);
  const auto& g = std::get<maj3::instances::IntervalHardInstance>(inst2);
  CHECK(g.d == 3);
  CHECK(g.C == 2.5);
}

TEST_CASE("quantile is the nearest-rank order statistic") {
  const std::vector<double> one{0.4};
  CHECK(quantile(one, 0.01) == 0.4);
  CHECK(quantile(one, 0.99) == 0.4);

  const std::vector<double> equal{0.2, 0.2, 0.2, 0.2};
  CHECK(quantile(equal, 0.5) == 0.2);

  const std::vector<double> four{1.0, 2.0, 3.0, 4.0};
  CHECK(quantile(four, 0.5) == 2.0);
  CHECK(quantile(four, 0.51) == 3.0);
  CHECK(quantile(four, 0.75) == 3.0);
  CHECK(quantile(four, 0.999) == 4.0);

  CHECK_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile(four, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(quantile(four, 1.0), std::invalid_argument);
}

TEST_CASE("quantile matches an independent nearest-rank computation") {
  Rng rng(0x0EDu);
  for (int it = 0; it < 100; ++it) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(200));
    std::vector<double> data(k);
    for (double& x : data) x = rng.uniform01();
    std::sort(data.begin(), data.end());
    const double level = 0.999 * rng.uniform01();
    if (level <= 0.0) continue;
    const auto rank = static_cast<std::size_t>(
        std::ceil(level * static_cast<double>(k)));
    const double expect = data[std::max<std::size_t>(rank, 1) - 1];
    CHECK(quantile(data, level) == expect);
  }
}

TEST_CASE("summary ratios divide out the three candidate laws") {
  const std::vector<double> errors{0.1, 0.2, 0.3, 0.4};
  const ErrorStats st = summarize(100, 1, errors, 0.9);
  CHECK(st.n == 100);
  CHECK(st.trials == 4);
  CHECK(st.mean == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(st.q_value == 0.4);
  CHECK(st.ratio_dn == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(st.ratio_dlog ==
        doctest::Approx(25.0 / std::log(100.0)).epsilon(1e-15));
  CHECK(st.ratio_dloglog ==
        doctest::Approx(25.0 / std::log(std::log(100.0))).epsilon(1e-15));
}

TEST_CASE("trial runs are reproducible bit for bit") {
  const ExperimentConfig cfg = interval_maj3_config();
  const SweepResult a = run_trials(cfg, 1);
  const SweepResult b = run_trials(cfg, 1);
  REQUIRE(a.per_n.size() == 2);
  REQUIRE(b.per_n.size() == 2);
  for (std::size_t i = 0; i < a.per_n.size(); ++i) {
    CHECK(same_stats(a.per_n[i], b.per_n[i]));
  }
}

TEST_CASE("worker count never changes results") {
  const ExperimentConfig cfg = interval_maj3_config();
  const SweepResult serial = run_trials(cfg, 1, true);
  const SweepResult parallel = run_trials(cfg, 4, true);
  REQUIRE(serial.per_n.size() == parallel.per_n.size());
  for (std::size_t i = 0; i < serial.per_n.size(); ++i) {
    CHECK(same_stats(serial.per_n[i], parallel.per_n[i]));
  }
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    REQUIRE(serial.records[i].size() == parallel.records[i].size());
    for (std::size_t t = 0; t < serial.records[i].size(); ++t) {
      CHECK(serial.records[i][t].trial == parallel.records[i][t].trial);
      CHECK(serial.records[i][t].error == parallel.records[i][t].error);
    }
  }
}

TEST_CASE("the zero rule scores a zero mean at every grid value") {
  ExperimentConfig cfg = interval_maj3_config();
  cfg.learner.erm = maj3::learners::ErmKind::kZero;
  cfg.trials = 1;
  const SweepResult res = run_trials(cfg, 1);
  for (const ErrorStats& st : res.per_n) {
    CHECK(st.mean == 0.0);
    CHECK(st.q_value == 0.0);
  }
}

TEST_CASE("records are kept only when asked and in trial order") {
  const ExperimentConfig cfg = interval_maj3_config();
  const SweepResult bare = run_trials(cfg, 2);
  CHECK(bare.records.empty());
  const SweepResult kept = run_trials(cfg, 2, true);
  REQUIRE(kept.records.size() == cfg.n_grid.size());
  for (const auto& recs : kept.records) {
    REQUIRE(recs.size() == static_cast<std::size_t>(cfg.trials));
    for (std::size_t t = 0; t < recs.size(); ++t) {
      CHECK(recs[t].trial == static_cast<std::int64_t>(t));
      CHECK(recs[t].error >= 0.0);
      CHECK(recs[t].error <= 1.0);
    }
  }
}

TEST_CASE("mean stays within the quantile-plus-delta envelope") {
  // On [0,1] data, at most a delta fraction of trials exceed the
  // empirical (1-delta)-quantile, so the mean exceeds it by at most
  // delta.
  const ExperimentConfig cfg = interval_maj3_config();
  const SweepResult res = run_trials(cfg, 2);
  for (const ErrorStats& st : res.per_n) {
    CHECK(st.mean <= st.q_value + cfg.delta + 1e-15);
  }
}

TEST_CASE("a failing trial is reported with its smallest index") {
  const auto boom = [](std::int64_t t, Rng&) -> double {
    if (t >= 3) throw std::runtime_error("synthetic failure");
    return 0.0;
  };
  for (const int workers : {1, 4}) {
    try {
      run_indexed<double>(50, 10, 1, workers, boom);
      FAIL("expected the synthetic failure to propagate");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("n=50") != std::string::npos);
      CHECK(msg.find("trial=3") != std::string::npos);
      CHECK(msg.find("synthetic failure") != std::string::npos);
    }
  }
}

TEST_CASE("run_indexed seeds trials independently of the worker count") {
  const auto echo_seed = [](std::int64_t, Rng& rng) -> double {
    return rng.uniform01();
  };
  const auto a = run_indexed<double>(9, 40, 7, 1, echo_seed);
  const auto b = run_indexed<double>(9, 40, 7, 4, echo_seed);
  CHECK(a == b);
  // Trials own distinct streams.
  CHECK(a[0] != a[1]);
}

TEST_CASE("coupon frequencies obey their own accounting") {
  const CouponStats cs = coupon_collector_sim(120, 1, 4.0, 400, 0xC0FFEEu, 2);
  CHECK(cs.trials == 400);
  CHECK(cs.p_e1 ==
        static_cast<double>(cs.e1_count) / static_cast<double>(cs.trials));
  CHECK(cs.p_e1 >= 0.0);
  CHECK(cs.p_e1 <= 1.0);
  CHECK(cs.p_e2 >= 0.0);
  CHECK(cs.p_e2 <= 1.0);
  CHECK(cs.p_y_ge_m >= 0.0);
  CHECK(cs.p_y_ge_m <= 1.0);
  if (cs.e1_count > 0) {
    // The conditional frequency times the conditioning frequency is the
    // joint frequency, which can never exceed the unconditional one.
    CHECK(cs.p_e2_given_e1 * cs.p_e1 <= cs.p_e2 + 1e-12);
  }
}

TEST_CASE("coupon runs are reproducible and worker independent") {
  const CouponStats a = coupon_collector_sim(120, 1, 4.0, 200, 0xF00u, 1);
  const CouponStats b = coupon_collector_sim(120, 1, 4.0, 200, 0xF00u, 4);
  CHECK(a.e1_count == b.e1_count);
  CHECK(a.p_e1 == b.p_e1);
  CHECK(a.p_e2 == b.p_e2);
  CHECK(a.p_e2_given_e1 == b.p_e2_given_e1);
  CHECK(a.p_y_ge_m == b.p_y_ge_m);
}

TEST_CASE("coupon simulation enforces the partition gate") {
  CHECK_THROWS_AS(coupon_collector_sim(2, 1, 1.0, 10, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(coupon_collector_sim(600, 0, 1.0, 10, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("pilot returns the first certified candidate") {
  // At m = 240 with few trials this is a smoke test of the selection
  // rule, not a calibration: whatever certifies first must be reported
  // as chosen, and every candidate must carry its own pass flags.
  const std::vector<double> candidates{0.0625, 1.0, 4.0};
  const PilotResult res = pilot_select_C(240, 1, candidates, 400, 0xB0B0u, 2);
  REQUIRE(res.candidates.size() == candidates.size());
  CHECK(res.chosen_C > 0.0);
  bool seen_chosen = false;
  for (const auto& cand : res.candidates) {
    if (cand.C == res.chosen_C) {
      seen_chosen = true;
      CHECK(cand.pass_e1);
      CHECK(cand.pass_y);
      break;  // everything before this one failed at least one gate
    }
    CHECK_FALSE((cand.pass_e1 && cand.pass_y));
  }
  CHECK(seen_chosen);
}

TEST_CASE("pilot failure lists the measured frequencies") {
  // A C far too small leaves the J grid so fine that no trial keeps all
  // of its first cells empty; the pilot must throw and show the numbers.
  try {
    pilot_select_C(240, 1, {0.05}, 60, 0xB0B1u, 1);
    // Certification of such a tiny constant would be a calibration
    // surprise worth failing on.
    FAIL("expected no candidate to certify");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("no candidate") != std::string::npos);
    CHECK(msg.find("p_e1") != std::string::npos);
  }
}
