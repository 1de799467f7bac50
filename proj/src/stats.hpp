#ifndef MAJ3_STATS_HPP
#define MAJ3_STATS_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "defaults.hpp"
#include "instances.hpp"
#include "learners.hpp"
#include "rng.hpp"

namespace maj3::stats {

struct InstanceSpec {
  enum class Kind { kInterval, kFinite };
  Kind kind = Kind::kInterval;
  std::int64_t d = 1;
  double C = kDefaultC;
};

// Materialize the instance at one grid value. The finite domain size is
// derived from the grid value (N = max(d+1, ceil(g/ln(g/d)))), so a single
// learner at total size g and a majority learner at piece size g face the
// same instance.
instances::Instance make_instance(const InstanceSpec& spec,
                                  std::int64_t grid_value);

struct ExperimentConfig {
  InstanceSpec instance;
  learners::LearnerSpec learner;
  std::vector<std::int64_t> n_grid;
  bool n_is_piece_size = true;
  double delta = 0.1;
  std::int64_t trials = 2000;
  std::uint64_t master_seed = kDefaultMasterSeed;
  double q_level = 0.0;  // 0 means "use 1 - delta"

  double effective_q_level() const {
    return q_level > 0.0 ? q_level : 1.0 - delta;
  }
  void validate() const;
};

struct TrialRecord {
  std::int64_t trial;
  double error;
};

struct ErrorStats {
  std::int64_t n;
  std::int64_t trials;
  double mean;
  double q_level;
  double q_value;
  // Scaling ratios against the three candidate laws; non-finite when the
  // law's log factor is undefined at this n/d.
  double ratio_dn;      // mean * n / d
  double ratio_dlog;    // mean * n / (d * ln(n/d))
  double ratio_dloglog; // mean * n / (d * ln(ln(n/d)))
};

struct SweepResult {
  std::vector<ErrorStats> per_n;
  // records[i] holds the per-trial errors for n_grid[i] when requested.
  std::vector<std::vector<TrialRecord>> records;
};

// Nearest-rank quantile: the order statistic at index ceil(level * K)
// (1-based) of ascending `sorted`. Throws on empty data or level outside
// (0,1).
double quantile(const std::vector<double>& sorted, double level);

ErrorStats summarize(std::int64_t n, std::int64_t d,
                     const std::vector<double>& errors, double q_level);

// Deterministic parallel trial runner. fn(trial_index, rng) runs once per
// index with rng seeded by trial_seed(master_seed, n, trial_index); results
// land in a slot array by index, so the output is identical for any worker
// count. The first failing trial (smallest index) is rethrown after all
// workers stop, with (n, trial) in the message.
template <class R, class Fn>
std::vector<R> run_indexed(std::int64_t n, std::int64_t trials,
                           std::uint64_t master_seed, int workers, Fn&& fn) {
  if (trials < 1) throw std::invalid_argument("run_indexed: trials >= 1");
  std::vector<R> results(static_cast<std::size_t>(trials));

  std::mutex err_mutex;
  std::int64_t err_index = -1;
  std::exception_ptr err;

  auto run_one = [&](std::int64_t t) {
    try {
      Rng rng(trial_seed(master_seed, static_cast<std::uint64_t>(n),
                         static_cast<std::uint64_t>(t)));
      results[static_cast<std::size_t>(t)] = fn(t, rng);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (err_index < 0 || t < err_index) {
        err_index = t;
        err = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    for (std::int64_t t = 0; t < trials && err_index < 0; ++t) run_one(t);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::int64_t t = next.fetch_add(1);
        if (t >= trials) return;
        run_one(t);
      }
    };
    std::vector<std::thread> pool;
    const int count = workers;
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (err_index >= 0) {
    try {
      std::rethrow_exception(err);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "trial failed (n=" << n << ", trial=" << err_index
         << "): " << e.what();
      throw std::runtime_error(os.str());
    }
  }
  return results;
}

// Full experiment: for each n in the grid, `trials` seeded trials drawing a
// fresh sample, fitting the learner, and recording the exact error.
SweepResult run_trials(const ExperimentConfig& config, int workers,
                       bool keep_records = false);

// Empirical frequencies for the lower-bound construction events at grid
// sizes (m, 2m):
//   E1 = {|L2(S1)| = d} for a fresh size-m sample S1;
//   E2 = {|L1(S1,S2)| = d} with S2 a further fresh size-m sample;
//   Y  = number of fresh draws needed until m2*d - d of the subcells of d
//        designated coarse cells are covered (coverage stopping time).
struct CouponStats {
  std::int64_t trials = 0;
  std::int64_t e1_count = 0;
  double p_e1 = 0.0;
  double p_e2_given_e1 = 0.0;
  double p_e2 = 0.0;
  double p_y_ge_m = 0.0;
};
CouponStats coupon_collector_sim(std::int64_t m, std::int64_t d, double C,
                                 std::int64_t trials,
                                 std::uint64_t master_seed, int workers);

// Selects the shipped partition constant: the smallest candidate whose
// simulated event frequencies certify p_e1 >= sqrt(2/3) and
// p_y_ge_m >= sqrt(2/3), each with a 3-sigma binomial margin. Throws with
// the measured frequencies when no candidate passes.
struct PilotCandidate {
  double C;
  CouponStats stats;
  bool pass_e1;
  bool pass_y;
};
struct PilotResult {
  double chosen_C;
  std::vector<PilotCandidate> candidates;
};
PilotResult pilot_select_C(std::int64_t m_ref, std::int64_t d_ref,
                           const std::vector<double>& candidates,
                           std::int64_t trials, std::uint64_t master_seed,
                           int workers);

}  // namespace maj3::stats

#endif  // MAJ3_STATS_HPP
