// Calibration harness for the constants frozen in src/defaults.hpp. Not
// part of the shipped tool set; it links the core directly.
//
// Workflow when refreezing:
//   1. calibrate --pilot     pick the partition constant C
//   2. calibrate --bands     measure the band constants with an
//                            independent seed, then edit defaults.hpp
//   3. rebuild
//   4. calibrate --scan N    shortlist master seeds that clear the
//                            strict-inequality checks
//   5. calibrate --certify S run the whole suite at both scales for a
//                            shortlisted seed, then freeze it
//   6. rebuild and run the acceptance tests

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "defaults.hpp"
#include "stats.hpp"
#include "verify.hpp"

namespace {

using namespace maj3;

// Seeds for the pilot measurements. Deliberately unrelated to any seed the
// verify suite might ship with.
constexpr std::uint64_t kPilotSeedC = 0xCA11B001;
constexpr std::uint64_t kPilotSeedBands = 0xCA11B002;

stats::ExperimentConfig scaling_config(learners::LearnerKind kind,
                                       std::uint64_t seed) {
  stats::ExperimentConfig cfg;
  cfg.instance.kind = stats::InstanceSpec::Kind::kFinite;
  cfg.instance.d = 1;
  cfg.learner.kind = kind;
  cfg.learner.erm = learners::ErmKind::kMaxOnes;
  cfg.n_grid = {300, 1000, 3000, 10000};
  cfg.trials = 5000;
  cfg.master_seed = seed;
  return cfg;
}

stats::ExperimentConfig interval_config(learners::LearnerKind kind,
                                        std::vector<std::int64_t> grid,
                                        std::int64_t trials,
                                        std::uint64_t seed) {
  stats::ExperimentConfig cfg;
  cfg.instance.kind = stats::InstanceSpec::Kind::kInterval;
  cfg.instance.d = 1;
  cfg.instance.C = kDefaultC;
  cfg.learner.kind = kind;
  cfg.learner.erm = learners::ErmKind::kAdversarialInterval;
  cfg.n_grid = std::move(grid);
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

double mean_sigma(const std::vector<stats::TrialRecord>& recs, double* mean) {
  double s = 0;
  for (const auto& r : recs) s += r.error;
  const double m = s / static_cast<double>(recs.size());
  double ss = 0;
  for (const auto& r : recs) ss += (r.error - m) * (r.error - m);
  *mean = m;
  return std::sqrt(ss / static_cast<double>(recs.size() - 1) /
                   static_cast<double>(recs.size()));
}

void run_pilot(int workers) {
  std::cout << "partition-constant pilot: m=600 d=1, 2000 trials per "
               "candidate, seed 0x"
            << std::hex << kPilotSeedC << std::dec << "\n";
  const std::vector<double> candidates{0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  try {
    const stats::PilotResult pr =
        stats::pilot_select_C(600, 1, candidates, 2000, kPilotSeedC, workers);
    for (const stats::PilotCandidate& c : pr.candidates) {
      std::cout << "  C=" << c.C << "  p_e1=" << c.stats.p_e1
                << (c.pass_e1 ? " (pass)" : " (fail)")
                << "  p_y_ge_m=" << c.stats.p_y_ge_m
                << (c.pass_y ? " (pass)" : " (fail)")
                << "  p_L1_full=" << c.stats.p_e2 << "\n";
    }
    std::cout << "chosen C = " << pr.chosen_C
              << "  (freeze as kDefaultC)\n";
  } catch (const std::exception& e) {
    std::cout << "pilot failed: " << e.what() << "\n";
  }
}

void run_bands(int workers) {
  std::cout << "band measurement, independent seed 0x" << std::hex
            << kPilotSeedBands << std::dec << " (C=" << kDefaultC << ")\n";

  const auto single = stats::run_trials(
      scaling_config(learners::LearnerKind::kSingle,
                     verify::experiment_seed(kPilotSeedBands, 2)),
      workers, true);
  std::cout << "single max_ones finite:\n";
  for (const auto& st : single.per_n) {
    std::cout << "  n=" << st.n << " ratio_dn=" << st.ratio_dn
              << " ratio_dlog=" << st.ratio_dlog << "\n";
  }
  std::cout << "  -> kBandSingleRatioDlogCenter = value at n=1000 = "
            << single.per_n[1].ratio_dlog << "\n";

  const auto maj3v = stats::run_trials(
      scaling_config(learners::LearnerKind::kMaj3Disjoint,
                     verify::experiment_seed(kPilotSeedBands, 3)),
      workers, true);
  double max_dn = 0;
  std::cout << "maj3 max_ones finite:\n";
  for (const auto& st : maj3v.per_n) {
    std::cout << "  n=" << st.n << " ratio_dn=" << st.ratio_dn << "\n";
    max_dn = std::max(max_dn, st.ratio_dn);
  }
  std::cout << "  -> kBandMaj3RatioDnMax: measured max " << max_dn
            << ", freeze ~2x\n";

  const auto prefix = stats::run_trials(
      interval_config(learners::LearnerKind::kSimonPrefix, {600, 2000, 6000},
                      2000, verify::experiment_seed(kPilotSeedBands, 5)),
      workers, true);
  std::cout << "prefix adversarial interval:\n";
  double min_ratio = 1e300;
  for (std::size_t i = 0; i < prefix.per_n.size(); ++i) {
    std::vector<double> errs;
    for (const auto& r : prefix.records[i]) errs.push_back(r.error);
    std::sort(errs.begin(), errs.end());
    const double q13 = stats::quantile(errs, 1.0 / 3.0);
    const auto n = static_cast<double>(prefix.per_n[i].n);
    const double ratio = q13 * n / std::log(std::log(n));
    std::cout << "  t=" << prefix.per_n[i].n << " q13_ratio_dloglog=" << ratio
              << "\n";
    min_ratio = std::min(min_ratio, ratio);
  }
  std::cout << "  -> kBandPrefixRatioDloglogMin: measured min " << min_ratio
            << ", freeze ~1/2\n";

  const auto maj3i = stats::run_trials(
      interval_config(learners::LearnerKind::kMaj3Disjoint, {6000}, 2000,
                      verify::experiment_seed(kPilotSeedBands, 6)),
      workers, true);
  double m_mean, p_mean;
  const double m_sig = mean_sigma(maj3i.records[0], &m_mean);
  const double p_sig = mean_sigma(prefix.records[2], &p_mean);
  std::cout << "matchup preview at t=6000: maj3 " << m_mean << " +3s "
            << 3 * m_sig << " vs prefix " << p_mean << " -3s " << 3 * p_sig
            << (m_mean + 3 * m_sig < p_mean - 3 * p_sig ? " (separates)"
                                                        : " (OVERLAPS)")
            << "\n";

  const auto tail = stats::run_trials(
      interval_config(learners::LearnerKind::kMaj3Disjoint, {1000, 3000},
                      10000, verify::experiment_seed(kPilotSeedBands, 8)),
      workers, true);
  std::cout << "quantile preview:\n";
  for (std::size_t i = 0; i < tail.per_n.size(); ++i) {
    std::vector<double> errs;
    for (const auto& r : tail.records[i]) errs.push_back(r.error);
    std::sort(errs.begin(), errs.end());
    const double q90 = stats::quantile(errs, 0.9);
    const double q99 = stats::quantile(errs, 0.99);
    std::cout << "  t=" << tail.per_n[i].n << " q90=" << q90
              << " q99=" << q99 << " mean=" << tail.per_n[i].mean << "\n";
  }
}

// Cheap pre-screen of a master seed: only the checks that are strict
// inequalities on noisy estimates, which dominate the failure probability.
// The authority on a seed remains --certify.
bool prescreen_seed(std::uint64_t master, int workers, std::string* why) {
  const auto single = stats::run_trials(
      scaling_config(learners::LearnerKind::kSingle,
                     verify::experiment_seed(master, 2)),
      workers, false);
  for (std::size_t i = 1; i < single.per_n.size(); ++i) {
    if (!(single.per_n[i].ratio_dn > single.per_n[i - 1].ratio_dn)) {
      std::ostringstream os;
      os << "single ratio_dn not strictly increasing at n="
         << single.per_n[i].n << " (" << single.per_n[i - 1].ratio_dn
         << " -> " << single.per_n[i].ratio_dn << ")";
      *why = os.str();
      return false;
    }
    const double f = single.per_n[i].ratio_dlog / kBandSingleRatioDlogCenter;
    if (!(f >= 0.5 && f <= 2.0)) {
      std::ostringstream os;
      os << "single ratio_dlog band factor " << f << " at n="
         << single.per_n[i].n;
      *why = os.str();
      return false;
    }
  }
  return true;
}

int run_scan(std::uint64_t from, std::uint64_t count, int workers) {
  std::cout << "pre-screening master seeds " << from << ".."
            << (from + count - 1) << " on the strict-increase check\n";
  int found = 0;
  for (std::uint64_t s = from; s < from + count; ++s) {
    std::string why;
    if (prescreen_seed(s, workers, &why)) {
      std::cout << "  seed " << s << ": CANDIDATE\n";
      ++found;
    } else {
      std::cout << "  seed " << s << ": rejected (" << why << ")\n";
    }
  }
  std::cout << found << " candidate(s); certify one with --certify SEED\n";
  return 0;
}

int run_certify(std::uint64_t seed, int workers) {
  int failures = 0;
  for (const verify::Scale scale :
       {verify::Scale::kFull, verify::Scale::kQuick}) {
    const verify::Report rep = verify::run_all(scale, seed, workers);
    std::cout << rep.render_text() << "\n";
    if (!rep.all_pass()) ++failures;
  }
  if (failures == 0) {
    std::cout << "seed " << seed
              << " passes both scales; freeze as kDefaultMasterSeed\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maj3lab calibration harness (internal)"};
  bool pilot = false;
  bool bands = false;
  std::uint64_t scan_count = 0;
  std::uint64_t scan_from = 1;
  std::uint64_t certify_seed = 0;
  bool do_certify = false;
  int workers = 1;
  app.add_flag("--pilot", pilot, "select the partition constant C");
  app.add_flag("--bands", bands, "measure band constants (independent seed)");
  app.add_option("--scan", scan_count, "pre-screen this many master seeds");
  app.add_option("--scan-from", scan_from, "first seed for --scan");
  app.add_option("--certify", certify_seed,
                 "run the full suite at both scales for this seed")
      ->trigger_on_parse();
  app.add_option("--workers", workers, "worker threads");
  CLI11_PARSE(app, argc, argv);
  do_certify = app.count("--certify") > 0;

  if (!pilot && !bands && scan_count == 0 && !do_certify) {
    std::cout << app.help();
    return 0;
  }
  if (pilot) run_pilot(workers);
  if (bands) run_bands(workers);
  if (scan_count > 0) return run_scan(scan_from, scan_count, workers);
  if (do_certify) return run_certify(certify_seed, workers);
  return 0;
}
