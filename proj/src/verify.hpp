#ifndef MAJ3_VERIFY_HPP
#define MAJ3_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace maj3::verify {

enum class Scale { kQuick, kFull };

// One acceptance criterion's outcome: the measured values and the
// tolerances they were held to, in a single human-readable detail line.
struct CriterionResult {
  int index;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

struct OutputFile {
  std::string name;
  std::string text;
};

struct Report {
  Scale scale;
  std::uint64_t master_seed;
  std::vector<CriterionResult> criteria;
  // Data files from this run's experiments (CSV only; the rendered report
  // text is separate because it carries wall-clock timings).
  std::vector<OutputFile> files;

  bool all_pass() const;
  std::string render_text() const;
};

// Runs every acceptance criterion at the requested scale. Criteria never
// short-circuit: all nine are evaluated and reported even after a failure.
// All randomness derives from master_seed; workers affects speed only.
Report run_all(Scale scale, std::uint64_t master_seed, int workers);

// The deterministic CSV bundle a verify run at this scale emits, in fixed
// file order. A pure function of (scale, master_seed); the determinism
// criterion regenerates the quick bundle under worker counts 1 and 8 and
// requires byte identity.
std::vector<OutputFile> data_bundle(Scale scale, std::uint64_t master_seed,
                                    int workers);

const char* scale_name(Scale scale);

// The per-experiment sub-seed a verify run derives from its master seed
// (tag = criterion index). Exposed so the calibration harness can
// pre-screen candidate master seeds against single experiments without
// re-deriving the chain by hand.
std::uint64_t experiment_seed(std::uint64_t master_seed, std::uint64_t tag);

}  // namespace maj3::verify

#endif  // MAJ3_VERIFY_HPP
