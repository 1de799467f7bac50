#ifndef MAJ3_CONFIG_HPP
#define MAJ3_CONFIG_HPP

#include <string>

#include "stats.hpp"

namespace maj3::config {

// Flat key=value experiment configuration.
//
// Grammar: one `key = value` pair per line; `#` starts a comment (full line
// or trailing); blank lines ignored; keys and values trimmed of surrounding
// whitespace; each key at most once. Keys:
//
//   instance    interval | finite                  (default interval)
//   learner     single | maj3_disjoint | simon_prefix | maj_k_disjoint |
//               bagging  (short aliases maj3, simon, maj_k accepted;
//               default maj3_disjoint)
//   erm         adversarial_interval | max_ones | zero
//               (default: adversarial_interval for interval instances,
//                max_ones for finite)
//   k           odd voter count for maj_k          (default 3)
//   bags        odd bag count for bagging          (default 3)
//   bag_size    resample size per bag, 0 = sample size   (default 0)
//   n_grid      comma-separated ascending positive integers (required)
//   n_unit      piece | total                      (default piece)
//   d           VC parameter, >= 1                 (default 1)
//   delta       failure probability in (0, 1/2]    (default 0.1)
//   C           partition constant, > 0            (default shipped value)
//   trials      Monte Carlo trials per n, >= 1     (default 2000)
//   master_seed u64 seed, decimal or 0x hex        (default shipped value)
//   q_level     reported quantile in (0,1), 0 = use 1 - delta   (default 0)
//
// Errors carry "line N: ..." diagnostics.

stats::ExperimentConfig parse_text(const std::string& text);
stats::ExperimentConfig parse_file(const std::string& path);

// Canonical one-key-per-line rendering (stable key order, every key
// explicit). parse_text(serialize(c)) reproduces c exactly.
std::string serialize(const stats::ExperimentConfig& config);

// String forms used by both the parser and the CSV emitter.
std::string instance_kind_name(stats::InstanceSpec::Kind kind);

}  // namespace maj3::config

#endif  // MAJ3_CONFIG_HPP
