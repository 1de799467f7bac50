#ifndef MAJ3_CSV_HPP
#define MAJ3_CSV_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "stats.hpp"

namespace maj3::csv {

// Every emitted file starts with one comment line carrying the schema tag
// and the sweep facts the fixed columns cannot: instance kind and the
// n-column unit. Floats are printed with 17 significant digits so parsing
// them back reproduces the exact doubles.
inline constexpr const char* kSchemaTag = "maj3lab-csv-v1";

std::string format_double(double x);

// Sweep file: the schema comment, a header row, then one row per grid value
// with columns n,d,delta,learner,erm,C,trials,mean_err,q_level,q_value,
// ratio_dn,ratio_dlog,ratio_dloglog,master_seed.
std::string write_sweep(const stats::ExperimentConfig& config,
                        const stats::SweepResult& result);

// Bound-shape table: columns n,d,delta,erm_bound,optimal_bound,simon_bound,
// thm2_bound,uc_bound, one row per n.
std::string write_bounds(const std::vector<std::int64_t>& n_grid,
                         std::int64_t d, double delta);

// One parsed sweep row plus the facts recovered from the schema comment.
struct SweepRow {
  stats::InstanceSpec::Kind instance_kind;
  bool n_is_piece_size;
  std::int64_t n;
  std::int64_t d;
  double delta;
  learners::LearnerKind learner;
  learners::ErmKind erm;
  double C;
  std::int64_t trials;
  double mean_err;
  double q_level;
  double q_value;
  double ratio_dn;
  double ratio_dlog;
  double ratio_dloglog;
  std::uint64_t master_seed;
};

// Parses a sweep file written by write_sweep. Throws std::invalid_argument
// with a line diagnostic on schema mismatch or malformed rows.
std::vector<SweepRow> parse_sweep(const std::string& text);

// Reconstructs the experiment a sweep file came from. All rows must agree
// on everything but n; the n values become the grid in row order.
stats::ExperimentConfig config_from_rows(const std::vector<SweepRow>& rows);

}  // namespace maj3::csv

#endif  // MAJ3_CSV_HPP
