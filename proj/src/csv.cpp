#include "csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "bounds.hpp"
#include "config.hpp"

namespace maj3::csv {

namespace {

constexpr const char* kSweepHeader =
    "n,d,delta,learner,erm,C,trials,mean_err,q_level,q_value,ratio_dn,"
    "ratio_dlog,ratio_dloglog,master_seed";

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "csv: line " << line << ": " << what;
  throw std::invalid_argument(os.str());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double field_f64(const std::string& v, int line, const char* name) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (errno == ERANGE || end == v.c_str() || *end != '\0') {
    fail(line, std::string(name) + ": expected number, got \"" + v + "\"");
  }
  return x;
}

std::int64_t field_i64(const std::string& v, int line, const char* name) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0') {
    fail(line, std::string(name) + ": expected integer, got \"" + v + "\"");
  }
  return static_cast<std::int64_t>(x);
}

std::uint64_t field_u64(const std::string& v, int line, const char* name) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0' ||
      (!v.empty() && v[0] == '-')) {
    fail(line,
         std::string(name) + ": expected unsigned integer, got \"" + v + "\"");
  }
  return static_cast<std::uint64_t>(x);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string write_sweep(const stats::ExperimentConfig& config,
                        const stats::SweepResult& result) {
  std::ostringstream os;
  os << "# schema=" << kSchemaTag << " kind=sweep instance="
     << config::instance_kind_name(config.instance.kind)
     << " learner=" << learners::learner_kind_name(config.learner.kind)
     << " erm=" << learners::erm_kind_name(config.learner.erm)
     << " n_unit=" << (config.n_is_piece_size ? "piece" : "total") << "\n";
  os << kSweepHeader << "\n";
  for (std::size_t i = 0; i < result.per_n.size(); ++i) {
    const stats::ErrorStats& st = result.per_n[i];
    os << st.n << "," << config.instance.d << ","
       << format_double(config.delta) << ","
       << learners::learner_kind_name(config.learner.kind) << ","
       << learners::erm_kind_name(config.learner.erm) << ","
       << format_double(config.instance.C) << "," << st.trials << ","
       << format_double(st.mean) << "," << format_double(st.q_level) << ","
       << format_double(st.q_value) << "," << format_double(st.ratio_dn)
       << "," << format_double(st.ratio_dlog) << ","
       << format_double(st.ratio_dloglog) << "," << config.master_seed
       << "\n";
  }
  return os.str();
}

std::string write_bounds(const std::vector<std::int64_t>& n_grid,
                         std::int64_t d, double delta) {
  if (n_grid.empty()) {
    throw std::invalid_argument("bounds csv: empty n grid");
  }
  std::ostringstream os;
  os << "# schema=" << kSchemaTag << " kind=bounds\n";
  os << "n,d,delta,erm_bound,optimal_bound,simon_bound,thm2_bound,uc_bound\n";
  for (const std::int64_t n : n_grid) {
    const bounds::BoundInput in{n, d, delta};
    os << n << "," << d << "," << format_double(delta) << ","
       << format_double(bounds::erm_bound(in)) << ","
       << format_double(bounds::optimal_bound(in)) << ","
       << format_double(bounds::simon_bound(in)) << ","
       << format_double(bounds::thm2_bound(in)) << ","
       << format_double(bounds::uniform_convergence_bound(n, d, delta))
       << "\n";
  }
  return os.str();
}

std::vector<SweepRow> parse_sweep(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;

  if (!std::getline(in, raw)) fail(1, "empty file");
  ++line;
  std::istringstream head(raw);
  std::string tok;
  head >> tok;
  if (tok != "#") fail(line, "missing schema comment");
  stats::InstanceSpec::Kind instance_kind = stats::InstanceSpec::Kind::kInterval;
  bool instance_seen = false;
  bool n_is_piece = true;
  bool unit_seen = false;
  bool schema_ok = false;
  bool kind_ok = false;
  while (head >> tok) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos) fail(line, "malformed schema token: " + tok);
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "schema") {
      if (value != kSchemaTag) fail(line, "unsupported schema: " + value);
      schema_ok = true;
    } else if (key == "kind") {
      if (value != "sweep") fail(line, "not a sweep file (kind=" + value + ")");
      kind_ok = true;
    } else if (key == "instance") {
      if (value == "interval") {
        instance_kind = stats::InstanceSpec::Kind::kInterval;
      } else if (value == "finite") {
        instance_kind = stats::InstanceSpec::Kind::kFinite;
      } else {
        fail(line, "unknown instance kind: " + value);
      }
      instance_seen = true;
    } else if (key == "n_unit") {
      if (value == "piece") {
        n_is_piece = true;
      } else if (value == "total") {
        n_is_piece = false;
      } else {
        fail(line, "unknown n_unit: " + value);
      }
      unit_seen = true;
    }
    // learner= and erm= in the comment duplicate per-row columns; rows win.
  }
  if (!schema_ok) fail(line, "missing schema tag");
  if (!kind_ok) fail(line, "missing kind=sweep tag");
  if (!instance_seen) fail(line, "missing instance tag");
  if (!unit_seen) fail(line, "missing n_unit tag");

  if (!std::getline(in, raw)) fail(line + 1, "missing header row");
  ++line;
  if (raw != kSweepHeader) fail(line, "unexpected header row");

  std::vector<SweepRow> rows;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.empty()) continue;
    const std::vector<std::string> f = split(raw, ',');
    if (f.size() != 14) {
      std::ostringstream os;
      os << "expected 14 fields, got " << f.size();
      fail(line, os.str());
    }
    SweepRow r;
    r.instance_kind = instance_kind;
    r.n_is_piece_size = n_is_piece;
    r.n = field_i64(f[0], line, "n");
    r.d = field_i64(f[1], line, "d");
    r.delta = field_f64(f[2], line, "delta");
    try {
      // Reuse the config parser's vocabulary for the two enum columns.
      const stats::ExperimentConfig probe = config::parse_text(
          "n_grid = 1\nlearner = " + f[3] + "\nerm = " + f[4] + "\n");
      r.learner = probe.learner.kind;
      r.erm = probe.learner.erm;
    } catch (const std::invalid_argument&) {
      fail(line, "unknown learner/erm: " + f[3] + "/" + f[4]);
    }
    r.C = field_f64(f[5], line, "C");
    r.trials = field_i64(f[6], line, "trials");
    r.mean_err = field_f64(f[7], line, "mean_err");
    r.q_level = field_f64(f[8], line, "q_level");
    r.q_value = field_f64(f[9], line, "q_value");
    r.ratio_dn = field_f64(f[10], line, "ratio_dn");
    r.ratio_dlog = field_f64(f[11], line, "ratio_dlog");
    r.ratio_dloglog = field_f64(f[12], line, "ratio_dloglog");
    r.master_seed = field_u64(f[13], line, "master_seed");
    rows.push_back(r);
  }
  if (rows.empty()) fail(line + 1, "no data rows");
  return rows;
}

stats::ExperimentConfig config_from_rows(const std::vector<SweepRow>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("csv: cannot rebuild a config from zero rows");
  }
  const SweepRow& r0 = rows.front();
  stats::ExperimentConfig cfg;
  cfg.instance.kind = r0.instance_kind;
  cfg.instance.d = r0.d;
  cfg.instance.C = r0.C;
  cfg.learner.kind = r0.learner;
  cfg.learner.erm = r0.erm;
  cfg.n_is_piece_size = r0.n_is_piece_size;
  cfg.delta = r0.delta;
  cfg.trials = r0.trials;
  cfg.master_seed = r0.master_seed;
  cfg.q_level = r0.q_level;
  for (const SweepRow& r : rows) {
    if (r.d != r0.d || r.delta != r0.delta || r.learner != r0.learner ||
        r.erm != r0.erm || r.C != r0.C || r.trials != r0.trials ||
        r.q_level != r0.q_level || r.master_seed != r0.master_seed) {
      throw std::invalid_argument(
          "csv: rows disagree on a non-n column; cannot rebuild one config");
    }
    cfg.n_grid.push_back(r.n);
  }
  cfg.validate();
  return cfg;
}

}  // namespace maj3::csv
