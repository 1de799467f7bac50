#include "maj3lab/maj3lab.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "defaults.hpp"
#include "stats.hpp"
#include "verify.hpp"

namespace {

thread_local std::string g_last_error;

void clear_error() { g_last_error.clear(); }

void set_error(const std::string& msg) { g_last_error = msg; }

// Raw key=value assignments in canonical key order. Kept as text so a
// config can be built up key by key and only validated as a whole when a
// run needs it.
struct ConfigImpl {
  std::map<std::string, std::string> entries;
  std::string scratch;  // backs the pointers m3l_config_get et al. return
};

// Composes the stored entries into config text. When n_grid has not been
// set and `allow_placeholder` is true, a throwaway grid is added so the
// other keys can still be validated.
std::string compose(const ConfigImpl& impl, bool allow_placeholder) {
  std::ostringstream os;
  if (!impl.entries.count("n_grid")) {
    if (!allow_placeholder) {
      throw std::invalid_argument("config: required key n_grid is not set");
    }
    os << "n_grid = 1\n";
  }
  for (const auto& [key, value] : impl.entries) {
    os << key << " = " << value << "\n";
  }
  return os.str();
}

maj3::stats::ExperimentConfig parse_impl(const ConfigImpl& impl) {
  return maj3::config::parse_text(compose(impl, false));
}

// Canonical serialized text of the validated config.
std::string canonical_text(const ConfigImpl& impl) {
  return maj3::config::serialize(parse_impl(impl));
}

struct ReportImpl {
  m3l_status status = M3L_OK;
  std::string text;
  std::vector<maj3::verify::OutputFile> files;
};

bool doubles_match(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

}  // namespace

struct m3l_config : ConfigImpl {};
struct m3l_report : ReportImpl {};

extern "C" {

const char* m3l_version(void) { return "1.0.0"; }

const char* m3l_last_error(void) { return g_last_error.c_str(); }

m3l_config* m3l_config_create(void) {
  clear_error();
  return new m3l_config;
}

m3l_config* m3l_config_parse_text(const char* text) {
  clear_error();
  if (text == nullptr) {
    set_error("config text is null");
    return nullptr;
  }
  try {
    const maj3::stats::ExperimentConfig cfg = maj3::config::parse_text(text);
    auto* impl = new m3l_config;
    // Store the canonical form: one entry per key, defaults made explicit.
    std::istringstream lines(maj3::config::serialize(cfg));
    std::string line;
    while (std::getline(lines, line)) {
      const std::size_t eq = line.find('=');
      impl->entries[line.substr(0, eq - 1)] = line.substr(eq + 2);
    }
    return impl;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_config* m3l_config_parse_file(const char* path) {
  clear_error();
  if (path == nullptr) {
    set_error("config path is null");
    return nullptr;
  }
  try {
    const maj3::stats::ExperimentConfig cfg = maj3::config::parse_file(path);
    return m3l_config_parse_text(maj3::config::serialize(cfg).c_str());
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_status m3l_config_set(m3l_config* cfg, const char* key,
                          const char* value) {
  clear_error();
  if (cfg == nullptr || key == nullptr || value == nullptr) {
    set_error("null argument to m3l_config_set");
    return M3L_ERR_INVALID_ARGUMENT;
  }
  try {
    ConfigImpl trial = *cfg;
    trial.entries[key] = value;
    (void)maj3::config::parse_text(compose(trial, true));
    cfg->entries = std::move(trial.entries);
    return M3L_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return M3L_ERR_INVALID_ARGUMENT;
  }
}

const char* m3l_config_get(m3l_config* cfg, const char* key) {
  clear_error();
  if (cfg == nullptr || key == nullptr) {
    set_error("null argument to m3l_config_get");
    return nullptr;
  }
  try {
    // Explicit entries win; otherwise read the default off the canonical
    // serialization (with a placeholder grid if none is set yet).
    const auto it = cfg->entries.find(key);
    if (it != cfg->entries.end()) {
      cfg->scratch = it->second;
      return cfg->scratch.c_str();
    }
    if (std::strcmp(key, "n_grid") == 0) {
      set_error("n_grid is not set");
      return nullptr;
    }
    const std::string text = maj3::config::serialize(
        maj3::config::parse_text(compose(*cfg, true)));
    std::istringstream lines(text);
    std::string line;
    const std::string prefix = std::string(key) + " = ";
    while (std::getline(lines, line)) {
      if (line.rfind(prefix, 0) == 0) {
        cfg->scratch = line.substr(prefix.size());
        return cfg->scratch.c_str();
      }
    }
    set_error(std::string("unknown key \"") + key + "\"");
    return nullptr;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_status m3l_config_set_seed(m3l_config* cfg, uint64_t master_seed) {
  return m3l_config_set(cfg, "master_seed",
                        std::to_string(master_seed).c_str());
}

const char* m3l_config_serialize(m3l_config* cfg) {
  clear_error();
  if (cfg == nullptr) {
    set_error("null config");
    return nullptr;
  }
  try {
    cfg->scratch = canonical_text(*cfg);
    return cfg->scratch.c_str();
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void m3l_config_free(m3l_config* cfg) { delete cfg; }

m3l_report* m3l_sweep_run(const m3l_config* cfg, int workers) {
  clear_error();
  if (cfg == nullptr) {
    set_error("null config");
    return nullptr;
  }
  try {
    const maj3::stats::ExperimentConfig parsed = parse_impl(*cfg);
    const maj3::stats::SweepResult result =
        maj3::stats::run_trials(parsed, workers, false);
    auto* rep = new m3l_report;
    rep->files.push_back({"sweep.csv", maj3::csv::write_sweep(parsed, result)});
    rep->files.push_back(
        {"bounds_overlay.csv",
         maj3::csv::write_bounds(parsed.n_grid, parsed.instance.d,
                                 parsed.delta)});
    std::ostringstream os;
    os << "sweep: " << maj3::learners::learner_kind_name(parsed.learner.kind)
       << " / " << maj3::learners::erm_kind_name(parsed.learner.erm) << " on "
       << maj3::config::instance_kind_name(parsed.instance.kind)
       << " instance, d=" << parsed.instance.d << ", trials=" << parsed.trials
       << "\n";
    for (const maj3::stats::ErrorStats& st : result.per_n) {
      os << "  n=" << st.n << " mean_err=" << maj3::csv::format_double(st.mean)
         << " q" << maj3::csv::format_double(st.q_level) << "="
         << maj3::csv::format_double(st.q_value) << "\n";
    }
    rep->text = os.str();
    return rep;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return nullptr;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_report* m3l_bounds_table(const int64_t* n_grid, size_t n_len, int64_t d,
                             double delta) {
  clear_error();
  if (n_grid == nullptr && n_len > 0) {
    set_error("null n_grid");
    return nullptr;
  }
  try {
    const std::vector<std::int64_t> grid(n_grid, n_grid + n_len);
    auto* rep = new m3l_report;
    rep->files.push_back(
        {"bounds.csv", maj3::csv::write_bounds(grid, d, delta)});
    std::ostringstream os;
    os << "bound shapes for d=" << d << " delta="
       << maj3::csv::format_double(delta) << " over " << n_len
       << " grid points\n";
    rep->text = os.str();
    return rep;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_report* m3l_verify_run(const char* scale, int workers, uint64_t seed,
                           int has_seed_override) {
  clear_error();
  if (scale == nullptr) {
    set_error("null scale");
    return nullptr;
  }
  maj3::verify::Scale sc;
  if (std::strcmp(scale, "quick") == 0) {
    sc = maj3::verify::Scale::kQuick;
  } else if (std::strcmp(scale, "full") == 0) {
    sc = maj3::verify::Scale::kFull;
  } else {
    set_error(std::string("unknown scale \"") + scale +
              "\" (expected quick or full)");
    return nullptr;
  }
  try {
    const uint64_t master =
        has_seed_override ? seed : maj3::kDefaultMasterSeed;
    const maj3::verify::Report vr = maj3::verify::run_all(sc, master, workers);
    auto* rep = new m3l_report;
    rep->status = vr.all_pass() ? M3L_OK : M3L_ERR_VERIFY_FAILED;
    rep->text = vr.render_text();
    rep->files = vr.files;
    return rep;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_report* m3l_replay_csv(const char* csv_text, int workers) {
  clear_error();
  if (csv_text == nullptr) {
    set_error("null csv text");
    return nullptr;
  }
  try {
    const std::vector<maj3::csv::SweepRow> rows =
        maj3::csv::parse_sweep(csv_text);
    const maj3::stats::ExperimentConfig cfg =
        maj3::csv::config_from_rows(rows);
    const maj3::stats::SweepResult rerun =
        maj3::stats::run_trials(cfg, workers, false);

    auto* rep = new m3l_report;
    std::ostringstream os;
    std::size_t mismatched = 0;
    os << "replay of " << rows.size() << " rows (seed " << cfg.master_seed
       << ", trials " << cfg.trials << ")\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const maj3::csv::SweepRow& row = rows[i];
      const maj3::stats::ErrorStats& st = rerun.per_n[i];
      const bool ok = doubles_match(row.mean_err, st.mean) &&
                      doubles_match(row.q_value, st.q_value) &&
                      doubles_match(row.ratio_dn, st.ratio_dn) &&
                      doubles_match(row.ratio_dlog, st.ratio_dlog) &&
                      doubles_match(row.ratio_dloglog, st.ratio_dloglog);
      if (!ok) ++mismatched;
      os << "  n=" << row.n << " " << (ok ? "reproduced" : "MISMATCH");
      if (!ok) {
        os << " (csv mean " << maj3::csv::format_double(row.mean_err)
           << ", rerun mean " << maj3::csv::format_double(st.mean) << ")";
      }
      os << "\n";
    }
    os << (mismatched == 0 ? "all rows reproduced bit-exactly\n"
                           : "some rows did not reproduce\n");
    rep->status = mismatched == 0 ? M3L_OK : M3L_ERR_REPLAY_MISMATCH;
    rep->text = os.str();
    return rep;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

m3l_status m3l_report_status(const m3l_report* rep) {
  return rep == nullptr ? M3L_ERR_INVALID_ARGUMENT : rep->status;
}

const char* m3l_report_text(const m3l_report* rep) {
  return rep == nullptr ? nullptr : rep->text.c_str();
}

size_t m3l_report_file_count(const m3l_report* rep) {
  return rep == nullptr ? 0 : rep->files.size();
}

const char* m3l_report_file_name(const m3l_report* rep, size_t i) {
  if (rep == nullptr || i >= rep->files.size()) return nullptr;
  return rep->files[i].name.c_str();
}

const char* m3l_report_file_text(const m3l_report* rep, size_t i) {
  if (rep == nullptr || i >= rep->files.size()) return nullptr;
  return rep->files[i].text.c_str();
}

void m3l_report_free(m3l_report* rep) { delete rep; }

}  // extern "C"
