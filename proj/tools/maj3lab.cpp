// maj3lab command line tool. Talks to the engine exclusively through the C
// API in maj3lab/maj3lab.h; everything here is argument plumbing, file
// writing, and exit-code mapping.
//
// Exit codes: 0 success; 1 a run completed and reported failures (verify
// criteria, replay mismatches); 2 bad usage, unreadable input, or an
// aborted run.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maj3lab/maj3lab.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitReportedFailure = 1;
constexpr int kExitError = 2;

struct ConfigDeleter {
  void operator()(m3l_config* c) const { m3l_config_free(c); }
};
struct ReportDeleter {
  void operator()(m3l_report* r) const { m3l_report_free(r); }
};
using ConfigPtr = std::unique_ptr<m3l_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<m3l_report, ReportDeleter>;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

int resolve_workers(const CLI::App& app, int flag_value) {
  if (app.count("--workers") > 0) return flag_value;
  if (const char* env = std::getenv("MAJ3LAB_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid MAJ3LAB_WORKERS=\"" << env
              << "\"\n";
  }
  return 1;
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

// Writes every report file plus a manifest into `out_dir`. `extra` holds
// already-rendered files (the verify report text, for instance) written
// alongside and listed in the same manifest.
bool write_outputs(const fs::path& out_dir, const std::string& command,
                   int workers, const m3l_report* rep,
                   const std::vector<std::pair<std::string, std::string>>& extra,
                   const std::string& config_echo) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out_dir << ": "
              << ec.message() << "\n";
    return false;
  }

  std::vector<std::string> names;
  for (size_t i = 0; i < m3l_report_file_count(rep); ++i) {
    const std::string name = m3l_report_file_name(rep, i);
    if (!write_file(out_dir / name, m3l_report_file_text(rep, i))) {
      return false;
    }
    names.push_back(name);
  }
  for (const auto& [name, text] : extra) {
    if (!write_file(out_dir / name, text)) return false;
    names.push_back(name);
  }

  std::ostringstream manifest;
  manifest << "maj3lab manifest\n";
  manifest << "version: " << m3l_version() << "\n";
  manifest << "command: " << command << "\n";
  manifest << "created_utc: " << utc_timestamp() << "\n";
  manifest << "workers: " << workers << "\n";
  manifest << "files:\n";
  for (const std::string& name : names) manifest << "  " << name << "\n";
  if (!config_echo.empty()) {
    manifest << "config:\n";
    std::istringstream lines(config_echo);
    std::string line;
    while (std::getline(lines, line)) manifest << "  " << line << "\n";
  }
  return write_file(out_dir / "manifest.txt", manifest.str());
}

int fail_with_last_error(const std::string& context) {
  std::cerr << "error: " << context << ": " << m3l_last_error() << "\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "maj3lab: seeded Monte Carlo experiments for majority-vote PAC "
      "learners, closed-form bound tables, and the acceptance verification "
      "suite"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string scale = "quick";

  const auto add_common = [&](CLI::App* cmd, bool with_scale) {
    cmd->add_option("--config", config_path,
                    "input path (experiment config; for replay, the sweep "
                    "CSV to reproduce)");
    cmd->add_option("--out", out_dir,
                    "directory for output files and manifest.txt");
    cmd->add_option("--seed", seed,
                    "master seed override (decimal or 0x hex)");
    cmd->add_option("--workers", workers,
                    "worker threads (speed only, never results); env "
                    "MAJ3LAB_WORKERS is the fallback")
        ->check(CLI::PositiveNumber);
    if (with_scale) {
      cmd->add_option("--scale", scale, "verification scale")
          ->check(CLI::IsMember({"quick", "full"}));
    }
  };

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the configured Monte Carlo sweep and emit CSV");
  add_common(sweep, false);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the acceptance criteria and report pass/fail");
  add_common(verify, true);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "emit the closed-form bound table for the config's "
                "n_grid, d, delta");
  add_common(bounds, false);

  CLI::App* replay = app.add_subcommand(
      "replay", "re-run a sweep CSV and check it reproduces bit-exactly");
  add_common(replay, false);

  CLI11_PARSE(app, argc, argv);

  if (*sweep || *bounds) {
    if (config_path.empty()) {
      std::cerr << "error: --config is required\n";
      return kExitError;
    }
    ConfigPtr cfg(m3l_config_parse_file(config_path.c_str()));
    if (!cfg) return fail_with_last_error(config_path);
    const bool has_seed = (*sweep && sweep->count("--seed") > 0) ||
                          (*bounds && bounds->count("--seed") > 0);
    if (has_seed && m3l_config_set_seed(cfg.get(), seed) != M3L_OK) {
      return fail_with_last_error("--seed");
    }
    const int w = resolve_workers(*sweep ? *sweep : *bounds, workers);

    ReportPtr rep;
    const char* command = nullptr;
    if (*sweep) {
      command = "sweep";
      rep.reset(m3l_sweep_run(cfg.get(), w));
    } else {
      command = "bounds";
      // The bound table takes its grid and parameters from the same config
      // keys the sweep uses.
      const char* serialized = m3l_config_serialize(cfg.get());
      if (serialized == nullptr) return fail_with_last_error(config_path);
      std::vector<std::int64_t> grid;
      {
        std::istringstream lines(serialized);
        std::string line;
        std::string n_grid_value;
        std::string d_value = "1";
        std::string delta_value = "0.1";
        while (std::getline(lines, line)) {
          if (line.rfind("n_grid = ", 0) == 0) n_grid_value = line.substr(9);
          if (line.rfind("d = ", 0) == 0) d_value = line.substr(4);
          if (line.rfind("delta = ", 0) == 0) delta_value = line.substr(8);
        }
        std::istringstream items(n_grid_value);
        std::string item;
        while (std::getline(items, item, ',')) {
          grid.push_back(std::stoll(item));
        }
        rep.reset(m3l_bounds_table(grid.data(), grid.size(),
                                   std::stoll(d_value),
                                   std::stod(delta_value)));
      }
    }
    if (!rep) return fail_with_last_error(command);

    std::cout << m3l_report_text(rep.get());
    if (!out_dir.empty()) {
      const char* echo = m3l_config_serialize(cfg.get());
      if (!write_outputs(out_dir, command, w, rep.get(), {},
                         echo ? echo : "")) {
        return kExitError;
      }
      std::cout << "wrote " << m3l_report_file_count(rep.get()) + 1
                << " files to " << out_dir << "\n";
    }
    return kExitOk;
  }

  if (*verify) {
    const int w = resolve_workers(*verify, workers);
    const bool has_seed = verify->count("--seed") > 0;
    ReportPtr rep(
        m3l_verify_run(scale.c_str(), w, seed, has_seed ? 1 : 0));
    if (!rep) return fail_with_last_error("verify");

    std::cout << m3l_report_text(rep.get());
    if (!out_dir.empty()) {
      const std::vector<std::pair<std::string, std::string>> extra{
          {"report.txt", m3l_report_text(rep.get())}};
      std::ostringstream echo;
      echo << "scale = " << scale << "\n";
      if (has_seed) echo << "master_seed = " << seed << "\n";
      if (!write_outputs(out_dir, "verify", w, rep.get(), extra,
                         echo.str())) {
        return kExitError;
      }
      std::cout << "wrote " << m3l_report_file_count(rep.get()) + 2
                << " files to " << out_dir << "\n";
    }
    return m3l_report_status(rep.get()) == M3L_OK ? kExitOk
                                                  : kExitReportedFailure;
  }

  // replay
  if (config_path.empty()) {
    std::cerr << "error: --config is required (the sweep CSV to replay)\n";
    return kExitError;
  }
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << config_path << "\n";
    return kExitError;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const int w = resolve_workers(*replay, workers);
  ReportPtr rep(m3l_replay_csv(buf.str().c_str(), w));
  if (!rep) return fail_with_last_error(config_path);

  std::cout << m3l_report_text(rep.get());
  if (!out_dir.empty()) {
    const std::vector<std::pair<std::string, std::string>> extra{
        {"replay_report.txt", m3l_report_text(rep.get())}};
    if (!write_outputs(out_dir, "replay", w, rep.get(), extra, "")) {
      return kExitError;
    }
  }
  return m3l_report_status(rep.get()) == M3L_OK ? kExitOk
                                                : kExitReportedFailure;
}
