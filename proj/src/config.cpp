#include "config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace maj3::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "config: line " << line << ": " << what;
  throw std::invalid_argument(os.str());
}

std::int64_t parse_i64(const std::string& v, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0') {
    fail(line, key + ": expected integer, got \"" + v + "\"");
  }
  return static_cast<std::int64_t>(x);
}

std::uint64_t parse_u64(const std::string& v, int line,
                        const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const int base = v.rfind("0x", 0) == 0 || v.rfind("0X", 0) == 0 ? 16 : 10;
  const unsigned long long x = std::strtoull(v.c_str(), &end, base);
  if (errno != 0 || end == v.c_str() || *end != '\0' || v[0] == '-') {
    fail(line, key + ": expected unsigned integer, got \"" + v + "\"");
  }
  return static_cast<std::uint64_t>(x);
}

double parse_f64(const std::string& v, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (errno != 0 || end == v.c_str() || *end != '\0') {
    fail(line, key + ": expected number, got \"" + v + "\"");
  }
  return x;
}

std::vector<std::int64_t> parse_i64_list(const std::string& v, int line,
                                         const std::string& key) {
  std::vector<std::int64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, key + ": empty list element");
    out.push_back(parse_i64(item, line, key));
  }
  if (out.empty()) fail(line, key + ": empty list");
  return out;
}

learners::LearnerKind parse_learner(const std::string& v, int line) {
  if (v == "single") return learners::LearnerKind::kSingle;
  if (v == "maj3_disjoint" || v == "maj3")
    return learners::LearnerKind::kMaj3Disjoint;
  if (v == "simon_prefix" || v == "simon")
    return learners::LearnerKind::kSimonPrefix;
  if (v == "maj_k_disjoint" || v == "maj_k")
    return learners::LearnerKind::kMajKDisjoint;
  if (v == "bagging") return learners::LearnerKind::kBagging;
  fail(line, "learner: unknown kind \"" + v + "\"");
}

learners::ErmKind parse_erm(const std::string& v, int line) {
  if (v == "adversarial_interval") return learners::ErmKind::kAdversarialInterval;
  if (v == "max_ones") return learners::ErmKind::kMaxOnes;
  if (v == "zero") return learners::ErmKind::kZero;
  fail(line, "erm: unknown kind \"" + v + "\"");
}

}  // namespace

std::string instance_kind_name(stats::InstanceSpec::Kind kind) {
  return kind == stats::InstanceSpec::Kind::kInterval ? "interval" : "finite";
}

stats::ExperimentConfig parse_text(const std::string& text) {
  stats::ExperimentConfig cfg;
  bool erm_given = false;
  bool n_grid_given = false;
  std::map<std::string, int> seen;  // key -> first line

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(line, "expected `key = value`, got \"" + stripped + "\"");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(line, "missing key before '='");
    if (value.empty()) fail(line, key + ": missing value");

    const auto [it, inserted] = seen.emplace(key, line);
    if (!inserted) {
      std::ostringstream os;
      os << key << ": duplicate key (first set on line " << it->second << ")";
      fail(line, os.str());
    }

    if (key == "instance") {
      if (value == "interval") {
        cfg.instance.kind = stats::InstanceSpec::Kind::kInterval;
      } else if (value == "finite") {
        cfg.instance.kind = stats::InstanceSpec::Kind::kFinite;
      } else {
        fail(line, "instance: unknown kind \"" + value + "\"");
      }
    } else if (key == "learner") {
      cfg.learner.kind = parse_learner(value, line);
    } else if (key == "erm") {
      cfg.learner.erm = parse_erm(value, line);
      erm_given = true;
    } else if (key == "k") {
      cfg.learner.k = parse_i64(value, line, key);
    } else if (key == "bags") {
      cfg.learner.bags = parse_i64(value, line, key);
    } else if (key == "bag_size") {
      cfg.learner.bag_size = parse_i64(value, line, key);
    } else if (key == "n_grid") {
      cfg.n_grid = parse_i64_list(value, line, key);
      n_grid_given = true;
    } else if (key == "n_unit") {
      if (value == "piece") {
        cfg.n_is_piece_size = true;
      } else if (value == "total") {
        cfg.n_is_piece_size = false;
      } else {
        fail(line, "n_unit: expected piece or total, got \"" + value + "\"");
      }
    } else if (key == "d") {
      cfg.instance.d = parse_i64(value, line, key);
    } else if (key == "delta") {
      cfg.delta = parse_f64(value, line, key);
    } else if (key == "C") {
      cfg.instance.C = parse_f64(value, line, key);
    } else if (key == "trials") {
      cfg.trials = parse_i64(value, line, key);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, line, key);
    } else if (key == "q_level") {
      cfg.q_level = parse_f64(value, line, key);
    } else {
      fail(line, "unknown key \"" + key + "\"");
    }
  }

  if (!n_grid_given) {
    throw std::invalid_argument("config: required key n_grid is missing");
  }
  if (!erm_given) {
    cfg.learner.erm = cfg.instance.kind == stats::InstanceSpec::Kind::kInterval
                          ? learners::ErmKind::kAdversarialInterval
                          : learners::ErmKind::kMaxOnes;
  }
  cfg.validate();
  return cfg;
}

stats::ExperimentConfig parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("config: cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_text(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string serialize(const stats::ExperimentConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "instance = " << instance_kind_name(config.instance.kind) << "\n";
  os << "learner = " << learners::learner_kind_name(config.learner.kind)
     << "\n";
  os << "erm = " << learners::erm_kind_name(config.learner.erm) << "\n";
  os << "k = " << config.learner.k << "\n";
  os << "bags = " << config.learner.bags << "\n";
  os << "bag_size = " << config.learner.bag_size << "\n";
  os << "n_grid = ";
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (i) os << ",";
    os << config.n_grid[i];
  }
  os << "\n";
  os << "n_unit = " << (config.n_is_piece_size ? "piece" : "total") << "\n";
  os << "d = " << config.instance.d << "\n";
  os << "delta = " << config.delta << "\n";
  os << "C = " << config.instance.C << "\n";
  os << "trials = " << config.trials << "\n";
  os << "master_seed = " << config.master_seed << "\n";
  os << "q_level = " << config.q_level << "\n";
  return os.str();
}

}  // namespace maj3::config
