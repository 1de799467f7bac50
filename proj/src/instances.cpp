#include "instances.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maj3::instances {

std::int64_t finite_domain_size(std::int64_t n, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("finite_domain_size: requires d >= 1");
  if (n < 2 * d) {
    std::ostringstream os;
    os << "finite_domain_size: requires n >= 2d (n=" << n << ", d=" << d << ")";
    throw std::invalid_argument(os.str());
  }
  const double ratio = static_cast<double>(n) / static_cast<double>(d);
  const auto scaled =
      static_cast<std::int64_t>(std::ceil(static_cast<double>(n) / std::log(ratio)));
  return std::max(d + 1, scaled);
}

Sample draw_sample(const Instance& instance, std::int64_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("draw_sample: requires n >= 1");
  if (const auto* fin = std::get_if<FiniteHardInstance>(&instance)) {
    FiniteSample s;
    s.domain_size = fin->domain_size;
    s.points.resize(static_cast<std::size_t>(n));
    for (auto& p : s.points) {
      p = static_cast<std::int64_t>(
          rng.uniform_int(static_cast<std::uint64_t>(fin->domain_size)));
    }
    s.labels.assign(static_cast<std::size_t>(n), 0);
    return s;
  }
  RealSample s;
  s.points.resize(static_cast<std::size_t>(n));
  for (auto& p : s.points) p = rng.uniform01();
  s.labels.assign(static_cast<std::size_t>(n), 0);
  return s;
}

}  // namespace maj3::instances
