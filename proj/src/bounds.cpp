#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maj3::bounds {

namespace {

void check_input(const BoundInput& in) {
  if (in.d < 1 || in.n < in.d) {
    throw std::invalid_argument("bounds: requires n >= d >= 1");
  }
  if (!(in.delta > 0.0 && in.delta < 1.0)) {
    throw std::invalid_argument("bounds: requires delta in (0,1)");
  }
}

}  // namespace

double log_trunc(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("log_trunc: requires x > 0");
  }
  return std::max(2.0, std::log2(x));
}

double erm_bound(const BoundInput& in) {
  check_input(in);
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);
  return (d / n) * std::log(n / d) + std::log(1.0 / in.delta) / n;
}

double optimal_bound(const BoundInput& in) {
  check_input(in);
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);
  return d / n + std::log(1.0 / in.delta) / n;
}

double simon_bound(const BoundInput& in) {
  check_input(in);
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);
  return (d / n) * log_trunc(log_trunc(n / d)) + std::log(1.0 / in.delta) / n;
}

double thm2_bound(const BoundInput& in) {
  check_input(in);
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);
  const double inv_delta = 1.0 / in.delta;
  return (d / n) * log_trunc(log_trunc(std::min(n / d, inv_delta))) +
         log_trunc(inv_delta) / n;
}

double uniform_convergence_bound(std::int64_t m, std::int64_t d,
                                 double delta) {
  if (m < 1 || d < 1) {
    throw std::invalid_argument(
        "uniform_convergence_bound: requires m >= 1 and d >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(
        "uniform_convergence_bound: requires delta in (0,1)");
  }
  const double md = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  const double a = dd * log_trunc(2.0 * std::numbers::e * md / dd) / md;
  const double b = log_trunc(2.0 / delta) / md;
  return 4.0 * std::max(a, b);
}

}  // namespace maj3::bounds
