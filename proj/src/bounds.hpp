#ifndef MAJ3_BOUNDS_HPP
#define MAJ3_BOUNDS_HPP

#include <cstdint>

namespace maj3::bounds {

// Shape functions for the error bounds, with every unspecified universal
// constant set to 1. These are overlay curves and band references; empirical
// results are compared against shapes, never against absolute values.
//
// Two distinct logarithms appear, mirroring the two notations the
// constructions use: plain natural log where a bound is written with ln,
// and the truncated base-2 log where a bound is written with Log.

struct BoundInput {
  std::int64_t n;
  std::int64_t d;
  double delta;
};

// Truncated base-2 logarithm: max(2, log2(x)). Floors logarithmic factors
// so bound shapes stay positive. Throws std::invalid_argument for x <= 0.
double log_trunc(double x);

// Consistent-learner (ERM) shape: (d/n)*ln(n/d) + ln(1/delta)/n.
double erm_bound(const BoundInput& in);

// Optimal realizable shape: d/n + ln(1/delta)/n.
double optimal_bound(const BoundInput& in);

// Prefix-majority upper-bound shape: (d/n)*Log(Log(n/d)) + ln(1/delta)/n.
// The printed form of this bound uses an untruncated ln(ln(n/d)), which is
// negative for n/d < e; both logs here are truncated so the shape is total
// and positive, and the divergence is deliberate.
double simon_bound(const BoundInput& in);

// Majority-of-three high-probability shape:
// (d/n)*Log(Log(min(n/d, 1/delta))) + Log(1/delta)/n.
double thm2_bound(const BoundInput& in);

// Weakened uniform-convergence shape at training size m:
// 4*max(d*Log(2*e*m/d)/m, Log(2/delta)/m).
double uniform_convergence_bound(std::int64_t m, std::int64_t d, double delta);

}  // namespace maj3::bounds

#endif  // MAJ3_BOUNDS_HPP
