#ifndef MAJ3_EVALUATION_HPP
#define MAJ3_EVALUATION_HPP

#include <cstdint>
#include <variant>

#include "erms.hpp"
#include "instances.hpp"
#include "learners.hpp"
#include "rng.hpp"

namespace maj3::evaluation {

struct ErrorReport {
  double value;
  std::int64_t monte_carlo_samples;  // 0 for exact values
};

// Exact error under the instance's distribution and the all-zeros target:
// the measure of the hypothesis support (interval) or #ones/N (finite).
// Throws std::invalid_argument when the hypothesis and instance domains
// disagree.
double exact_error(const erms::Hypothesis& h,
                   const instances::Instance& instance);

// Probability that both hypotheses err on the same fresh point: measure (or
// count/N) of the intersection of the two error regions.
double joint_error(const erms::Hypothesis& h1, const erms::Hypothesis& h2,
                   const instances::Instance& instance);

// Error of h under the uniform distribution conditioned on R:
// measure(support(h) n R) / measure(R). Interval instances only. Throws
// std::domain_error when measure(R) == 0.
double conditional_error(const erms::Hypothesis& h,
                         const geometry::IntervalSet& region,
                         const instances::Instance& instance);

// Fraction of `samples` fresh i.i.d. test draws the hypothesis
// misclassifies; unbiased estimator of exact_error, used as a cross-check.
ErrorReport monte_carlo_error(const erms::Hypothesis& h,
                              const instances::Instance& instance,
                              std::int64_t samples, Rng& rng);

// Fraction of `trials` fresh n-point samples whose fitted ERM misclassifies
// the fixed point x: an unbiased estimate of the pointwise mistake
// probability p_x.
double estimate_pointwise_mistake_prob(
    std::variant<double, std::int64_t> x, const instances::Instance& instance,
    learners::ErmKind erm, std::int64_t n, std::int64_t trials, Rng& rng);

}  // namespace maj3::evaluation

#endif  // MAJ3_EVALUATION_HPP
