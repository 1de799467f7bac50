#include "evaluation.hpp"

#include <algorithm>
#include <stdexcept>

namespace maj3::evaluation {

namespace {

using erms::FiniteHypothesis;
using erms::Hypothesis;
using geometry::IntervalSet;

void check_domain_match(const Hypothesis& h,
                        const instances::Instance& instance) {
  const bool interval_h = std::holds_alternative<IntervalSet>(h);
  const bool interval_i =
      std::holds_alternative<instances::IntervalHardInstance>(instance);
  if (interval_h != interval_i) {
    throw std::invalid_argument(
        "evaluation: hypothesis domain does not match the instance domain");
  }
  if (!interval_h) {
    const auto& fh = std::get<FiniteHypothesis>(h);
    const auto& fi = std::get<instances::FiniteHardInstance>(instance);
    if (fh.domain_size != fi.domain_size) {
      throw std::invalid_argument(
          "evaluation: finite hypothesis and instance disagree on N");
    }
  }
}

std::int64_t intersection_count(const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b) {
  std::int64_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool predicts_one(const Hypothesis& h, double x_real, std::int64_t x_int) {
  if (const auto* set = std::get_if<IntervalSet>(&h)) {
    return geometry::contains(*set, x_real);
  }
  const auto& fh = std::get<FiniteHypothesis>(h);
  return std::binary_search(fh.ones.begin(), fh.ones.end(), x_int);
}

}  // namespace

double exact_error(const Hypothesis& h, const instances::Instance& instance) {
  check_domain_match(h, instance);
  if (const auto* set = std::get_if<IntervalSet>(&h)) {
    return geometry::measure(*set);
  }
  const auto& fh = std::get<FiniteHypothesis>(h);
  return static_cast<double>(fh.ones.size()) /
         static_cast<double>(fh.domain_size);
}

double joint_error(const Hypothesis& h1, const Hypothesis& h2,
                   const instances::Instance& instance) {
  check_domain_match(h1, instance);
  check_domain_match(h2, instance);
  if (const auto* s1 = std::get_if<IntervalSet>(&h1)) {
    return geometry::measure(
        geometry::set_intersect(*s1, std::get<IntervalSet>(h2)));
  }
  const auto& f1 = std::get<FiniteHypothesis>(h1);
  const auto& f2 = std::get<FiniteHypothesis>(h2);
  return static_cast<double>(intersection_count(f1.ones, f2.ones)) /
         static_cast<double>(f1.domain_size);
}

double conditional_error(const Hypothesis& h,
                         const geometry::IntervalSet& region,
                         const instances::Instance& instance) {
  check_domain_match(h, instance);
  const auto* set = std::get_if<IntervalSet>(&h);
  if (!set) {
    throw std::invalid_argument(
        "conditional_error: defined for interval hypotheses only");
  }
  const double mass = geometry::measure(region);
  if (mass == 0.0) {
    throw std::domain_error(
        "conditional_error: conditioning region has zero mass");
  }
  return geometry::measure(geometry::set_intersect(*set, region)) / mass;
}

ErrorReport monte_carlo_error(const Hypothesis& h,
                              const instances::Instance& instance,
                              std::int64_t samples, Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("monte_carlo_error: requires samples >= 1");
  }
  check_domain_match(h, instance);
  std::int64_t mistakes = 0;
  if (const auto* iv =
          std::get_if<instances::IntervalHardInstance>(&instance)) {
    (void)iv;
    for (std::int64_t i = 0; i < samples; ++i) {
      if (predicts_one(h, rng.uniform01(), 0)) ++mistakes;
    }
  } else {
    const auto& fi = std::get<instances::FiniteHardInstance>(instance);
    for (std::int64_t i = 0; i < samples; ++i) {
      const auto x = static_cast<std::int64_t>(
          rng.uniform_int(static_cast<std::uint64_t>(fi.domain_size)));
      if (predicts_one(h, 0.0, x)) ++mistakes;
    }
  }
  return {static_cast<double>(mistakes) / static_cast<double>(samples),
          samples};
}

double estimate_pointwise_mistake_prob(std::variant<double, std::int64_t> x,
                                       const instances::Instance& instance,
                                       learners::ErmKind erm, std::int64_t n,
                                       std::int64_t trials, Rng& rng) {
  if (trials < 1) {
    throw std::invalid_argument(
        "estimate_pointwise_mistake_prob: requires trials >= 1");
  }
  const double x_real = std::holds_alternative<double>(x) ? std::get<double>(x) : 0.0;
  const std::int64_t x_int =
      std::holds_alternative<std::int64_t>(x) ? std::get<std::int64_t>(x) : 0;
  learners::LearnerSpec spec;
  spec.kind = learners::LearnerKind::kSingle;
  spec.erm = erm;
  std::int64_t mistakes = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const instances::Sample s = instances::draw_sample(instance, n, rng);
    const learners::LearnOutcome out = learners::learn(s, spec, instance, rng);
    // Target is all-zeros, so a mistake at x is exactly predicting 1 there.
    if (predicts_one(out.combined, x_real, x_int)) ++mistakes;
  }
  return static_cast<double>(mistakes) / static_cast<double>(trials);
}

}  // namespace maj3::evaluation
