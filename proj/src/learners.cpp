#include "learners.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace maj3::learners {

namespace {

using erms::Hypothesis;
using instances::FiniteSample;
using instances::RealSample;
using instances::Sample;

Sample slice(const Sample& s, std::int64_t begin, std::int64_t end) {
  if (const auto* fin = std::get_if<FiniteSample>(&s)) {
    FiniteSample out;
    out.domain_size = fin->domain_size;
    out.points.assign(fin->points.begin() + begin, fin->points.begin() + end);
    out.labels.assign(fin->labels.begin() + begin, fin->labels.begin() + end);
    return out;
  }
  const auto& real = std::get<RealSample>(s);
  RealSample out;
  out.points.assign(real.points.begin() + begin, real.points.begin() + end);
  out.labels.assign(real.labels.begin() + begin, real.labels.begin() + end);
  return out;
}

std::int64_t sample_size(const Sample& s) {
  if (const auto* fin = std::get_if<FiniteSample>(&s)) {
    return static_cast<std::int64_t>(fin->points.size());
  }
  return static_cast<std::int64_t>(std::get<RealSample>(s).points.size());
}

[[noreturn]] void throw_mismatch(const char* what) {
  std::ostringstream os;
  os << "learn: domain mismatch: " << what;
  throw std::invalid_argument(os.str());
}

std::pair<Hypothesis, erms::IndexSelection> fit_erm(
    const Sample& s, ErmKind erm, const instances::Instance& instance) {
  switch (erm) {
    case ErmKind::kAdversarialInterval: {
      const auto* iv = std::get_if<instances::IntervalHardInstance>(&instance);
      const auto* real = std::get_if<RealSample>(&s);
      if (!iv || !real) {
        throw_mismatch(
            "adversarial_interval requires the interval instance and a real "
            "sample");
      }
      auto r = erms::adversarial_interval_erm(*real, iv->d, iv->C);
      return {std::move(r.hypothesis), std::move(r.selection)};
    }
    case ErmKind::kMaxOnes: {
      const auto* fi = std::get_if<instances::FiniteHardInstance>(&instance);
      const auto* fin = std::get_if<FiniteSample>(&s);
      if (!fi || !fin) {
        throw_mismatch(
            "max_ones requires the finite instance and a finite sample");
      }
      return {erms::max_ones_erm(*fin, fi->d), erms::IndexSelection{}};
    }
    case ErmKind::kZero:
      return {erms::zero_erm(s), erms::IndexSelection{}};
  }
  throw std::logic_error("fit_erm: unknown erm kind");
}

Hypothesis combine_majority(const std::vector<Hypothesis>& pieces) {
  if (std::holds_alternative<geometry::IntervalSet>(pieces.front())) {
    if (pieces.size() == 3) {
      return geometry::majority3(std::get<geometry::IntervalSet>(pieces[0]),
                                 std::get<geometry::IntervalSet>(pieces[1]),
                                 std::get<geometry::IntervalSet>(pieces[2]));
    }
    std::vector<geometry::IntervalSet> sets;
    sets.reserve(pieces.size());
    for (const auto& h : pieces) {
      sets.push_back(std::get<geometry::IntervalSet>(h));
    }
    return geometry::majority(sets);
  }
  // Finite variant: an index wins with strictly more than half the votes.
  const std::int64_t domain_size =
      std::get<erms::FiniteHypothesis>(pieces.front()).domain_size;
  std::map<std::int64_t, std::size_t> votes;
  for (const auto& h : pieces) {
    for (const std::int64_t x : std::get<erms::FiniteHypothesis>(h).ones) {
      ++votes[x];
    }
  }
  erms::FiniteHypothesis out{domain_size, {}};
  const std::size_t need = pieces.size() / 2 + 1;
  for (const auto& [x, c] : votes) {
    if (c >= need) out.ones.push_back(x);
  }
  return out;
}

LearnOutcome fit_pieces(const Sample& sample,
                        const std::vector<std::pair<std::int64_t, std::int64_t>>&
                            ranges,
                        ErmKind erm, const instances::Instance& instance) {
  LearnOutcome out;
  out.pieces.reserve(ranges.size());
  out.selections.reserve(ranges.size());
  for (const auto& [b, e] : ranges) {
    auto [h, sel] = fit_erm(slice(sample, b, e), erm, instance);
    out.pieces.push_back(std::move(h));
    out.selections.push_back(std::move(sel));
  }
  out.combined = combine_majority(out.pieces);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> disjoint_ranges(
    std::int64_t m, std::int64_t k, const char* who) {
  if (m % k != 0) {
    std::ostringstream os;
    os << who << ": sample size " << m << " is not divisible by " << k;
    throw std::invalid_argument(os.str());
  }
  const std::int64_t t = m / k;
  std::vector<std::pair<std::int64_t, std::int64_t>> r;
  r.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) r.emplace_back(i * t, (i + 1) * t);
  return r;
}

}  // namespace

std::int64_t total_sample_size(const LearnerSpec& spec, std::int64_t n,
                               bool n_is_piece_size) {
  switch (spec.kind) {
    case LearnerKind::kSingle:
    case LearnerKind::kBagging:
      return n;
    case LearnerKind::kMaj3Disjoint:
    case LearnerKind::kSimonPrefix:
      return n_is_piece_size ? 3 * n : n;
    case LearnerKind::kMajKDisjoint:
      return n_is_piece_size ? spec.k * n : n;
  }
  throw std::logic_error("total_sample_size: unknown learner kind");
}

LearnOutcome learn(const instances::Sample& sample, const LearnerSpec& spec,
                   const instances::Instance& instance, Rng& rng) {
  const std::int64_t m = sample_size(sample);
  if (m < 1) throw std::invalid_argument("learn: empty sample");

  switch (spec.kind) {
    case LearnerKind::kSingle: {
      LearnOutcome out;
      auto [h, sel] = fit_erm(sample, spec.erm, instance);
      out.pieces.push_back(h);
      out.selections.push_back(std::move(sel));
      out.combined = std::move(h);
      return out;
    }
    case LearnerKind::kMaj3Disjoint:
      return fit_pieces(sample, disjoint_ranges(m, 3, "learn_maj3_disjoint"),
                        spec.erm, instance);
    case LearnerKind::kSimonPrefix: {
      if (m % 3 != 0) {
        std::ostringstream os;
        os << "learn_simon_prefix: sample size " << m
           << " is not divisible by 3";
        throw std::invalid_argument(os.str());
      }
      const std::int64_t t = m / 3;
      return fit_pieces(sample, {{0, t}, {0, 2 * t}, {0, 3 * t}}, spec.erm,
                        instance);
    }
    case LearnerKind::kMajKDisjoint: {
      if (spec.k < 1 || spec.k % 2 == 0) {
        throw std::invalid_argument(
            "learn_maj_k_disjoint: k must be odd and positive");
      }
      return fit_pieces(sample,
                        disjoint_ranges(m, spec.k, "learn_maj_k_disjoint"),
                        spec.erm, instance);
    }
    case LearnerKind::kBagging: {
      if (spec.bags < 1 || spec.bags % 2 == 0) {
        throw std::invalid_argument("learn_bagging: bags must be odd");
      }
      const std::int64_t bag_size = spec.bag_size > 0 ? spec.bag_size : m;
      LearnOutcome out;
      for (std::int64_t b = 0; b < spec.bags; ++b) {
        // Resample with replacement; index order is part of the replay
        // contract (bag b draws bag_size indices in sequence).
        Sample bag = sample;
        auto assign = [&](auto& dst, const auto& src) {
          dst.points.resize(static_cast<std::size_t>(bag_size));
          dst.labels.resize(static_cast<std::size_t>(bag_size));
          for (std::int64_t i = 0; i < bag_size; ++i) {
            const auto idx = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::uint64_t>(m)) - 1);
            dst.points[static_cast<std::size_t>(i)] = src.points[idx];
            dst.labels[static_cast<std::size_t>(i)] = src.labels[idx];
          }
        };
        if (auto* fin = std::get_if<FiniteSample>(&bag)) {
          assign(*fin, std::get<FiniteSample>(sample));
        } else {
          assign(std::get<RealSample>(bag), std::get<RealSample>(sample));
        }
        auto [h, sel] = fit_erm(bag, spec.erm, instance);
        out.pieces.push_back(std::move(h));
        out.selections.push_back(std::move(sel));
      }
      out.combined = combine_majority(out.pieces);
      return out;
    }
  }
  throw std::logic_error("learn: unknown learner kind");
}

std::string learner_kind_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kSingle:
      return "single";
    case LearnerKind::kMaj3Disjoint:
      return "maj3_disjoint";
    case LearnerKind::kSimonPrefix:
      return "simon_prefix";
    case LearnerKind::kMajKDisjoint:
      return "maj_k_disjoint";
    case LearnerKind::kBagging:
      return "bagging";
  }
  return "unknown";
}

std::string erm_kind_name(ErmKind kind) {
  switch (kind) {
    case ErmKind::kAdversarialInterval:
      return "adversarial_interval";
    case ErmKind::kMaxOnes:
      return "max_ones";
    case ErmKind::kZero:
      return "zero";
  }
  return "unknown";
}

}  // namespace maj3::learners
