#ifndef MAJ3_LEARNERS_HPP
#define MAJ3_LEARNERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "erms.hpp"
#include "instances.hpp"
#include "rng.hpp"

namespace maj3::learners {

enum class LearnerKind {
  kSingle,        // one ERM fit on the whole sample
  kMaj3Disjoint,  // ERMs on three disjoint contiguous thirds, 2-of-3 vote
  kSimonPrefix,   // ERMs on the nested prefixes of sizes t, 2t, 3t, vote
  kMajKDisjoint,  // ERMs on k disjoint contiguous pieces, strict majority
  kBagging,       // ERMs on `bags` with-replacement resamples, majority
};

enum class ErmKind {
  kAdversarialInterval,
  kMaxOnes,
  kZero,
};

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kSingle;
  ErmKind erm = ErmKind::kZero;
  std::int64_t k = 3;         // kMajKDisjoint only; odd
  std::int64_t bags = 3;      // kBagging only; odd
  std::int64_t bag_size = 0;  // kBagging; 0 means |sample|
};

// Everything a trial needs from one learner invocation: the voted
// hypothesis, the per-ERM hypotheses, and (interval adversarial ERM only)
// the per-ERM index selections in piece order.
struct LearnOutcome {
  erms::Hypothesis combined;
  std::vector<erms::Hypothesis> pieces;
  std::vector<erms::IndexSelection> selections;
};

// Number of training points the learner consumes when the experiment grid
// value is `n` interpreted as a piece size (kSingle and kBagging take the
// grid value as the total either way).
std::int64_t total_sample_size(const LearnerSpec& spec, std::int64_t n,
                               bool n_is_piece_size);

// Dispatch on spec.kind. `instance` supplies the ERM parameters (d, C or
// the finite domain); `rng` is consumed only by bagging resamples. Throws
// std::invalid_argument on size/parity violations (sample size not
// divisible by the piece count, even k or bags) and propagates ERM errors.
LearnOutcome learn(const instances::Sample& sample, const LearnerSpec& spec,
                   const instances::Instance& instance, Rng& rng);

std::string learner_kind_name(LearnerKind kind);
std::string erm_kind_name(ErmKind kind);

}  // namespace maj3::learners

#endif  // MAJ3_LEARNERS_HPP
