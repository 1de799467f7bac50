#ifndef MAJ3_GEOMETRY_HPP
#define MAJ3_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace maj3::geometry {

// One half-open piece (lo, hi] of the unit interval.
struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Canonical finite union of disjoint (lo, hi] subintervals of (0,1]:
// sorted ascending, pairwise disjoint, adjacent pieces merged, no
// zero-length pieces. Immutable after construction, safe to share across
// threads.
class IntervalSet {
 public:
  IntervalSet() = default;

  // Validates each pair (0 <= lo < hi <= 1), sorts, merges overlaps and
  // adjacencies. Throws std::invalid_argument on a malformed pair.
  static IntervalSet normalize(std::span<const Interval> raw);

  // Trusted constructor for results of the algebra below: `pieces` must
  // already be canonical (checked in debug builds only).
  static IntervalSet from_canonical(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t size() const { return pieces_.size(); }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

// True iff `pieces` is in canonical form (sorted, disjoint, non-adjacent,
// each 0 <= lo < hi <= 1).
bool is_canonical(std::span<const Interval> pieces);

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);

// Total length; equals the error probability of the indicator under the
// uniform distribution on (0,1].
double measure(const IntervalSet& a);

// Points contained in at least two of the three inputs, by the identity
// maj(a,b,c) = (a n b) u (a n c) u (b n c).
IntervalSet majority3(const IntervalSet& a, const IntervalSet& b,
                      const IntervalSet& c);

// Points contained in more than half of the voters (strict majority).
// `voters` may be any size >= 1; an endpoint sweep, O(total pieces * log).
IntervalSet majority(std::span<const IntervalSet> voters);

// Membership of x in [0,1] under the strict (lo, hi] convention; O(log k).
// Throws std::invalid_argument for x outside [0,1].
bool contains(const IntervalSet& a, double x);

}  // namespace maj3::geometry

#endif  // MAJ3_GEOMETRY_HPP
