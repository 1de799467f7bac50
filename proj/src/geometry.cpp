#include "geometry.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace maj3::geometry {

namespace {

[[noreturn]] void throw_bad_interval(const Interval& iv) {
  std::ostringstream os;
  os << "interval (" << iv.lo << ", " << iv.hi
     << "] is invalid: requires 0 <= lo < hi <= 1";
  throw std::invalid_argument(os.str());
}

// Merges a lo-sorted list in place: overlapping or exactly adjacent pieces
// collapse into one.
std::vector<Interval> merge_sorted(std::vector<Interval> v) {
  std::vector<Interval> out;
  out.reserve(v.size());
  for (const Interval& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

bool is_canonical(std::span<const Interval> pieces) {
  double prev_hi = -1.0;
  for (const Interval& iv : pieces) {
    if (!(iv.lo >= 0.0 && iv.lo < iv.hi && iv.hi <= 1.0)) return false;
    if (iv.lo <= prev_hi) return false;
    prev_hi = iv.hi;
  }
  return true;
}

IntervalSet IntervalSet::normalize(std::span<const Interval> raw) {
  std::vector<Interval> v;
  v.reserve(raw.size());
  for (const Interval& iv : raw) {
    if (!(iv.lo >= 0.0 && iv.lo < iv.hi && iv.hi <= 1.0)) throw_bad_interval(iv);
    v.push_back(iv);
  }
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalSet s;
  s.pieces_ = merge_sorted(std::move(v));
  assert(is_canonical(s.pieces_));
  return s;
}

IntervalSet IntervalSet::from_canonical(std::vector<Interval> pieces) {
  assert(is_canonical(pieces));
  IntervalSet s;
  s.pieces_ = std::move(pieces);
  return s;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> v;
  v.reserve(a.size() + b.size());
  std::merge(a.pieces().begin(), a.pieces().end(), b.pieces().begin(),
             b.pieces().end(), std::back_inserter(v),
             [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return IntervalSet::from_canonical(merge_sorted(std::move(v)));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Interval& x = a.pieces()[i];
    const Interval& y = b.pieces()[j];
    const double lo = std::max(x.lo, y.lo);
    const double hi = std::min(x.hi, y.hi);
    if (lo < hi) out.push_back({lo, hi});
    // Advance whichever piece ends first; both canonical, so ties are safe
    // to advance together.
    if (x.hi < y.hi) {
      ++i;
    } else if (y.hi < x.hi) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return IntervalSet::from_canonical(std::move(out));
}

double measure(const IntervalSet& a) {
  double total = 0.0;
  for (const Interval& iv : a.pieces()) total += iv.hi - iv.lo;
  return total;
}

IntervalSet majority3(const IntervalSet& a, const IntervalSet& b,
                      const IntervalSet& c) {
  return set_union(set_intersect(a, b),
                   set_union(set_intersect(a, c), set_intersect(b, c)));
}

IntervalSet majority(std::span<const IntervalSet> voters) {
  if (voters.empty()) throw std::invalid_argument("majority: no voters");
  const long need = static_cast<long>(voters.size() / 2 + 1);

  // Endpoint sweep. Coverage is constant on each gap (e, e'] between
  // consecutive distinct endpoint values: a piece (lo, hi] covers the gap
  // iff lo <= e and hi >= e', so after all events at values <= e are
  // applied, the running count is exactly the gap's coverage.
  struct Event {
    double x;
    int delta;
  };
  std::vector<Event> events;
  for (const IntervalSet& s : voters) {
    for (const Interval& iv : s.pieces()) {
      events.push_back({iv.lo, +1});
      events.push_back({iv.hi, -1});
    }
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.x < b.x; });

  std::vector<Interval> out;
  long count = 0;
  double prev = -1.0;
  std::size_t i = 0;
  while (i < events.size()) {
    const double x = events[i].x;
    if (count >= need && x > prev) {
      if (!out.empty() && out.back().hi == prev) {
        out.back().hi = x;
      } else {
        out.push_back({prev, x});
      }
    }
    while (i < events.size() && events[i].x == x) {
      count += events[i].delta;
      ++i;
    }
    prev = x;
  }
  return IntervalSet::from_canonical(std::move(out));
}

bool contains(const IntervalSet& a, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("contains: point outside [0,1]");
  }
  const auto& v = a.pieces();
  // First piece whose hi is >= x; pieces are disjoint so his are sorted.
  auto it = std::lower_bound(
      v.begin(), v.end(), x,
      [](const Interval& iv, double val) { return iv.hi < val; });
  return it != v.end() && it->lo < x && x <= it->hi;
}

}  // namespace maj3::geometry
