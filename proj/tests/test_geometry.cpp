#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "geometry.hpp"
#include "rng.hpp"

using maj3::Rng;
using maj3::geometry::contains;
using maj3::geometry::Interval;
using maj3::geometry::IntervalSet;
using maj3::geometry::is_canonical;
using maj3::geometry::majority;
using maj3::geometry::majority3;
using maj3::geometry::measure;
using maj3::geometry::set_intersect;
using maj3::geometry::set_union;

namespace {

IntervalSet make(std::initializer_list<Interval> raw) {
  std::vector<Interval> v(raw);
  return IntervalSet::normalize(v);
}

// Random set with up to max_pieces pieces: sort 2k uniform cuts and pair
// them up. Cut collisions are measure-zero under the 53-bit stream; a
// degenerate pair would throw in normalize, so redraw on the (never yet
// observed) collision.
IntervalSet random_set(Rng& rng, int max_pieces) {
  for (;;) {
    const auto k = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::uint64_t>(max_pieces)));
    std::vector<double> cuts(2 * k);
    for (double& c : cuts) c = rng.uniform01();
    std::sort(cuts.begin(), cuts.end());
    if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) continue;
    std::vector<Interval> raw;
    raw.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      raw.push_back({cuts[2 * i], cuts[2 * i + 1]});
    }
    return IntervalSet::normalize(raw);
  }
}

// Linear-scan membership oracle.
bool contains_scan(const IntervalSet& s, double x) {
  for (const Interval& p : s.pieces()) {
    if (p.lo < x && x <= p.hi) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("normalize merges adjacent pieces") {
  const IntervalSet s = make({{0.2, 0.4}, {0.4, 0.6}});
  REQUIRE(s.size() == 1);
  CHECK(s.pieces()[0] == Interval{0.2, 0.6});
}

TEST_CASE("normalize of nothing is the empty set") {
  const IntervalSet s = IntervalSet::normalize({});
  CHECK(s.empty());
  CHECK(measure(s) == 0.0);
}

TEST_CASE("normalize sorts and merges overlapping pieces") {
  const IntervalSet s = make({{0.5, 0.7}, {0.1, 0.3}, {0.25, 0.55}});
  REQUIRE(s.size() == 1);
  CHECK(s.pieces()[0] == Interval{0.1, 0.7});

  // Brute-force membership on a uniform grid agrees with membership in any
  // of the raw inputs.
  const std::vector<Interval> raw = {{0.5, 0.7}, {0.1, 0.3}, {0.25, 0.55}};
  for (int i = 0; i <= 10000; ++i) {
    const double x = static_cast<double>(i) / 10000.0;
    bool raw_hit = false;
    for (const Interval& p : raw) raw_hit |= (p.lo < x && x <= p.hi);
    CHECK(contains(s, x) == raw_hit);
  }
}

TEST_CASE("normalize rejects malformed pieces") {
  CHECK_THROWS_AS(make({{0.4, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(make({{0.6, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(make({{-0.1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make({{0.5, 1.1}}), std::invalid_argument);
}

TEST_CASE("measure of the full domain is one") {
  CHECK(measure(make({{0.0, 1.0}})) == 1.0);
}

TEST_CASE("intersect on a known pair") {
  const IntervalSet a = make({{0.0, 0.5}});
  const IntervalSet b = make({{0.25, 1.0}});
  const IntervalSet i = set_intersect(a, b);
  REQUIRE(i.size() == 1);
  CHECK(i.pieces()[0] == Interval{0.25, 0.5});
  CHECK(measure(i) == 0.25);
}

TEST_CASE("inclusion-exclusion holds on random pairs") {
  Rng rng(0x1EADBEEFu);
  for (int it = 0; it < 1000; ++it) {
    const IntervalSet a = random_set(rng, 6);
    const IntervalSet b = random_set(rng, 6);
    const double lhs = measure(set_union(a, b));
    const double rhs = measure(a) + measure(b) - measure(set_intersect(a, b));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("union and intersect are commutative and associative") {
  Rng rng(0xABCDu);
  for (int it = 0; it < 300; ++it) {
    const IntervalSet a = random_set(rng, 5);
    const IntervalSet b = random_set(rng, 5);
    const IntervalSet c = random_set(rng, 5);
    CHECK(set_union(a, b) == set_union(b, a));
    CHECK(set_intersect(a, b) == set_intersect(b, a));
    CHECK(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)));
    CHECK(set_intersect(set_intersect(a, b), c) ==
          set_intersect(a, set_intersect(b, c)));
  }
}

TEST_CASE("every operation returns canonical sets") {
  Rng rng(0x5EEDu);
  for (int it = 0; it < 300; ++it) {
    const IntervalSet a = random_set(rng, 6);
    const IntervalSet b = random_set(rng, 6);
    const IntervalSet c = random_set(rng, 6);
    CHECK(is_canonical(a.pieces()));
    CHECK(is_canonical(set_union(a, b).pieces()));
    CHECK(is_canonical(set_intersect(a, b).pieces()));
    CHECK(is_canonical(majority3(a, b, c).pieces()));
  }
}

TEST_CASE("two identical voters dominate the third") {
  Rng rng(0xF00Du);
  for (int it = 0; it < 100; ++it) {
    const IntervalSet a = random_set(rng, 5);
    const IntervalSet b = random_set(rng, 5);
    CHECK(majority3(a, a, b) == a);
    CHECK(majority3(a, b, a) == a);
    CHECK(majority3(b, a, a) == a);
  }
}

TEST_CASE("two empty voters force the empty majority") {
  Rng rng(0xBEEFu);
  const IntervalSet empty;
  for (int it = 0; it < 50; ++it) {
    const IntervalSet x = random_set(rng, 5);
    CHECK(majority3(empty, empty, x).empty());
  }
}

TEST_CASE("majority3 equals the definition and the pointwise vote") {
  Rng rng(0xCAFEu);
  for (int it = 0; it < 200; ++it) {
    const IntervalSet a = random_set(rng, 6);
    const IntervalSet b = random_set(rng, 6);
    const IntervalSet c = random_set(rng, 6);
    const IntervalSet maj = majority3(a, b, c);
    const IntervalSet by_def = set_union(
        set_union(set_intersect(a, b), set_intersect(a, c)),
        set_intersect(b, c));
    CHECK(maj == by_def);
    for (int probe = 0; probe < 50; ++probe) {
      const double x = rng.uniform01();
      const int votes = static_cast<int>(contains(a, x)) +
                        static_cast<int>(contains(b, x)) +
                        static_cast<int>(contains(c, x));
      CHECK(contains(maj, x) == (votes >= 2));
    }
  }
}

TEST_CASE("majority region is at most the pairwise-intersection mass") {
  Rng rng(0xD00Du);
  for (int it = 0; it < 500; ++it) {
    const IntervalSet a = random_set(rng, 6);
    const IntervalSet b = random_set(rng, 6);
    const IntervalSet c = random_set(rng, 6);
    const double lhs = measure(majority3(a, b, c));
    const double rhs = measure(set_intersect(a, b)) +
                       measure(set_intersect(a, c)) +
                       measure(set_intersect(b, c));
    CHECK(lhs <= rhs + 1e-15);
  }
}

TEST_CASE("general majority agrees with majority3 and with one voter") {
  Rng rng(0x1234u);
  for (int it = 0; it < 100; ++it) {
    const IntervalSet a = random_set(rng, 5);
    const IntervalSet b = random_set(rng, 5);
    const IntervalSet c = random_set(rng, 5);
    const std::vector<IntervalSet> three = {a, b, c};
    CHECK(majority(three) == majority3(a, b, c));
    const std::vector<IntervalSet> one = {a};
    CHECK(majority(one) == a);
  }
}

TEST_CASE("five-voter majority matches the pointwise vote") {
  Rng rng(0x3456u);
  for (int it = 0; it < 60; ++it) {
    std::vector<IntervalSet> voters;
    for (int v = 0; v < 5; ++v) voters.push_back(random_set(rng, 4));
    const IntervalSet maj = majority(voters);
    CHECK(is_canonical(maj.pieces()));
    for (int probe = 0; probe < 60; ++probe) {
      const double x = rng.uniform01();
      int votes = 0;
      for (const IntervalSet& v : voters) votes += contains(v, x);
      CHECK(contains(maj, x) == (votes >= 3));
    }
  }
}

TEST_CASE("contains honors the left-open right-closed convention") {
  const IntervalSet s = make({{0.2, 0.4}});
  CHECK(contains(s, 0.4));
  CHECK_FALSE(contains(s, 0.2));
  CHECK_FALSE(contains(s, 0.0));
  CHECK(contains(make({{0.0, 1.0}}), 1.0));
}

TEST_CASE("contains rejects points outside the unit interval") {
  const IntervalSet s = make({{0.2, 0.4}});
  CHECK_THROWS_AS(contains(s, -0.01), std::invalid_argument);
  CHECK_THROWS_AS(contains(s, 1.01), std::invalid_argument);
}

TEST_CASE("contains agrees with a linear scan on random sets") {
  Rng rng(0x9876u);
  for (int it = 0; it < 200; ++it) {
    const IntervalSet s = random_set(rng, 8);
    for (int probe = 0; probe < 40; ++probe) {
      const double x = rng.uniform01();
      CHECK(contains(s, x) == contains_scan(s, x));
    }
    // Exact endpoints are the adversarial probes for a binary search.
    for (const Interval& p : s.pieces()) {
      CHECK(contains(s, p.hi));
      CHECK(contains(s, p.hi) == contains_scan(s, p.hi));
      CHECK(contains(s, p.lo) == contains_scan(s, p.lo));
    }
  }
}

TEST_CASE("from_canonical round-trips pieces of a normalized set") {
  Rng rng(0x777u);
  const IntervalSet s = random_set(rng, 6);
  const IntervalSet t = IntervalSet::from_canonical(s.pieces());
  CHECK(s == t);
}
