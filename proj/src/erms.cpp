#include "erms.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace maj3::erms {

namespace {

// m1 formula at training size m. Also defines m3 at size m/2 (see header).
std::int64_t coarse_cell_count(std::int64_t m, std::int64_t d, double C) {
  const double cm = C * static_cast<double>(m);
  return static_cast<std::int64_t>(
      std::ceil(cm / std::log(cm / static_cast<double>(d))));
}

bool has_one_label(const std::vector<std::uint8_t>& labels) {
  return std::find(labels.begin(), labels.end(), std::uint8_t{1}) !=
         labels.end();
}

// Degenerate consistent rule for interval samples with 1-labels: cover each
// maximal run of 1-points (no 0-point strictly between) by the interval
// (largest double below the run's first point, run's last point]. Throws if
// more than 2d runs exist, since the class caps at 2d intervals.
geometry::IntervalSet one_label_fallback(const instances::RealSample& sample,
                                         std::int64_t d) {
  struct Tagged {
    double x;
    bool one;
  };
  std::vector<Tagged> pts;
  pts.reserve(sample.points.size());
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    pts.push_back({sample.points[i], sample.labels[i] != 0});
  }
  std::sort(pts.begin(), pts.end(),
            [](const Tagged& a, const Tagged& b) { return a.x < b.x; });

  std::vector<geometry::Interval> runs;
  std::size_t i = 0;
  while (i < pts.size()) {
    if (!pts[i].one) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].one) ++j;
    const double lo = std::nextafter(pts[i].x, -1.0);
    runs.push_back({std::max(0.0, lo), pts[j].x});
    i = j + 1;
  }
  if (static_cast<std::int64_t>(runs.size()) > 2 * d) {
    std::ostringstream os;
    os << "adversarial_interval_erm: no consistent hypothesis with at most "
       << 2 * d << " intervals covers " << runs.size()
       << " separated runs of 1-labeled points";
    throw std::runtime_error(os.str());
  }
  return geometry::IntervalSet::normalize(runs);
}

}  // namespace

PartitionScheme build_partition(std::int64_t m, std::int64_t d, double C) {
  if (m < 2) throw std::invalid_argument("build_partition: requires m >= 2");
  if (d < 1) throw std::invalid_argument("build_partition: requires d >= 1");
  if (!(C > 0.0)) {
    throw std::invalid_argument("build_partition: requires C > 0");
  }
  const double cm_over_d =
      C * static_cast<double>(m) / static_cast<double>(d);
  if (!(cm_over_d > std::numbers::e)) {
    std::ostringstream os;
    os << "build_partition: requires C*m/d > e, got C*m/d = " << cm_over_d
       << " (C=" << C << ", m=" << m << ", d=" << d
       << "); ln(ln(C*m/d)) must be positive";
    throw std::invalid_argument(os.str());
  }
  PartitionScheme ps;
  ps.m = m;
  ps.d = d;
  ps.C = C;
  ps.m1 = coarse_cell_count(m, d, C);
  const double cm = C * static_cast<double>(m);
  ps.m2 = static_cast<std::int64_t>(
      std::ceil(4.0 * cm / (static_cast<double>(ps.m1) *
                            std::log(std::log(cm_over_d)))));
  ps.m3 = coarse_cell_count(2 * m, d, C);
  assert(ps.m1 >= 1 && ps.m2 >= 1 && ps.m3 >= 1);
  return ps;
}

double grid_edge(std::int64_t j, std::int64_t k) {
  return static_cast<double>(j) / static_cast<double>(k);
}

std::int64_t cell_of(double x, std::int64_t k) {
  assert(x > 0.0 && x <= 1.0);
  auto i = static_cast<std::int64_t>(std::ceil(x * static_cast<double>(k)));
  if (i < 1) i = 1;
  if (i > k) i = k;
  // ceil(x*k) can be off by one ulp near a boundary; settle against the
  // rounded endpoint doubles so membership matches the (lo, hi] test on
  // grid_edge values exactly.
  while (i > 1 && x <= grid_edge(i - 1, k)) --i;
  while (i < k && x > grid_edge(i, k)) ++i;
  assert(x > grid_edge(i - 1, k) || i == 1);
  assert(x <= grid_edge(i, k));
  return i;
}

IntervalErmResult adversarial_interval_erm(const instances::RealSample& sample,
                                           std::int64_t d, double C) {
  const auto m = static_cast<std::int64_t>(sample.points.size());
  PartitionScheme ps = build_partition(m, d, C);

  if (has_one_label(sample.labels)) {
    return {one_label_fallback(sample, d), IndexSelection{}, ps};
  }
  return erm_on_scheme(sample, ps);
}

IntervalErmResult erm_on_scheme(const instances::RealSample& sample,
                                const PartitionScheme& ps) {
  if (has_one_label(sample.labels)) {
    throw std::invalid_argument(
        "erm_on_scheme: expects an all-zeros labeled sample");
  }
  const auto m = static_cast<std::int64_t>(sample.points.size());
  const std::int64_t d = ps.d;
  const std::int64_t half = m / 2;
  const std::int64_t fine_total = ps.m1 * ps.m2;
  std::vector<std::uint8_t> coarse_hit(static_cast<std::size_t>(ps.m1) + 1, 0);
  std::vector<std::uint8_t> fine_hit(static_cast<std::size_t>(fine_total) + 1,
                                     0);
  std::vector<std::uint8_t> j_hit(static_cast<std::size_t>(ps.m3) + 1, 0);

  for (std::int64_t idx = 0; idx < m; ++idx) {
    const double x = sample.points[static_cast<std::size_t>(idx)];
    if (idx < half) {
      coarse_hit[static_cast<std::size_t>(cell_of(x, ps.m1))] = 1;
    } else {
      fine_hit[static_cast<std::size_t>(cell_of(x, fine_total))] = 1;
    }
    j_hit[static_cast<std::size_t>(cell_of(x, ps.m3))] = 1;
  }

  IndexSelection sel;
  // First d empty coarse cells, ascending.
  std::vector<std::int64_t> empty_coarse;
  for (std::int64_t i = 1;
       i <= ps.m1 && static_cast<std::int64_t>(empty_coarse.size()) < d; ++i) {
    if (!coarse_hit[static_cast<std::size_t>(i)]) empty_coarse.push_back(i);
  }
  // First d pairs (i, j), i restricted to the empty coarse cells, in
  // lexicographic pair order: outer loop ascending in i, inner in j.
  for (const std::int64_t i : empty_coarse) {
    if (static_cast<std::int64_t>(sel.L1.size()) >= d) break;
    for (std::int64_t j = 1; j <= ps.m2; ++j) {
      if (static_cast<std::int64_t>(sel.L1.size()) >= d) break;
      if (!fine_hit[static_cast<std::size_t>((i - 1) * ps.m2 + j)]) {
        sel.L1.emplace_back(i, j);
      }
    }
  }
  for (std::int64_t k = 1;
       k <= ps.m3 && static_cast<std::int64_t>(sel.L2.size()) < d; ++k) {
    if (!j_hit[static_cast<std::size_t>(k)]) sel.L2.push_back(k);
  }

  std::vector<geometry::Interval> raw;
  raw.reserve(sel.L1.size() + sel.L2.size());
  for (const auto& [i, j] : sel.L1) {
    const std::int64_t q = (i - 1) * ps.m2 + j;
    raw.push_back({grid_edge(q - 1, fine_total), grid_edge(q, fine_total)});
  }
  for (const std::int64_t k : sel.L2) {
    raw.push_back({grid_edge(k - 1, ps.m3), grid_edge(k, ps.m3)});
  }
  geometry::IntervalSet hyp = geometry::IntervalSet::normalize(raw);

#ifndef NDEBUG
  for (const double x : sample.points) assert(!geometry::contains(hyp, x));
#endif
  return {std::move(hyp), std::move(sel), ps};
}

FiniteHypothesis max_ones_erm(const instances::FiniteSample& sample,
                              std::int64_t d) {
  const std::int64_t n_domain = sample.domain_size;
  if (has_one_label(sample.labels)) {
    std::vector<std::int64_t> ones;
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
      if (sample.labels[i]) ones.push_back(sample.points[i]);
    }
    std::sort(ones.begin(), ones.end());
    ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
    if (static_cast<std::int64_t>(ones.size()) > d) {
      std::ostringstream os;
      os << "max_ones_erm: " << ones.size()
         << " distinct 1-labeled points exceed the class budget d=" << d;
      throw std::runtime_error(os.str());
    }
    return {n_domain, std::move(ones)};
  }

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n_domain) + 1, 0);
  for (const std::int64_t p : sample.points) {
    seen[static_cast<std::size_t>(p)] = 1;
  }
  std::vector<std::int64_t> ones;
  ones.reserve(static_cast<std::size_t>(d));
  for (std::int64_t x = 1;
       x <= n_domain && static_cast<std::int64_t>(ones.size()) < d; ++x) {
    if (!seen[static_cast<std::size_t>(x)]) ones.push_back(x);
  }
  return {n_domain, std::move(ones)};
}

Hypothesis zero_erm(const instances::Sample& sample) {
  const auto check = [](const std::vector<std::uint8_t>& labels) {
    if (has_one_label(labels)) {
      throw std::runtime_error(
          "zero_erm: sample has a 1-label; the all-zeros hypothesis is not "
          "consistent");
    }
  };
  if (const auto* fin = std::get_if<instances::FiniteSample>(&sample)) {
    check(fin->labels);
    return FiniteHypothesis{fin->domain_size, {}};
  }
  const auto& real = std::get<instances::RealSample>(sample);
  check(real.labels);
  return geometry::IntervalSet{};
}

}  // namespace maj3::erms
