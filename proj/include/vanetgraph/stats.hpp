#ifndef VANETGRAPH_STATS_HPP_
#define VANETGRAPH_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "vanetgraph/centrality.hpp"
#include "vanetgraph/error.hpp"

namespace vanetgraph {

// One per-vertex measure distribution under one model.
struct MeasureSample {
  std::vector<double> values;
  Model model = Model::aggregated;
  Measure measure = Measure::degree;

  std::size_t size() const { return values.size(); }

  void validate() const {
    if (values.empty()) throw ParamError("measure sample is empty");
    for (double v : values)
      if (!std::isfinite(v)) throw ParamError("non-finite value in sample");
  }
};

struct Histogram {
  std::vector<double> bin_edges;    // B+1 ascending values
  std::vector<double> proportions;  // sums to 1
};

struct KsResult {
  double d = 0.0;       // sup |ECDF_a - ECDF_b|
  double delta = 0.0;   // rejection threshold
  double alpha = 0.0;
  double c_alpha = 0.0;
  bool reject = false;
};

struct HellingerResult {
  double h = 0.0;   // metric (square-root) form, in [0,1]
  double h2 = 0.0;  // squared form
  int bins = 0;
};

namespace detail {

// Classical two-sample coefficients; values outside the table fall back to
// the closed form sqrt(-ln(alpha/2)/2).
inline double ks_coefficient(double alpha) {
  struct Entry { double alpha, c; };
  static constexpr Entry kTable[] = {
      {0.10, 1.22}, {0.05, 1.36}, {0.025, 1.48},
      {0.01, 1.63}, {0.005, 1.73}, {0.001, 1.95}};
  for (const auto& e : kTable)
    if (std::abs(alpha - e.alpha) < 1e-12) return e.c;
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

}  // namespace detail

inline double ks_threshold(std::size_t m_a, std::size_t m_b, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) throw ParamError("alpha must be in (0,1)");
  const double c = detail::ks_coefficient(alpha);
  if (m_a == m_b) return c * std::sqrt(2.0 / static_cast<double>(m_a));
  return c * std::sqrt(static_cast<double>(m_a + m_b) /
                       (static_cast<double>(m_a) * static_cast<double>(m_b)));
}

inline KsResult ks_two_sample(const MeasureSample& a, const MeasureSample& b,
                              double alpha = 0.05) {
  a.validate();
  b.validate();
  if (alpha <= 0.0 || alpha >= 1.0) throw ParamError("alpha must be in (0,1)");
  std::vector<double> sa = a.values, sb = b.values;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  KsResult r;
  r.d = d;
  r.alpha = alpha;
  r.c_alpha = detail::ks_coefficient(alpha);
  r.delta = ks_threshold(sa.size(), sb.size(), alpha);
  r.reject = r.d > r.delta;
  return r;
}

// Equal-width histogram of proportions over [lo, hi]; the last bin is
// right-closed. A degenerate range (hi == lo) collects everything in the
// first bin.
inline Histogram histogram_proportions(const MeasureSample& s, int bins,
                                       double lo, double hi) {
  s.validate();
  if (bins < 1) throw ParamError("histogram needs at least one bin");
  if (hi < lo) throw ParamError("histogram range is inverted");
  Histogram h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i)
    h.bin_edges[static_cast<std::size_t>(i)] = lo + width * i;
  h.bin_edges.back() = hi;
  std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
  for (double v : s.values) {
    int b = 0;
    if (hi > lo) {
      b = static_cast<int>(std::floor((v - lo) / width));
      if (b < 0) b = 0;
      if (b >= bins) b = bins - 1;
    }
    ++count[static_cast<std::size_t>(b)];
  }
  h.proportions.resize(static_cast<std::size_t>(bins));
  const double n = static_cast<double>(s.values.size());
  for (int i = 0; i < bins; ++i)
    h.proportions[static_cast<std::size_t>(i)] =
        static_cast<double>(count[static_cast<std::size_t>(i)]) / n;
  return h;
}

inline HellingerResult hellinger(const Histogram& p, const Histogram& q) {
  if (p.bin_edges != q.bin_edges)
    throw ParamError("hellinger: histograms use different bin edges");
  double h2 = 0.0;
  for (std::size_t i = 0; i < p.proportions.size(); ++i) {
    const double d = std::sqrt(p.proportions[i]) - std::sqrt(q.proportions[i]);
    h2 += d * d;
  }
  h2 *= 0.5;
  h2 = std::clamp(h2, 0.0, 1.0);
  HellingerResult r;
  r.h2 = h2;
  r.h = std::sqrt(h2);
  r.bins = static_cast<int>(p.proportions.size());
  return r;
}

inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw ParamError("pearson: length mismatch or empty input");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

struct ScatterRow {
  int vertex = 0;
  double aggregated = 0.0;
  double temporal = 0.0;
};

struct ScatterData {
  std::vector<ScatterRow> rows;
  double pearson = 0.0;
};

inline ScatterData scatter_export(const MeasureSample& aggregated,
                                  const MeasureSample& temporal) {
  aggregated.validate();
  temporal.validate();
  if (aggregated.size() != temporal.size())
    throw ParamError("scatter: samples cover different vertex sets");
  ScatterData out;
  out.rows.reserve(aggregated.size());
  for (std::size_t v = 0; v < aggregated.size(); ++v)
    out.rows.push_back({static_cast<int>(v), aggregated.values[v],
                        temporal.values[v]});
  out.pearson = pearson(aggregated.values, temporal.values);
  return out;
}

// Full model comparison for one measure, as reported in the result tables:
// KS statistic against its threshold plus the Hellinger distance over
// shared-range histograms.
struct ComparisonResult {
  Measure measure = Measure::degree;
  KsResult ks;
  HellingerResult hd;
  double pearson = 0.0;
};

inline ComparisonResult compare_samples(const MeasureSample& aggregated,
                                        const MeasureSample& temporal,
                                        double alpha = 0.05, int bins = 100) {
  aggregated.validate();
  temporal.validate();
  ComparisonResult r;
  r.measure = aggregated.measure;
  r.ks = ks_two_sample(aggregated, temporal, alpha);
  double lo = aggregated.values.front(), hi = lo;
  for (double v : aggregated.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : temporal.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.hd = hellinger(histogram_proportions(aggregated, bins, lo, hi),
                   histogram_proportions(temporal, bins, lo, hi));
  if (aggregated.size() == temporal.size())
    r.pearson = pearson(aggregated.values, temporal.values);
  return r;
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_STATS_HPP_
