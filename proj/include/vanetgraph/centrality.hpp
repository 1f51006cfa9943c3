#ifndef VANETGRAPH_CENTRALITY_HPP_
#define VANETGRAPH_CENTRALITY_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "vanetgraph/error.hpp"
#include "vanetgraph/graph.hpp"

namespace vanetgraph {

enum class Model { aggregated, temporal };
enum class Measure { degree, closeness, betweenness };

inline const char* to_string(Model m) {
  return m == Model::aggregated ? "aggregated" : "temporal";
}
inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::degree: return "degree";
    case Measure::closeness: return "closeness";
    default: return "betweenness";
  }
}

// How normalized values are derived from raw ones.
//
// Closeness divides by (n-1)*m where m is the number of evaluated
// sub-intervals. Betweenness defaults to the uniform global factor
// (n-1)*(n-2)*m; the per-vertex sv*dv*m variant is available as a
// fidelity mode (a per-vertex factor of 0 maps the value to 0).
struct NormalizationSpec {
  enum class BetweennessMode { global, per_vertex };
  BetweennessMode betweenness_mode = BetweennessMode::global;
  int n = 0;
  int m = 1;  // sub-interval count, t_y - t_x + 1
};

// Distances and shortest-path counts from one source over one
// sub-interval [t_from, t_to]. dist is in hops, -1 encodes "unreachable".
struct TemporalPathSummary {
  int source = 0;
  int t_from = 1, t_to = 1;
  std::vector<int> dist;
  std::vector<double> sigma;
};

namespace detail {

// Runs fn(begin, end) over fixed-size source chunks. The chunking (and
// therefore every floating-point reduction order downstream) is
// independent of the thread count.
constexpr int kSourceChunk = 16;

inline void for_each_chunk(int total, int threads,
                           const std::function<void(int, int)>& fn) {
  const int chunks = (total + kSourceChunk - 1) / kSourceChunk;
  if (threads <= 1 || chunks <= 1) {
    for (int c = 0; c < chunks; ++c)
      fn(c * kSourceChunk, std::min(total, (c + 1) * kSourceChunk));
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
      fn(c * kSourceChunk, std::min(total, (c + 1) * kSourceChunk));
  };
  const int nthreads = std::min(threads, chunks);
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Time-expanded BFS state machine shared by the public temporal measures.
// A state (v, t) means "at vertex v, last edge taken in snapshot t"; the
// source starts in state (source, t_from) and every further edge must use
// a snapshot index >= the current one.
class TemporalBfs {
 public:
  TemporalBfs(const TemporalGraph& tg, int t_from, int t_to)
      : tg_(tg), t_from_(t_from), t_to_(t_to), span_(t_to - t_from + 1) {
    const std::size_t states =
        static_cast<std::size_t>(tg.vertex_count()) *
        static_cast<std::size_t>(span_);
    dist_.assign(states, -1);
    sigma_.assign(states, 0.0);
  }

  int state_of(int v, int t) const { return v * span_ + (t - t_from_); }
  int vertex_of(int s) const { return s / span_; }
  int time_of(int s) const { return s % span_ + t_from_; }

  void run(int source) {
    std::fill(dist_.begin(), dist_.end(), -1);
    std::fill(sigma_.begin(), sigma_.end(), 0.0);
    order_.clear();
    const int s0 = state_of(source, t_from_);
    dist_[static_cast<std::size_t>(s0)] = 0;
    sigma_[static_cast<std::size_t>(s0)] = 1.0;
    std::deque<int> queue{s0};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      order_.push_back(a);
      const int v = vertex_of(a);
      const int d = dist_[static_cast<std::size_t>(a)];
      for (int t = time_of(a); t <= t_to_; ++t) {
        for (int u : tg_.snapshot(t).neighbors(v)) {
          const int b = state_of(u, t);
          auto& db = dist_[static_cast<std::size_t>(b)];
          if (db < 0) {
            db = d + 1;
            sigma_[static_cast<std::size_t>(b)] =
                sigma_[static_cast<std::size_t>(a)];
            queue.push_back(b);
          } else if (db == d + 1) {
            sigma_[static_cast<std::size_t>(b)] +=
                sigma_[static_cast<std::size_t>(a)];
          }
        }
      }
    }
  }

  // Collapse states to per-vertex distance and path count.
  void vertex_summary(std::vector<int>& dist, std::vector<double>& sigma) const {
    const int n = tg_.vertex_count();
    dist.assign(static_cast<std::size_t>(n), -1);
    sigma.assign(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
      int best = -1;
      for (int t = t_from_; t <= t_to_; ++t) {
        const int d = dist_[static_cast<std::size_t>(state_of(v, t))];
        if (d >= 0 && (best < 0 || d < best)) best = d;
      }
      if (best < 0) continue;
      double total = 0.0;
      for (int t = t_from_; t <= t_to_; ++t) {
        const int s = state_of(v, t);
        if (dist_[static_cast<std::size_t>(s)] == best)
          total += sigma_[static_cast<std::size_t>(s)];
      }
      dist[static_cast<std::size_t>(v)] = best;
      sigma[static_cast<std::size_t>(v)] = total;
    }
  }

  // Pair-dependency accumulation (Brandes) over the state DAG: adds
  // sigma_{source,w}(v) / sigma_{source,w} to credit[v] for every target
  // w with target_filter(w) true and every interior vertex v. Minimum-hop
  // time-respecting paths are vertex-simple, so summing over a vertex's
  // states counts each path once. Endpoint states of one vertex share the
  // pair's unit weight proportionally to their path counts.
  void accumulate_dependencies(int source,
                               const std::function<bool(int)>& target_filter,
                               std::vector<double>& credit) const {
    const int n = tg_.vertex_count();
    std::vector<int> vdist;
    std::vector<double> vsigma;
    vertex_summary(vdist, vsigma);

    std::vector<double> endpoint_weight(dist_.size(), 0.0);
    for (int w = 0; w < n; ++w) {
      if (w == source || vdist[static_cast<std::size_t>(w)] < 0) continue;
      if (!target_filter(w)) continue;
      for (int t = t_from_; t <= t_to_; ++t) {
        const int s = state_of(w, t);
        if (dist_[static_cast<std::size_t>(s)] ==
            vdist[static_cast<std::size_t>(w)])
          endpoint_weight[static_cast<std::size_t>(s)] =
              1.0 / vsigma[static_cast<std::size_t>(w)];
      }
    }

    // suffix[x] = sum over reachable endpoint states e of
    // (#min paths x->e) * endpoint_weight[e]; filled in reverse BFS order.
    std::vector<double> suffix(dist_.size(), 0.0);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const int a = *it;
      const int v = vertex_of(a);
      const int d = dist_[static_cast<std::size_t>(a)];
      double acc = 0.0;
      for (int t = time_of(a); t <= t_to_; ++t) {
        for (int u : tg_.snapshot(t).neighbors(v)) {
          const int b = state_of(u, t);
          if (dist_[static_cast<std::size_t>(b)] == d + 1)
            acc += endpoint_weight[static_cast<std::size_t>(b)] +
                   suffix[static_cast<std::size_t>(b)];
        }
      }
      suffix[static_cast<std::size_t>(a)] = acc;
    }

    for (const int a : order_) {
      const int v = vertex_of(a);
      if (v == source) continue;
      credit[static_cast<std::size_t>(v)] +=
          sigma_[static_cast<std::size_t>(a)] *
          suffix[static_cast<std::size_t>(a)];
    }
  }

  // Marks, for every vertex v, whether some counted shortest path from the
  // current source to target w passes through v as an interior vertex.
  void through_flags(int source, int target,
                     std::vector<char>& through) const {
    const int n = tg_.vertex_count();
    through.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> vdist;
    std::vector<double> vsigma;
    vertex_summary(vdist, vsigma);
    if (vdist[static_cast<std::size_t>(target)] < 0) return;

    std::vector<char> on_path(dist_.size(), 0);
    for (int t = t_from_; t <= t_to_; ++t) {
      const int s = state_of(target, t);
      if (dist_[static_cast<std::size_t>(s)] ==
          vdist[static_cast<std::size_t>(target)])
        on_path[static_cast<std::size_t>(s)] = 1;
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const int a = *it;
      if (on_path[static_cast<std::size_t>(a)]) continue;
      const int v = vertex_of(a);
      const int d = dist_[static_cast<std::size_t>(a)];
      for (int t = time_of(a); t <= t_to_ && !on_path[static_cast<std::size_t>(a)];
           ++t)
        for (int u : tg_.snapshot(t).neighbors(v)) {
          const int b = state_of(u, t);
          if (dist_[static_cast<std::size_t>(b)] == d + 1 &&
              on_path[static_cast<std::size_t>(b)]) {
            on_path[static_cast<std::size_t>(a)] = 1;
            break;
          }
        }
    }
    for (const int a : order_) {
      const int v = vertex_of(a);
      if (v == source || v == target) continue;
      if (on_path[static_cast<std::size_t>(a)])
        through[static_cast<std::size_t>(v)] = 1;
    }
  }

 private:
  const TemporalGraph& tg_;
  int t_from_, t_to_, span_;
  std::vector<int> dist_;
  std::vector<double> sigma_;
  std::vector<int> order_;  // BFS pop order, non-decreasing dist
};

}  // namespace detail

inline TemporalPathSummary temporal_bfs(const TemporalGraph& tg, int source,
                                        int t_from, int t_to) {
  tg.check_interval(t_from, t_to);
  if (source < 0 || source >= tg.vertex_count())
    throw BoundsError("temporal_bfs: source out of range");
  detail::TemporalBfs bfs(tg, t_from, t_to);
  bfs.run(source);
  TemporalPathSummary out;
  out.source = source;
  out.t_from = t_from;
  out.t_to = t_to;
  bfs.vertex_summary(out.dist, out.sigma);
  return out;
}

// ---- aggregated (static) measures ----

inline std::vector<int> static_degree(const AggregatedGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v)
    deg[static_cast<std::size_t>(v)] =
        static_cast<int>(g.neighbors(v).size());
  return deg;
}

namespace detail {

// Plain BFS on a static graph; dist -1 when unreachable.
inline void static_bfs(const AggregatedGraph& g, int source,
                       std::vector<int>& dist, std::vector<double>& sigma,
                       std::vector<int>& order) {
  const int n = g.vertex_count();
  dist.assign(static_cast<std::size_t>(n), -1);
  sigma.assign(static_cast<std::size_t>(n), 0.0);
  order.clear();
  dist[static_cast<std::size_t>(source)] = 0;
  sigma[static_cast<std::size_t>(source)] = 1.0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int u : g.neighbors(v)) {
      auto& du = dist[static_cast<std::size_t>(u)];
      if (du < 0) {
        du = dist[static_cast<std::size_t>(v)] + 1;
        sigma[static_cast<std::size_t>(u)] = sigma[static_cast<std::size_t>(v)];
        queue.push_back(u);
      } else if (du == dist[static_cast<std::size_t>(v)] + 1) {
        sigma[static_cast<std::size_t>(u)] +=
            sigma[static_cast<std::size_t>(v)];
      }
    }
  }
}

}  // namespace detail

// Harmonic closeness: C(v) = sum_u 1/d(v,u) with 1/inf = 0. The harmonic
// form mirrors the temporal definition so the two models are comparable.
inline std::vector<double> static_closeness_raw(const AggregatedGraph& g) {
  const int n = g.vertex_count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  std::vector<int> dist, order;
  std::vector<double> sigma;
  for (int v = 0; v < n; ++v) {
    detail::static_bfs(g, v, dist, sigma, order);
    double c = 0.0;
    for (int u = 0; u < n; ++u)
      if (u != v && dist[static_cast<std::size_t>(u)] > 0)
        c += 1.0 / dist[static_cast<std::size_t>(u)];
    out[static_cast<std::size_t>(v)] = c;
  }
  return out;
}

// Brandes betweenness with each unordered pair counted once.
inline std::vector<double> static_betweenness_raw(const AggregatedGraph& g) {
  const int n = g.vertex_count();
  std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
  std::vector<int> dist, order;
  std::vector<double> sigma, delta;
  for (int s = 0; s < n; ++s) {
    detail::static_bfs(g, s, dist, sigma, order);
    delta.assign(static_cast<std::size_t>(n), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : g.neighbors(w)) {
        if (dist[static_cast<std::size_t>(v)] ==
            dist[static_cast<std::size_t>(w)] - 1) {
          delta[static_cast<std::size_t>(v)] +=
              sigma[static_cast<std::size_t>(v)] /
              sigma[static_cast<std::size_t>(w)] *
              (1.0 + delta[static_cast<std::size_t>(w)]);
        }
      }
      if (w != s)
        bc[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
  }
  // Every ordered pair was visited; halve for the unordered convention.
  for (auto& b : bc) b *= 0.5;
  return bc;
}

// ---- temporal measures ----

inline std::vector<int> temporal_degree(const TemporalGraph& tg, int t_x,
                                        int t_y) {
  tg.check_interval(t_x, t_y);
  std::vector<int> deg(static_cast<std::size_t>(tg.vertex_count()), 0);
  for (int t = t_x; t <= t_y; ++t)
    for (int v = 0; v < tg.vertex_count(); ++v)
      deg[static_cast<std::size_t>(v)] +=
          static_cast<int>(tg.snapshot(t).neighbors(v).size());
  return deg;
}

inline std::vector<double> temporal_closeness_raw(const TemporalGraph& tg,
                                                  int t_x, int t_y,
                                                  int threads = 1) {
  tg.check_interval(t_x, t_y);
  const int n = tg.vertex_count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = t_x; i <= t_y; ++i) {
    std::vector<double> sub(static_cast<std::size_t>(n), 0.0);
    detail::for_each_chunk(n, threads, [&](int lo, int hi) {
      detail::TemporalBfs bfs(tg, i, t_y);
      std::vector<int> dist;
      std::vector<double> sigma;
      for (int v = lo; v < hi; ++v) {
        bfs.run(v);
        bfs.vertex_summary(dist, sigma);
        double c = 0.0;
        for (int u = 0; u < n; ++u)
          if (u != v && dist[static_cast<std::size_t>(u)] > 0)
            c += 1.0 / dist[static_cast<std::size_t>(u)];
        sub[static_cast<std::size_t>(v)] = c;
      }
    });
    for (int v = 0; v < n; ++v)
      out[static_cast<std::size_t>(v)] += sub[static_cast<std::size_t>(v)];
  }
  return out;
}

// Raw temporal betweenness: for each sub-interval [i, t_y] and each
// unordered vertex pair {u, w} (paths taken from the lower-indexed vertex
// to the higher one), adds the fraction of minimum-hop time-respecting
// paths passing through v as an interior vertex.
inline std::vector<double> temporal_betweenness_raw(const TemporalGraph& tg,
                                                    int t_x, int t_y,
                                                    int threads = 1) {
  tg.check_interval(t_x, t_y);
  const int n = tg.vertex_count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = t_x; i <= t_y; ++i) {
    const int chunks = (n + detail::kSourceChunk - 1) / detail::kSourceChunk;
    std::vector<std::vector<double>> partial(
        static_cast<std::size_t>(chunks),
        std::vector<double>(static_cast<std::size_t>(n), 0.0));
    detail::for_each_chunk(n, threads, [&](int lo, int hi) {
      auto& credit = partial[static_cast<std::size_t>(lo / detail::kSourceChunk)];
      detail::TemporalBfs bfs(tg, i, t_y);
      for (int s = lo; s < hi; ++s) {
        bfs.run(s);
        bfs.accumulate_dependencies(s, [s](int w) { return w > s; }, credit);
      }
    });
    // Fixed chunk order keeps the reduction deterministic.
    for (const auto& credit : partial)
      for (int v = 0; v < n; ++v)
        out[static_cast<std::size_t>(v)] += credit[static_cast<std::size_t>(v)];
  }
  return out;
}

// Per-vertex normalization inputs for the fidelity mode: sv counts the
// distinct path sources routed through v, dv the distinct destinations.
struct PerVertexFactors {
  std::vector<int> sv;
  std::vector<int> dv;
};

inline PerVertexFactors betweenness_per_vertex_factors(const TemporalGraph& tg,
                                                       int t_x, int t_y) {
  tg.check_interval(t_x, t_y);
  const int n = tg.vertex_count();
  std::vector<std::set<int>> sources(static_cast<std::size_t>(n));
  std::vector<std::set<int>> dests(static_cast<std::size_t>(n));
  std::vector<char> through;
  for (int i = t_x; i <= t_y; ++i) {
    detail::TemporalBfs bfs(tg, i, t_y);
    for (int s = 0; s < n; ++s) {
      bfs.run(s);
      for (int w = s + 1; w < n; ++w) {
        bfs.through_flags(s, w, through);
        for (int v = 0; v < n; ++v) {
          if (through[static_cast<std::size_t>(v)]) {
            sources[static_cast<std::size_t>(v)].insert(s);
            dests[static_cast<std::size_t>(v)].insert(w);
          }
        }
      }
    }
  }
  PerVertexFactors f;
  f.sv.resize(static_cast<std::size_t>(n));
  f.dv.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    f.sv[static_cast<std::size_t>(v)] =
        static_cast<int>(sources[static_cast<std::size_t>(v)].size());
    f.dv[static_cast<std::size_t>(v)] =
        static_cast<int>(dests[static_cast<std::size_t>(v)].size());
  }
  return f;
}

// ---- reports ----

struct CentralityReport {
  Model model = Model::aggregated;
  int t_x = 1, t_y = 1;
  NormalizationSpec normalization;
  std::vector<double> degree_raw, degree_norm;
  std::vector<double> closeness_raw, closeness_norm;
  std::vector<double> betweenness_raw, betweenness_norm;

  const std::vector<double>& raw(Measure m) const {
    switch (m) {
      case Measure::degree: return degree_raw;
      case Measure::closeness: return closeness_raw;
      default: return betweenness_raw;
    }
  }
  const std::vector<double>& normalized(Measure m) const {
    switch (m) {
      case Measure::degree: return degree_norm;
      case Measure::closeness: return closeness_norm;
      default: return betweenness_norm;
    }
  }
};

namespace detail {

inline std::vector<double> scale(const std::vector<double>& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = factor > 0 ? v[i] / factor : 0.0;
  return out;
}

inline std::vector<double> to_double(const std::vector<int>& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace detail

inline CentralityReport aggregated_centrality(const AggregatedGraph& g) {
  CentralityReport r;
  r.model = Model::aggregated;
  r.t_x = g.source_interval_lo();
  r.t_y = g.source_interval_hi();
  const int n = g.vertex_count();
  r.normalization.n = n;
  r.normalization.m = 1;
  r.degree_raw = detail::to_double(static_degree(g));
  r.degree_norm = r.degree_raw;  // degree is reported raw
  r.closeness_raw = static_closeness_raw(g);
  r.closeness_norm = detail::scale(r.closeness_raw, n - 1);
  r.betweenness_raw = static_betweenness_raw(g);
  r.betweenness_norm =
      detail::scale(r.betweenness_raw, (n - 1.0) * (n - 2.0) / 2.0);
  return r;
}

inline CentralityReport temporal_centrality(
    const TemporalGraph& tg, int t_x, int t_y,
    NormalizationSpec::BetweennessMode mode =
        NormalizationSpec::BetweennessMode::global,
    int threads = 1) {
  tg.check_interval(t_x, t_y);
  CentralityReport r;
  r.model = Model::temporal;
  r.t_x = t_x;
  r.t_y = t_y;
  const int n = tg.vertex_count();
  const int m = t_y - t_x + 1;
  r.normalization.n = n;
  r.normalization.m = m;
  r.normalization.betweenness_mode = mode;
  r.degree_raw = detail::to_double(temporal_degree(tg, t_x, t_y));
  r.degree_norm = r.degree_raw;
  r.closeness_raw = temporal_closeness_raw(tg, t_x, t_y, threads);
  r.closeness_norm = detail::scale(r.closeness_raw, (n - 1.0) * m);
  r.betweenness_raw = temporal_betweenness_raw(tg, t_x, t_y, threads);
  if (mode == NormalizationSpec::BetweennessMode::global) {
    r.betweenness_norm =
        detail::scale(r.betweenness_raw, (n - 1.0) * (n - 2.0) * m);
  } else {
    const auto f = betweenness_per_vertex_factors(tg, t_x, t_y);
    r.betweenness_norm.resize(r.betweenness_raw.size());
    for (int v = 0; v < n; ++v) {
      const double factor = static_cast<double>(f.sv[static_cast<std::size_t>(v)]) *
                            f.dv[static_cast<std::size_t>(v)] * m;
      r.betweenness_norm[static_cast<std::size_t>(v)] =
          factor > 0 ? r.betweenness_raw[static_cast<std::size_t>(v)] / factor
                     : 0.0;
    }
  }
  return r;
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_CENTRALITY_HPP_
