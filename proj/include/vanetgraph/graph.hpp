#ifndef VANETGRAPH_GRAPH_HPP_
#define VANETGRAPH_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vanetgraph/error.hpp"

namespace vanetgraph {

// Undirected edge stored canonically as (min, max).
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

namespace detail {

inline std::vector<Edge> canonicalize_edges(int n, std::vector<Edge> edges,
                                            const char* what) {
  for (auto& e : edges) {
    if (e.first == e.second) throw ParamError(std::string(what) + ": self-loop");
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first < 0 || e.second >= n)
      throw BoundsError(std::string(what) + ": endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline std::vector<std::vector<int>> build_adjacency(
    int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

}  // namespace detail

// One static proximity graph G^t of a single time window.
class SnapshotGraph {
 public:
  SnapshotGraph(int n, int t_index, std::vector<Edge> edges)
      : n_(n),
        t_index_(t_index),
        edges_(detail::canonicalize_edges(n, std::move(edges), "snapshot")),
        adj_(detail::build_adjacency(n, edges_)) {
    if (n < 0) throw ParamError("snapshot: negative vertex count");
  }

  int vertex_count() const { return n_; }
  int t_index() const { return t_index_; }  // 1-based snapshot ordinal
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<int>& neighbors(int v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  bool has_edge(int u, int v) const {
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
  }

 private:
  int n_;
  int t_index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// Ordered sequence of snapshot graphs over one shared vertex set.
// Snapshot indices are 1-based everywhere in the public interface.
class TemporalGraph {
 public:
  TemporalGraph(int n, const std::vector<std::vector<Edge>>& snapshot_edges,
                std::vector<std::string> labels = {})
      : n_(n), labels_(std::move(labels)) {
    if (snapshot_edges.empty())
      throw ParamError("temporal graph: needs at least one snapshot");
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n))
      throw ParamError("temporal graph: label count != vertex count");
    snapshots_.reserve(snapshot_edges.size());
    int t = 1;
    for (const auto& es : snapshot_edges) snapshots_.emplace_back(n, t++, es);
  }

  int vertex_count() const { return n_; }
  int snapshot_count() const { return static_cast<int>(snapshots_.size()); }

  const SnapshotGraph& snapshot(int t) const {
    check_index(t);
    return snapshots_[static_cast<std::size_t>(t - 1)];
  }

  // |E| = sum of per-snapshot edge counts.
  std::size_t temporal_edge_count() const {
    std::size_t total = 0;
    for (const auto& s : snapshots_) total += s.edge_count();
    return total;
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int v) const {
    return labels_[static_cast<std::size_t>(v)];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  void check_interval(int t_x, int t_y) const {
    if (t_x < 1 || t_y > snapshot_count() || t_x > t_y)
      throw BoundsError("interval [" + std::to_string(t_x) + "," +
                        std::to_string(t_y) + "] invalid for T=" +
                        std::to_string(snapshot_count()));
  }

 private:
  void check_index(int t) const {
    if (t < 1 || t > snapshot_count())
      throw BoundsError("snapshot index " + std::to_string(t) +
                        " out of range 1.." + std::to_string(snapshot_count()));
  }

  int n_;
  std::vector<SnapshotGraph> snapshots_;
  std::vector<std::string> labels_;
};

// Union-of-snapshots static graph over the interval [t_lo, t_hi].
class AggregatedGraph {
 public:
  AggregatedGraph(int n, std::vector<Edge> edges, int t_lo = 1, int t_hi = 1)
      : n_(n),
        t_lo_(t_lo),
        t_hi_(t_hi),
        edges_(detail::canonicalize_edges(n, std::move(edges), "aggregated")),
        adj_(detail::build_adjacency(n, edges_)) {}

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<int>& neighbors(int v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  bool has_edge(int u, int v) const {
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
  }
  int source_interval_lo() const { return t_lo_; }
  int source_interval_hi() const { return t_hi_; }

 private:
  int n_;
  int t_lo_, t_hi_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

inline AggregatedGraph aggregate(const TemporalGraph& tg, int t_x, int t_y) {
  tg.check_interval(t_x, t_y);
  std::vector<Edge> all;
  for (int t = t_x; t <= t_y; ++t) {
    const auto& es = tg.snapshot(t).edges();
    all.insert(all.end(), es.begin(), es.end());
  }
  return AggregatedGraph(tg.vertex_count(), std::move(all), t_x, t_y);
}

inline AggregatedGraph aggregate(const TemporalGraph& tg) {
  return aggregate(tg, 1, tg.snapshot_count());
}

struct GraphCounts {
  int vertex_count = 0;                       // |V|
  std::size_t aggregated_edge_count = 0;      // |E| of the union graph
  std::size_t temporal_edge_count = 0;        // sum over snapshots
  std::vector<std::size_t> edges_per_snapshot;
  std::vector<int> active_per_snapshot;       // non-isolated vertices
};

inline GraphCounts counts(const TemporalGraph& tg) {
  GraphCounts c;
  c.vertex_count = tg.vertex_count();
  const int T = tg.snapshot_count();
  c.edges_per_snapshot.reserve(static_cast<std::size_t>(T));
  c.active_per_snapshot.reserve(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    const auto& s = tg.snapshot(t);
    c.edges_per_snapshot.push_back(s.edge_count());
    c.temporal_edge_count += s.edge_count();
    int active = 0;
    for (int v = 0; v < tg.vertex_count(); ++v)
      if (!s.neighbors(v).empty()) ++active;
    c.active_per_snapshot.push_back(active);
  }
  c.aggregated_edge_count = aggregate(tg, 1, T).edge_count();
  return c;
}

// Line-oriented serialization: "T n" header then one "t u v" line per
// temporal edge (1-based t, 0-based vertices). An optional label block
// "labels" followed by n lines preserves vehicle ids.
inline void serialize(const TemporalGraph& tg, std::ostream& out) {
  out << tg.snapshot_count() << ' ' << tg.vertex_count() << '\n';
  for (int t = 1; t <= tg.snapshot_count(); ++t)
    for (const auto& [u, v] : tg.snapshot(t).edges())
      out << t << ' ' << u << ' ' << v << '\n';
  if (tg.has_labels()) {
    out << "labels\n";
    for (int v = 0; v < tg.vertex_count(); ++v) out << tg.label(v) << '\n';
  }
}

inline std::string serialize(const TemporalGraph& tg) {
  std::ostringstream os;
  serialize(tg, os);
  return os.str();
}

inline TemporalGraph parse_temporal_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty temporal graph stream");
  ++lineno;
  int T = 0, n = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> T >> n) || T < 1 || n < 0)
      throw ParseError("bad temporal graph header", lineno);
  }
  std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(T));
  std::vector<std::string> labels;
  bool in_labels = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (in_labels) {
      labels.push_back(line);
      continue;
    }
    if (line == "labels") {
      in_labels = true;
      continue;
    }
    std::istringstream es(line);
    int t = 0, u = 0, v = 0;
    if (!(es >> t >> u >> v)) throw ParseError("bad edge line", lineno);
    if (t < 1 || t > T) throw ParseError("snapshot index out of range", lineno);
    edges[static_cast<std::size_t>(t - 1)].push_back(make_edge(u, v));
  }
  if (in_labels && labels.size() != static_cast<std::size_t>(n))
    throw ParseError("label count != vertex count", lineno);
  return TemporalGraph(n, edges, std::move(labels));
}

inline TemporalGraph parse_temporal_graph(const std::string& text) {
  std::istringstream is(text);
  return parse_temporal_graph(is);
}

// FNV-1a over the canonical serialization; used to tag derived reports.
inline std::uint64_t graph_hash(const TemporalGraph& tg) {
  const std::string s = serialize(tg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_GRAPH_HPP_
