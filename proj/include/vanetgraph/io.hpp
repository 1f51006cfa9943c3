#ifndef VANETGRAPH_IO_HPP_
#define VANETGRAPH_IO_HPP_

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vanetgraph/centrality.hpp"
#include "vanetgraph/graph.hpp"
#include "vanetgraph/placement.hpp"
#include "vanetgraph/stats.hpp"
#include "vanetgraph/trace.hpp"

namespace vanetgraph {

// Fixed numeric formatting so repeated runs emit identical bytes.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "vehicle_id,t,x,y\n";
  for (const auto& r : trace.records())
    out << trace.vehicle_ids()[static_cast<std::size_t>(r.vehicle)] << ','
        << format_double(r.t) << ',' << format_double(r.x) << ','
        << format_double(r.y) << '\n';
}

inline nlohmann::json counts_json(const GraphCounts& c) {
  return {{"vertices", c.vertex_count},
          {"aggregated_edges", c.aggregated_edge_count},
          {"temporal_edges", c.temporal_edge_count},
          {"edges_per_snapshot", c.edges_per_snapshot},
          {"active_vertices_per_snapshot", c.active_per_snapshot}};
}

// CSV `vertex,vehicle_id,measure,model,raw,normalized`.
inline void write_centrality_csv(std::ostream& out, const CentralityReport& r,
                                 const std::vector<std::string>& labels) {
  out << "vertex,vehicle_id,measure,model,raw,normalized\n";
  for (Measure m :
       {Measure::degree, Measure::closeness, Measure::betweenness}) {
    const auto& raw = r.raw(m);
    const auto& norm = r.normalized(m);
    for (std::size_t v = 0; v < raw.size(); ++v) {
      out << v << ',' << (v < labels.size() ? labels[v] : std::to_string(v))
          << ',' << to_string(m) << ',' << to_string(r.model) << ','
          << format_double(raw[v]) << ',' << format_double(norm[v]) << '\n';
    }
  }
}

inline nlohmann::json centrality_metadata(const CentralityReport& r,
                                          std::uint64_t hash) {
  return {{"model", to_string(r.model)},
          {"interval", {r.t_x, r.t_y}},
          {"normalization",
           {{"closeness_factor", (r.normalization.n - 1.0) * r.normalization.m},
            {"betweenness_mode",
             r.normalization.betweenness_mode ==
                     NormalizationSpec::BetweennessMode::global
                 ? "global"
                 : "per-vertex"},
            {"m", r.normalization.m}}},
          {"graph_hash", hash}};
}

// CSV `scenario,measure,D,delta,reject,h,h2,pearson`.
inline void write_compare_csv(std::ostream& out, const std::string& scenario,
                              const std::vector<ComparisonResult>& results) {
  out << "scenario,measure,D,delta,reject,h,h2,pearson\n";
  for (const auto& r : results)
    out << scenario << ',' << to_string(r.measure) << ','
        << format_double(r.ks.d) << ',' << format_double(r.ks.delta) << ','
        << (r.ks.reject ? "true" : "false") << ',' << format_double(r.hd.h)
        << ',' << format_double(r.hd.h2) << ',' << format_double(r.pearson)
        << '\n';
}

inline nlohmann::json compare_json(const std::string& scenario,
                                   const std::vector<ComparisonResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results)
    arr.push_back({{"measure", to_string(r.measure)},
                   {"D", r.ks.d},
                   {"delta", r.ks.delta},
                   {"alpha", r.ks.alpha},
                   {"c_alpha", r.ks.c_alpha},
                   {"reject", r.ks.reject},
                   {"hellinger", r.hd.h},
                   {"hellinger_squared", r.hd.h2},
                   {"bins", r.hd.bins},
                   {"pearson", r.pearson}});
  return {{"scenario", scenario}, {"results", arr}};
}

// CSV `vertex,x_aggregated,y_temporal`.
inline void write_scatter_csv(std::ostream& out, const ScatterData& s) {
  out << "vertex,x_aggregated,y_temporal\n";
  for (const auto& row : s.rows)
    out << row.vertex << ',' << format_double(row.aggregated) << ','
        << format_double(row.temporal) << '\n';
}

inline nlohmann::json placement_json(const Placement& p, int k,
                                     const std::string& model,
                                     double window) {
  // Coarse t_j histogram: ten equal bins over [0, tau].
  std::vector<int> hist(10, 0);
  for (double t : p.covered_time) {
    int b = p.tau > 0 ? static_cast<int>(t / p.tau * 10.0) : 0;
    if (b > 9) b = 9;
    ++hist[static_cast<std::size_t>(b)];
  }
  return {{"selected", p.selected},
          {"covered_count", p.covered_count},
          {"vehicles", p.covered_time.size()},
          {"coverage_percent", 100.0 * p.coverage_fraction()},
          {"total_covered_time", p.total_covered_time},
          {"covered_time_histogram", hist},
          {"parameters",
           {{"k", k}, {"tau", p.tau}, {"model", model}, {"window", window}}}};
}

// Sparse triplet CSV `site_id,vehicle_id,seconds`, zero entries omitted.
inline void write_contact_matrix_csv(std::ostream& out, const ContactMatrix& m,
                                     const SiteSet& sites,
                                     const std::vector<std::string>& vehicles) {
  out << "site_id,vehicle_id,seconds\n";
  for (int i = 0; i < m.site_count; ++i)
    for (int j = 0; j < m.vehicle_count; ++j)
      if (m.at(i, j) > 0)
        out << sites.sites[static_cast<std::size_t>(i)].id << ','
            << vehicles[static_cast<std::size_t>(j)] << ','
            << format_double(m.at(i, j)) << '\n';
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_IO_HPP_
