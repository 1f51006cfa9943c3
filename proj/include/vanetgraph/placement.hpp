#ifndef VANETGRAPH_PLACEMENT_HPP_
#define VANETGRAPH_PLACEMENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vanetgraph/centrality.hpp"
#include "vanetgraph/error.hpp"
#include "vanetgraph/trace.hpp"

namespace vanetgraph {

struct Site {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

// Candidate RSU locations (road intersections) with a V2I radius.
struct SiteSet {
  std::vector<Site> sites;
  double radius = 0.0;

  int site_count() const { return static_cast<int>(sites.size()); }

  int index_of(const std::string& id) const {
    for (int i = 0; i < site_count(); ++i)
      if (sites[static_cast<std::size_t>(i)].id == id) return i;
    throw ParamError("unknown site id '" + id + "'");
  }

  void validate() const {
    if (sites.empty()) throw ParamError("site set is empty");
    if (!(radius > 0)) throw ParamError("site radius must be > 0");
    std::set<std::string> seen;
    for (const auto& s : sites)
      if (!seen.insert(s.id).second)
        throw ParamError("duplicate site id '" + s.id + "'");
  }
};

// CSV `site_id,x,y` with one header line.
inline SiteSet load_sites(std::istream& in, double radius) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty sites input");
  ++lineno;
  SiteSet out;
  out.radius = radius;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = detail::split_csv_line(line);
    if (f.size() != 3)
      throw ParseError("expected 3 fields, got " + std::to_string(f.size()),
                       lineno);
    out.sites.push_back({f[0], detail::parse_number(f[1], lineno, "x"),
                         detail::parse_number(f[2], lineno, "y")});
  }
  out.validate();
  return out;
}

inline SiteSet load_sites(const std::string& text, double radius) {
  std::istringstream is(text);
  return load_sites(is, radius);
}

// Fallback site generator: a regular grid over the trace bounding box with
// the given spacing, ceil(W/s) * ceil(H/s) sites.
inline SiteSet grid_sites(const Trace& trace, double spacing, double radius) {
  if (!(spacing > 0)) throw ParamError("grid spacing must be > 0");
  double min_x = trace.records().front().x, max_x = min_x;
  double min_y = trace.records().front().y, max_y = min_y;
  for (const auto& r : trace.records()) {
    min_x = std::min(min_x, r.x);
    max_x = std::max(max_x, r.x);
    min_y = std::min(min_y, r.y);
    max_y = std::max(max_y, r.y);
  }
  const int cols = std::max(1, static_cast<int>(std::ceil((max_x - min_x) / spacing)));
  const int rows = std::max(1, static_cast<int>(std::ceil((max_y - min_y) / spacing)));
  SiteSet out;
  out.radius = radius;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      out.sites.push_back({"g" + std::to_string(r) + "_" + std::to_string(c),
                           min_x + spacing * c + spacing / 2.0,
                           min_y + spacing * r + spacing / 2.0});
  out.validate();
  return out;
}

// Accumulated vehicle-site contact seconds, I x M.
struct ContactMatrix {
  Model model = Model::temporal;
  int site_count = 0;
  int vehicle_count = 0;
  double tau_unit = 0.0;  // snapshot duration, seconds
  double window = 0.0;    // aggregation window (aggregated model only)
  std::vector<double> entries;  // row-major, site-major

  double at(int site, int vehicle) const {
    return entries[static_cast<std::size_t>(site) *
                       static_cast<std::size_t>(vehicle_count) +
                   static_cast<std::size_t>(vehicle)];
  }
  double& at(int site, int vehicle) {
    return entries[static_cast<std::size_t>(site) *
                       static_cast<std::size_t>(vehicle_count) +
                   static_cast<std::size_t>(vehicle)];
  }
};

namespace detail {

// Per snapshot, per site: vehicles within the V2I radius (closed
// threshold, same convention as V2V).
inline std::vector<std::vector<std::vector<int>>> site_contacts(
    const Trace& trace, const SiteSet& sites) {
  sites.validate();
  const auto pos = trace.window_positions();
  const double r2 = sites.radius * sites.radius;
  std::vector<std::vector<std::vector<int>>> contacts(
      pos.size(), std::vector<std::vector<int>>(
                      static_cast<std::size_t>(sites.site_count())));
  for (std::size_t w = 0; w < pos.size(); ++w) {
    for (int v = 0; v < trace.vehicle_count(); ++v) {
      const auto& p = pos[w][static_cast<std::size_t>(v)];
      if (!p) continue;
      for (int i = 0; i < sites.site_count(); ++i) {
        const auto& s = sites.sites[static_cast<std::size_t>(i)];
        const double dx = p->x - s.x, dy = p->y - s.y;
        if (dx * dx + dy * dy <= r2)
          contacts[w][static_cast<std::size_t>(i)].push_back(v);
      }
    }
  }
  return contacts;
}

}  // namespace detail

// Temporal contact matrix: each snapshot a vehicle spends within radius of
// a site contributes one snapshot duration.
inline ContactMatrix contact_matrix_temporal(const Trace& trace,
                                             const SiteSet& sites) {
  const auto contacts = detail::site_contacts(trace, sites);
  ContactMatrix m;
  m.model = Model::temporal;
  m.site_count = sites.site_count();
  m.vehicle_count = trace.vehicle_count();
  m.tau_unit = trace.spec().interval;
  m.entries.assign(static_cast<std::size_t>(m.site_count) *
                       static_cast<std::size_t>(m.vehicle_count),
                   0.0);
  for (const auto& snap : contacts)
    for (int i = 0; i < m.site_count; ++i)
      for (int v : snap[static_cast<std::size_t>(i)])
        m.at(i, v) += m.tau_unit;
  return m;
}

// Aggregated contact matrix: within each aggregation window, presence
// collapses, so a vehicle-site pair contributes one snapshot duration per
// window with at least one contact.
inline ContactMatrix contact_matrix_aggregated(const Trace& trace,
                                               const SiteSet& sites,
                                               double window) {
  const double delta = trace.spec().interval;
  const double ratio = window / delta;
  const int snaps_per_window = static_cast<int>(std::lround(ratio));
  if (!(window > 0) || snaps_per_window < 1 ||
      std::abs(ratio - snaps_per_window) > 1e-9)
    throw ParamError("aggregation window must be a positive multiple of the "
                     "snapshot interval");
  const auto contacts = detail::site_contacts(trace, sites);
  ContactMatrix m;
  m.model = Model::aggregated;
  m.site_count = sites.site_count();
  m.vehicle_count = trace.vehicle_count();
  m.tau_unit = delta;
  m.window = window;
  m.entries.assign(static_cast<std::size_t>(m.site_count) *
                       static_cast<std::size_t>(m.vehicle_count),
                   0.0);
  std::vector<char> seen(static_cast<std::size_t>(m.site_count) *
                         static_cast<std::size_t>(m.vehicle_count));
  for (std::size_t w0 = 0; w0 < contacts.size();
       w0 += static_cast<std::size_t>(snaps_per_window)) {
    std::fill(seen.begin(), seen.end(), 0);
    const std::size_t w1 =
        std::min(contacts.size(), w0 + static_cast<std::size_t>(snaps_per_window));
    for (std::size_t w = w0; w < w1; ++w)
      for (int i = 0; i < m.site_count; ++i)
        for (int v : contacts[w][static_cast<std::size_t>(i)])
          seen[static_cast<std::size_t>(i) *
                   static_cast<std::size_t>(m.vehicle_count) +
               static_cast<std::size_t>(v)] = 1;
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (seen[k]) m.entries[k] += delta;
  }
  return m;
}

// Selected sites plus the coverage accounting of Alg. MCTTP-g.
struct Placement {
  std::vector<std::string> selected;        // site ids in pick order
  std::vector<double> covered_time;         // t_j, capped at tau
  int covered_count = 0;                    // vehicles with t_j >= tau
  double total_covered_time = 0.0;
  double tau = 0.0;

  double coverage_fraction() const {
    return covered_time.empty()
               ? 0.0
               : static_cast<double>(covered_count) /
                     static_cast<double>(covered_time.size());
  }
};

namespace detail {

inline void finish_placement(Placement& p, double tau) {
  p.tau = tau;
  p.covered_count = 0;
  p.total_covered_time = 0.0;
  for (double t : p.covered_time) {
    p.total_covered_time += t;
    if (t >= tau) ++p.covered_count;
  }
}

}  // namespace detail

// Greedy MCTTP: repeatedly pick the site with the largest clamped marginal
// coverage gain W_i = sum_j min(tau - t_j, T_ij), ties broken by lowest
// site id. Stops after k picks, when candidates run out, or when no site
// adds coverage.
inline Placement mcttp_greedy(const ContactMatrix& cm, const SiteSet& sites,
                              int k, double tau) {
  if (k < 1) throw ParamError("mcttp: k must be >= 1");
  if (!(tau > 0)) throw ParamError("mcttp: tau must be > 0");
  if (sites.site_count() != cm.site_count)
    throw ParamError("mcttp: site set does not match contact matrix");
  Placement p;
  p.covered_time.assign(static_cast<std::size_t>(cm.vehicle_count), 0.0);
  std::vector<char> used(static_cast<std::size_t>(cm.site_count), 0);
  for (int pick = 0; pick < k; ++pick) {
    int best = -1;
    double best_gain = 0.0;
    for (int i = 0; i < cm.site_count; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      double gain = 0.0;
      for (int j = 0; j < cm.vehicle_count; ++j) {
        const double need = tau - p.covered_time[static_cast<std::size_t>(j)];
        if (need <= 0.0) continue;
        gain += std::min(need, cm.at(i, j));
      }
      const bool better =
          best < 0 || gain > best_gain ||
          (gain == best_gain &&
           sites.sites[static_cast<std::size_t>(i)].id <
               sites.sites[static_cast<std::size_t>(best)].id);
      if (better && gain > 0.0) {
        best = i;
        best_gain = gain;
      }
    }
    if (best < 0) break;
    used[static_cast<std::size_t>(best)] = 1;
    p.selected.push_back(sites.sites[static_cast<std::size_t>(best)].id);
    for (int j = 0; j < cm.vehicle_count; ++j)
      p.covered_time[static_cast<std::size_t>(j)] =
          std::min(tau, p.covered_time[static_cast<std::size_t>(j)] +
                            cm.at(best, j));
  }
  detail::finish_placement(p, tau);
  return p;
}

// Per-site centrality score: every vehicle-snapshot within the site radius
// contributes that vehicle's centrality; the score is the membership mean.
inline std::vector<double> site_scores(const Trace& trace, const SiteSet& sites,
                                       const std::vector<double>& centrality) {
  if (centrality.size() != static_cast<std::size_t>(trace.vehicle_count()))
    throw ParamError("site_scores: centrality vector does not match trace");
  const auto contacts = detail::site_contacts(trace, sites);
  std::vector<double> sum(static_cast<std::size_t>(sites.site_count()), 0.0);
  std::vector<std::size_t> members(static_cast<std::size_t>(sites.site_count()),
                                   0);
  for (const auto& snap : contacts)
    for (int i = 0; i < sites.site_count(); ++i)
      for (int v : snap[static_cast<std::size_t>(i)]) {
        sum[static_cast<std::size_t>(i)] +=
            centrality[static_cast<std::size_t>(v)];
        ++members[static_cast<std::size_t>(i)];
      }
  std::vector<double> score(static_cast<std::size_t>(sites.site_count()), 0.0);
  for (int i = 0; i < sites.site_count(); ++i)
    if (members[static_cast<std::size_t>(i)] > 0)
      score[static_cast<std::size_t>(i)] =
          sum[static_cast<std::size_t>(i)] /
          static_cast<double>(members[static_cast<std::size_t>(i)]);
  return score;
}

// Centrality-ranked placement skeleton: top-k sites by score, ties broken
// by ascending site id. Coverage fields are filled by evaluate_coverage.
inline Placement ranked_placement(const SiteSet& sites,
                                  const std::vector<double>& scores, int k) {
  if (k < 1) throw ParamError("ranked placement: k must be >= 1");
  if (scores.size() != static_cast<std::size_t>(sites.site_count()))
    throw ParamError("ranked placement: score vector does not match sites");
  std::vector<int> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[static_cast<std::size_t>(a)] !=
        scores[static_cast<std::size_t>(b)])
      return scores[static_cast<std::size_t>(a)] >
             scores[static_cast<std::size_t>(b)];
    return sites.sites[static_cast<std::size_t>(a)].id <
           sites.sites[static_cast<std::size_t>(b)].id;
  });
  Placement p;
  const int take = std::min(k, sites.site_count());
  for (int i = 0; i < take; ++i)
    p.selected.push_back(
        sites.sites[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
            .id);
  return p;
}

// Replays the trace against a selected site subset, accumulating each
// vehicle's contact time over every selected site (fragmented contacts
// sum), capped at tau.
inline Placement evaluate_coverage(const Trace& trace, const SiteSet& sites,
                                   const std::vector<std::string>& selected,
                                   double tau) {
  if (!(tau > 0)) throw ParamError("evaluate: tau must be > 0");
  std::vector<int> sel;
  sel.reserve(selected.size());
  for (const auto& id : selected) sel.push_back(sites.index_of(id));
  const auto contacts = detail::site_contacts(trace, sites);
  Placement p;
  p.selected = selected;
  p.covered_time.assign(static_cast<std::size_t>(trace.vehicle_count()), 0.0);
  const double delta = trace.spec().interval;
  for (const auto& snap : contacts)
    for (int i : sel)
      for (int v : snap[static_cast<std::size_t>(i)])
        p.covered_time[static_cast<std::size_t>(v)] = std::min(
            tau, p.covered_time[static_cast<std::size_t>(v)] + delta);
  detail::finish_placement(p, tau);
  return p;
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_PLACEMENT_HPP_
