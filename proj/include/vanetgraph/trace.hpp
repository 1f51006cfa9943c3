#ifndef VANETGRAPH_TRACE_HPP_
#define VANETGRAPH_TRACE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vanetgraph/error.hpp"
#include "vanetgraph/graph.hpp"

namespace vanetgraph {

// One position sample of one vehicle.
struct TraceRecord {
  int vehicle = 0;    // dense id, 0..M-1
  double t = 0.0;     // seconds
  double x = 0.0;     // meters
  double y = 0.0;
};

// Windowing and proximity parameters applied to a trace.
struct SnapshotSpec {
  double t_start = 0.0;
  double t_end = 0.0;
  double interval = 0.0;  // window length, seconds
  double radius = 0.0;    // V2V communication radius, meters

  void validate() const {
    if (!(t_end > t_start)) throw ParamError("snapshot spec: t_end <= t_start");
    if (!(interval > 0)) throw ParamError("snapshot spec: interval <= 0");
    if (!(radius > 0)) throw ParamError("snapshot spec: radius <= 0");
  }

  int snapshot_count() const {
    return static_cast<int>(std::ceil((t_end - t_start) / interval));
  }

  // Window index for a timestamp, 0-based. Windows are half-open
  // [t_start + k*interval, t_start + (k+1)*interval).
  int window_of(double t) const {
    int w = static_cast<int>(std::floor((t - t_start) / interval));
    if (w >= snapshot_count()) w = snapshot_count() - 1;
    return w;
  }
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

// Immutable, validated mobility trace. Records are sorted by
// (vehicle, t) with duplicate timestamps already collapsed.
class Trace {
 public:
  Trace(std::vector<TraceRecord> records, SnapshotSpec spec,
        std::vector<std::string> vehicle_ids, std::size_t dropped = 0)
      : records_(std::move(records)),
        spec_(spec),
        vehicle_ids_(std::move(vehicle_ids)),
        dropped_(dropped) {
    spec_.validate();
    if (records_.empty()) throw ParseError("empty trace: no records in window");
  }

  const std::vector<TraceRecord>& records() const { return records_; }
  const SnapshotSpec& spec() const { return spec_; }
  int vehicle_count() const { return static_cast<int>(vehicle_ids_.size()); }
  const std::vector<std::string>& vehicle_ids() const { return vehicle_ids_; }
  std::size_t dropped_records() const { return dropped_; }

  // Per-window vehicle position: the last sample whose timestamp falls in
  // the window; absent when the vehicle has no sample there.
  // Result is indexed [window][vehicle].
  std::vector<std::vector<std::optional<Position>>> window_positions() const {
    const int T = spec_.snapshot_count();
    const int M = vehicle_count();
    std::vector<std::vector<std::optional<Position>>> pos(
        static_cast<std::size_t>(T),
        std::vector<std::optional<Position>>(static_cast<std::size_t>(M)));
    // Records are sorted by (vehicle, t), so later samples within a window
    // overwrite earlier ones.
    for (const auto& r : records_) {
      const int w = spec_.window_of(r.t);
      pos[static_cast<std::size_t>(w)][static_cast<std::size_t>(r.vehicle)] =
          Position{r.x, r.y};
    }
    return pos;
  }

 private:
  std::vector<TraceRecord> records_;
  SnapshotSpec spec_;
  std::vector<std::string> vehicle_ids_;
  std::size_t dropped_;
};

namespace detail {

struct RawRecord {
  std::string vehicle_id;
  double t, x, y;
};

// Shared ingestion tail: window filtering, dense ids, sorting, de-dup.
inline Trace finish_trace(std::vector<RawRecord> raw, const SnapshotSpec& spec) {
  spec.validate();
  std::size_t dropped = 0;
  std::vector<RawRecord> kept;
  kept.reserve(raw.size());
  for (auto& r : raw) {
    if (!std::isfinite(r.t) || !std::isfinite(r.x) || !std::isfinite(r.y))
      throw ParseError("non-finite value in trace record");
    if (r.t < 0) throw ParseError("negative timestamp in trace record");
    if (r.t >= spec.t_start && r.t < spec.t_end)
      kept.push_back(std::move(r));
    else
      ++dropped;
  }
  if (kept.empty()) throw ParseError("empty trace: no records in window");

  std::map<std::string, int> index;
  for (const auto& r : kept) index.emplace(r.vehicle_id, 0);
  std::vector<std::string> ids;
  ids.reserve(index.size());
  for (auto& [id, dense] : index) {
    dense = static_cast<int>(ids.size());
    ids.push_back(id);
  }

  std::vector<TraceRecord> records;
  records.reserve(kept.size());
  for (const auto& r : kept)
    records.push_back({index.at(r.vehicle_id), r.t, r.x, r.y});
  std::stable_sort(records.begin(), records.end(),
                   [](const TraceRecord& a, const TraceRecord& b) {
                     return a.vehicle != b.vehicle ? a.vehicle < b.vehicle
                                                   : a.t < b.t;
                   });
  // Duplicate (vehicle, t) pairs keep the last occurrence.
  std::vector<TraceRecord> dedup;
  dedup.reserve(records.size());
  for (const auto& r : records) {
    if (!dedup.empty() && dedup.back().vehicle == r.vehicle &&
        dedup.back().t == r.t)
      dedup.back() = r;
    else
      dedup.push_back(r);
  }
  return Trace(std::move(dedup), spec, std::move(ids), dropped);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline double parse_number(const std::string& s, std::size_t lineno,
                           const char* field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("", 0);
    return v;
  } catch (...) {
    throw ParseError(std::string("bad ") + field + " value '" + s + "'",
                     lineno);
  }
}

}  // namespace detail

// CSV trace: one header line then `vehicle_id,t,x,y` rows.
inline Trace parse_csv(std::istream& in, const SnapshotSpec& spec) {
  spec.validate();
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty trace input");
  ++lineno;
  std::vector<detail::RawRecord> raw;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = detail::split_csv_line(line);
    if (f.size() != 4)
      throw ParseError("expected 4 fields, got " + std::to_string(f.size()),
                       lineno);
    if (f[0].empty()) throw ParseError("empty vehicle_id", lineno);
    raw.push_back({f[0], detail::parse_number(f[1], lineno, "t"),
                   detail::parse_number(f[2], lineno, "x"),
                   detail::parse_number(f[3], lineno, "y")});
  }
  if (raw.empty()) throw ParseError("empty trace: no data rows");
  return detail::finish_trace(std::move(raw), spec);
}

inline Trace parse_csv(const std::string& text, const SnapshotSpec& spec) {
  std::istringstream is(text);
  return parse_csv(is, spec);
}

namespace detail {

// Minimal pull parser for SUMO floating-car-data XML. Only <timestep> and
// <vehicle> elements are interpreted; anything else is skipped.
class FcdParser {
 public:
  explicit FcdParser(const std::string& text) : s_(text) {}

  std::vector<RawRecord> run() {
    std::vector<RawRecord> out;
    bool have_time = false;
    double time = 0.0;
    while (next_tag()) {
      if (closing_) {
        if (name_ == "timestep") have_time = false;
        continue;
      }
      if (name_ == "timestep") {
        time = parse_number(require_attr("time"), 0, "time");
        have_time = !self_closing_;
        if (self_closing_) continue;
      } else if (name_ == "vehicle") {
        if (!have_time)
          throw ParseError("vehicle element outside timestep at byte offset " +
                           std::to_string(tag_offset_));
        out.push_back({require_attr("id"),
                       time,
                       parse_number(require_attr("x"), 0, "x"),
                       parse_number(require_attr("y"), 0, "y")});
      }
    }
    return out;
  }

 private:
  bool next_tag() {
    attrs_.clear();
    name_.clear();
    closing_ = self_closing_ = false;
    std::size_t lt = s_.find('<', pos_);
    while (lt != std::string::npos &&
           (s_.compare(lt, 4, "<!--") == 0 || s_.compare(lt, 2, "<?") == 0 ||
            s_.compare(lt, 2, "<!") == 0)) {
      std::size_t end = s_.find('>', lt);
      if (end == std::string::npos)
        throw ParseError("unterminated declaration at byte offset " +
                         std::to_string(lt));
      lt = s_.find('<', end + 1);
    }
    if (lt == std::string::npos) return false;
    tag_offset_ = lt;
    std::size_t gt = s_.find('>', lt);
    if (gt == std::string::npos)
      throw ParseError("unterminated tag at byte offset " + std::to_string(lt));
    std::string body = s_.substr(lt + 1, gt - lt - 1);
    pos_ = gt + 1;
    if (!body.empty() && body.front() == '/') {
      closing_ = true;
      body.erase(body.begin());
    }
    if (!body.empty() && body.back() == '/') {
      self_closing_ = true;
      body.pop_back();
    }
    std::size_t i = 0;
    while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])))
      ++i;
    name_ = body.substr(0, i);
    if (name_.empty())
      throw ParseError("empty tag name at byte offset " +
                       std::to_string(tag_offset_));
    // attributes: key="value" or key='value'
    while (i < body.size()) {
      while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i])))
        ++i;
      if (i >= body.size()) break;
      std::size_t eq = body.find('=', i);
      if (eq == std::string::npos)
        throw ParseError("malformed attribute at byte offset " +
                         std::to_string(tag_offset_ + i));
      std::string key = body.substr(i, eq - i);
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
        key.pop_back();
      std::size_t q = eq + 1;
      while (q < body.size() && std::isspace(static_cast<unsigned char>(body[q])))
        ++q;
      if (q >= body.size() || (body[q] != '"' && body[q] != '\''))
        throw ParseError("unquoted attribute value at byte offset " +
                         std::to_string(tag_offset_ + q));
      char quote = body[q];
      std::size_t close = body.find(quote, q + 1);
      if (close == std::string::npos)
        throw ParseError("unterminated attribute value at byte offset " +
                         std::to_string(tag_offset_ + q));
      attrs_.emplace_back(key, body.substr(q + 1, close - q - 1));
      i = close + 1;
    }
    return true;
  }

  std::string require_attr(const char* key) const {
    for (const auto& [k, v] : attrs_)
      if (k == key) return v;
    throw SchemaError("element <" + name_ + "> missing attribute '" + key +
                      "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t tag_offset_ = 0;
  std::string name_;
  std::vector<std::pair<std::string, std::string>> attrs_;
  bool closing_ = false;
  bool self_closing_ = false;
};

}  // namespace detail

// SUMO floating-car-data XML: <timestep time=...> wrapping
// <vehicle id=... x=... y=.../> elements.
inline Trace parse_fcd_xml(const std::string& text, const SnapshotSpec& spec) {
  spec.validate();
  auto raw = detail::FcdParser(text).run();
  if (raw.empty()) throw ParseError("empty trace: no vehicle elements");
  return detail::finish_trace(std::move(raw), spec);
}

inline Trace parse_fcd_xml(std::istream& in, const SnapshotSpec& spec) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fcd_xml(buf.str(), spec);
}

// Build the temporal proximity graph: one snapshot per window, an edge
// whenever two vehicle positions are within the communication radius
// (closed threshold). Vehicles without a sample in a window stay isolated,
// so the vertex set is identical in every snapshot.
inline TemporalGraph snapshot_graphs(const Trace& trace) {
  const auto pos = trace.window_positions();
  const int M = trace.vehicle_count();
  const double r2 = trace.spec().radius * trace.spec().radius;
  std::vector<std::vector<Edge>> snaps(pos.size());
  for (std::size_t w = 0; w < pos.size(); ++w) {
    std::vector<int> present;
    for (int v = 0; v < M; ++v)
      if (pos[w][static_cast<std::size_t>(v)]) present.push_back(v);
    auto& edges = snaps[w];
    for (std::size_t a = 0; a < present.size(); ++a) {
      const auto& pa = *pos[w][static_cast<std::size_t>(present[a])];
      for (std::size_t b = a + 1; b < present.size(); ++b) {
        const auto& pb = *pos[w][static_cast<std::size_t>(present[b])];
        const double dx = pa.x - pb.x, dy = pa.y - pb.y;
        if (dx * dx + dy * dy <= r2)
          edges.push_back(make_edge(present[a], present[b]));
      }
    }
  }
  return TemporalGraph(M, snaps, trace.vehicle_ids());
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_TRACE_HPP_
