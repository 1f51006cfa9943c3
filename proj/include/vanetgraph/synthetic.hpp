#ifndef VANETGRAPH_SYNTHETIC_HPP_
#define VANETGRAPH_SYNTHETIC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vanetgraph/error.hpp"
#include "vanetgraph/trace.hpp"

namespace vanetgraph {

// Flat key=value generator configuration. Lines starting with '#' and
// blank lines are skipped.
class GenParams {
 public:
  GenParams() = default;

  static GenParams parse(std::istream& in) {
    GenParams p;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected key=value", lineno);
      p.kv_[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return p;
  }

  static GenParams parse(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
  }

  void set(const std::string& key, const std::string& value) {
    kv_[key] = value;
  }
  void set(const std::string& key, double value) {
    std::ostringstream os;
    os << value;
    kv_[key] = os.str();
  }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  double number(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ParamError("missing parameter '" + key + "'");
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw ParamError("");
      return v;
    } catch (...) {
      throw ParamError("parameter '" + key + "' is not a number: '" +
                       it->second + "'");
    }
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

 private:
  std::map<std::string, std::string> kv_;
};

namespace detail {

// Uniform double in [0, 1) derived directly from the engine output so the
// generated bytes do not depend on the standard library's distribution
// implementation.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline SnapshotSpec spec_from_params(const GenParams& p) {
  SnapshotSpec spec;
  spec.t_start = p.number("t_start", 0.0);
  spec.t_end = p.number("t_end");
  spec.interval = p.number("interval");
  spec.radius = p.number("radius");
  spec.validate();
  return spec;
}

}  // namespace detail

// Deterministic synthetic traces for desk-scale experiments.
//
// Kinds and their parameters (beyond the shared t_start/t_end/interval/
// radius/dt keys):
//   line-road:       vehicles, length, speed, spacing — constant-speed
//                    traffic on a circular road of the given length.
//   grid:            rows, cols, spacing — stationary vehicles on a grid.
//   random-waypoint: vehicles, width, height, speed — random waypoint
//                    motion inside a rectangle.
inline Trace generate_synthetic(const std::string& kind, const GenParams& p,
                                std::uint64_t seed) {
  const SnapshotSpec spec = detail::spec_from_params(p);
  const double dt = p.number("dt", 1.0);
  if (!(dt > 0)) throw ParamError("dt must be > 0");

  std::vector<TraceRecord> records;
  std::vector<std::string> ids;
  auto vehicle_label = [](int i) { return "v" + std::to_string(i); };

  if (kind == "line-road") {
    const int n = static_cast<int>(p.number("vehicles"));
    const double length = p.number("length");
    const double speed = p.number("speed", 10.0);
    const double spacing = p.number("spacing", 25.0);
    if (n < 1) throw ParamError("line-road: vehicles must be >= 1");
    if (!(length > 0)) throw ParamError("line-road: length must be > 0");
    if (speed < 0) throw ParamError("line-road: speed must be >= 0");
    for (int i = 0; i < n; ++i) ids.push_back(vehicle_label(i));
    for (double t = spec.t_start; t < spec.t_end; t += dt)
      for (int i = 0; i < n; ++i) {
        double x = std::fmod(i * spacing + speed * (t - spec.t_start), length);
        records.push_back({i, t, x, 0.0});
      }
  } else if (kind == "grid") {
    const int rows = static_cast<int>(p.number("rows"));
    const int cols = static_cast<int>(p.number("cols"));
    const double spacing = p.number("spacing");
    if (rows < 1 || cols < 1) throw ParamError("grid: rows/cols must be >= 1");
    if (!(spacing > 0)) throw ParamError("grid: spacing must be > 0");
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) ids.push_back(vehicle_label(i));
    for (double t = spec.t_start; t < spec.t_end; t += dt)
      for (int i = 0; i < n; ++i)
        records.push_back({i, t, (i % cols) * spacing,
                           (i / cols) * spacing});
  } else if (kind == "random-waypoint") {
    const int n = static_cast<int>(p.number("vehicles"));
    const double width = p.number("width");
    const double height = p.number("height");
    const double speed = p.number("speed", 10.0);
    if (n < 1) throw ParamError("random-waypoint: vehicles must be >= 1");
    if (!(width > 0) || !(height > 0))
      throw ParamError("random-waypoint: area must be > 0");
    if (!(speed > 0)) throw ParamError("random-waypoint: speed must be > 0");
    std::mt19937_64 rng(seed);
    struct State {
      double x, y, tx, ty;
    };
    std::vector<State> st;
    for (int i = 0; i < n; ++i) {
      ids.push_back(vehicle_label(i));
      st.push_back({detail::uniform(rng, 0, width),
                    detail::uniform(rng, 0, height),
                    detail::uniform(rng, 0, width),
                    detail::uniform(rng, 0, height)});
    }
    for (double t = spec.t_start; t < spec.t_end; t += dt) {
      for (int i = 0; i < n; ++i) {
        auto& s = st[static_cast<std::size_t>(i)];
        records.push_back({i, t, s.x, s.y});
        double dx = s.tx - s.x, dy = s.ty - s.y;
        const double d = std::hypot(dx, dy);
        const double step = speed * dt;
        if (d <= step) {
          s.x = s.tx;
          s.y = s.ty;
          s.tx = detail::uniform(rng, 0, width);
          s.ty = detail::uniform(rng, 0, height);
        } else {
          s.x += dx / d * step;
          s.y += dy / d * step;
        }
      }
    }
  } else {
    throw ParamError("unknown generator kind '" + kind + "'");
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const TraceRecord& a, const TraceRecord& b) {
                     return a.vehicle != b.vehicle ? a.vehicle < b.vehicle
                                                   : a.t < b.t;
                   });
  return Trace(std::move(records), spec, std::move(ids));
}

}  // namespace vanetgraph

#endif  // VANETGRAPH_SYNTHETIC_HPP_
