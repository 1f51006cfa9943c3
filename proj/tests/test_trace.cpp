#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "vanetgraph/synthetic.hpp"
#include "vanetgraph/trace.hpp"

using namespace vanetgraph;

namespace {

SnapshotSpec spec(double t_start, double t_end, double interval,
                  double radius) {
  return SnapshotSpec{t_start, t_end, interval, radius};
}

}  // namespace

TEST_CASE("parse_csv basics") {
  const SnapshotSpec sp = spec(0, 30, 10, 100);

  SUBCASE("header with no data rows is an empty-trace error") {
    CHECK_THROWS_AS(parse_csv("vehicle_id,t,x,y\n", sp), ParseError);
  }

  SUBCASE("two vehicles, three timesteps each") {
    const Trace tr = parse_csv(
        "vehicle_id,t,x,y\n"
        "a,0,0,0\na,10,5,0\na,20,10,0\n"
        "b,0,100,0\nb,10,105,0\nb,20,110,0\n",
        sp);
    CHECK(tr.vehicle_count() == 2);
    CHECK(tr.records().size() == 6);
    CHECK(tr.dropped_records() == 0);
  }

  SUBCASE("t == t_end falls outside the half-open window") {
    const Trace tr = parse_csv(
        "vehicle_id,t,x,y\n"
        "a,0,0,0\na,29.9,1,0\na,30,2,0\n",
        sp);
    CHECK(tr.records().size() == 2);
    CHECK(tr.dropped_records() == 1);
  }

  SUBCASE("malformed line reports its line number") {
    try {
      parse_csv("vehicle_id,t,x,y\na,0,0,0\na,zzz,1,0\n", sp);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }

  SUBCASE("wrong field count is rejected") {
    CHECK_THROWS_AS(parse_csv("vehicle_id,t,x,y\na,0,0\n", sp), ParseError);
  }

  SUBCASE("duplicate (vehicle, t) keeps the last occurrence") {
    const Trace tr = parse_csv(
        "vehicle_id,t,x,y\n"
        "a,0,1,0\na,0,2,0\n",
        sp);
    REQUIRE(tr.records().size() == 1);
    CHECK(tr.records()[0].x == 2.0);
  }

  SUBCASE("CRLF line endings are accepted") {
    const Trace tr = parse_csv("vehicle_id,t,x,y\r\na,0,1,2\r\n", sp);
    CHECK(tr.records().size() == 1);
  }
}

TEST_CASE("parse_fcd_xml") {
  const SnapshotSpec sp = spec(0, 30, 10, 100);

  SUBCASE("one timestep, one vehicle") {
    const Trace tr = parse_fcd_xml(
        "<fcd-export><timestep time=\"0\">"
        "<vehicle id=\"a\" x=\"1.5\" y=\"2.5\"/>"
        "</timestep></fcd-export>",
        sp);
    CHECK(tr.vehicle_count() == 1);
    REQUIRE(tr.records().size() == 1);
    CHECK(tr.records()[0].x == 1.5);
  }

  SUBCASE("timestep with zero vehicles changes nothing") {
    const Trace tr = parse_fcd_xml(
        "<fcd-export>"
        "<timestep time=\"0\"><vehicle id=\"a\" x=\"1\" y=\"2\"/></timestep>"
        "<timestep time=\"10\"></timestep>"
        "</fcd-export>",
        sp);
    CHECK(tr.records().size() == 1);
  }

  SUBCASE("missing attribute names the attribute") {
    try {
      parse_fcd_xml(
          "<fcd-export><timestep time=\"0\">"
          "<vehicle id=\"a\" x=\"1\"/></timestep></fcd-export>",
          sp);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("'y'") != std::string::npos);
    }
  }

  SUBCASE("structural error carries a byte offset") {
    try {
      parse_fcd_xml("<fcd-export><timestep time=\"0\"", sp);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    }
  }

  SUBCASE("same data as CSV and FCD yields identical traces") {
    const Trace a = parse_csv(
        "vehicle_id,t,x,y\nu,0,0,0\nu,10,3,4\nw,0,50,0\n", sp);
    const Trace b = parse_fcd_xml(
        "<fcd-export>"
        "<timestep time=\"0\">"
        "<vehicle id=\"u\" x=\"0\" y=\"0\"/>"
        "<vehicle id=\"w\" x=\"50\" y=\"0\"/></timestep>"
        "<timestep time=\"10\"><vehicle id=\"u\" x=\"3\" y=\"4\"/></timestep>"
        "</fcd-export>",
        sp);
    REQUIRE(a.records().size() == b.records().size());
    CHECK(a.vehicle_ids() == b.vehicle_ids());
    for (std::size_t i = 0; i < a.records().size(); ++i) {
      CHECK(a.records()[i].vehicle == b.records()[i].vehicle);
      CHECK(a.records()[i].t == b.records()[i].t);
      CHECK(a.records()[i].x == b.records()[i].x);
      CHECK(a.records()[i].y == b.records()[i].y);
    }
  }
}

TEST_CASE("snapshot_graphs") {
  SUBCASE("distance exactly R keeps the edge, R+eps drops it") {
    const SnapshotSpec sp = spec(0, 1, 1, 100);
    const Trace at_r =
        parse_csv("vehicle_id,t,x,y\na,0,0,0\nb,0,100,0\n", sp);
    CHECK(snapshot_graphs(at_r).snapshot(1).edge_count() == 1);
    const Trace beyond =
        parse_csv("vehicle_id,t,x,y\na,0,0,0\nb,0,100.001,0\n", sp);
    CHECK(snapshot_graphs(beyond).snapshot(1).edge_count() == 0);
  }

  SUBCASE("hand-placed 5 vehicles over 3 windows") {
    // Window 1: a-b close, c alone. Window 2: a-b-c chain. Window 3: all far.
    const SnapshotSpec sp = spec(0, 3, 1, 10);
    const Trace tr = parse_csv(
        "vehicle_id,t,x,y\n"
        "a,0,0,0\nb,0,5,0\nc,0,100,0\nd,0,200,0\ne,0,300,0\n"
        "a,1,0,0\nb,1,8,0\nc,1,16,0\nd,1,200,0\ne,1,300,0\n"
        "a,2,0,0\nb,2,50,0\nc,2,100,0\nd,2,200,0\ne,2,300,0\n",
        sp);
    const TemporalGraph tg = snapshot_graphs(tr);
    // brute-force check against pairwise distances per window
    const auto pos = tr.window_positions();
    const double r2 = sp.radius * sp.radius;
    for (int t = 1; t <= 3; ++t) {
      for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) {
          const auto& pu = pos[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(u)];
          const auto& pv = pos[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(v)];
          const bool expect =
              pu && pv &&
              ((pu->x - pv->x) * (pu->x - pv->x) +
               (pu->y - pv->y) * (pu->y - pv->y)) <= r2;
          CHECK(tg.snapshot(t).has_edge(u, v) == expect);
        }
    }
    CHECK(tg.snapshot(1).edge_count() == 1);
    CHECK(tg.snapshot(2).edge_count() == 2);
    CHECK(tg.snapshot(3).edge_count() == 0);
  }

  SUBCASE("vehicle missing from a window stays as an isolated vertex") {
    const SnapshotSpec sp = spec(0, 2, 1, 10);
    const Trace tr = parse_csv(
        "vehicle_id,t,x,y\na,0,0,0\nb,0,5,0\na,1,0,0\n", sp);
    const TemporalGraph tg = snapshot_graphs(tr);
    CHECK(tg.vertex_count() == 2);
    CHECK(tg.snapshot(2).edge_count() == 0);
  }

  SUBCASE("record order does not matter") {
    const SnapshotSpec sp = spec(0, 4, 2, 50);
    std::vector<std::string> lines = {
        "a,0,0,0",  "b,0,30,0", "c,1,60,0", "a,2,10,0",
        "b,2,40,0", "c,3,70,0", "a,3,20,0",
    };
    std::mt19937 rng(7);
    const auto build = [&](const std::vector<std::string>& ls) {
      std::string text = "vehicle_id,t,x,y\n";
      for (const auto& l : ls) text += l + "\n";
      return serialize(snapshot_graphs(parse_csv(text, sp)));
    };
    const std::string reference = build(lines);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(lines.begin(), lines.end(), rng);
      CHECK(build(lines) == reference);
    }
  }

  SUBCASE("snapshot count is ceil((t_end - t_start)/interval)") {
    CHECK(spec(0, 10, 3, 1).snapshot_count() == 4);
    CHECK(spec(0, 9, 3, 1).snapshot_count() == 3);
    CHECK(spec(5, 6, 10, 1).snapshot_count() == 1);
  }
}

TEST_CASE("generate_synthetic") {
  GenParams base;
  base.set("t_end", "10");
  base.set("interval", "2");
  base.set("radius", "30");

  SUBCASE("same seed gives byte-identical traces") {
    GenParams p = base;
    p.set("vehicles", "5");
    p.set("width", "200");
    p.set("height", "200");
    p.set("speed", "15");
    const Trace a = generate_synthetic("random-waypoint", p, 42);
    const Trace b = generate_synthetic("random-waypoint", p, 42);
    REQUIRE(a.records().size() == b.records().size());
    for (std::size_t i = 0; i < a.records().size(); ++i) {
      CHECK(a.records()[i].x == b.records()[i].x);
      CHECK(a.records()[i].y == b.records()[i].y);
    }
    const Trace c = generate_synthetic("random-waypoint", p, 43);
    bool differs = false;
    for (std::size_t i = 0; i < std::min(a.records().size(), c.records().size());
         ++i)
      differs = differs || a.records()[i].x != c.records()[i].x;
    CHECK(differs);
  }

  SUBCASE("single vehicle on a line road has no edges") {
    GenParams p = base;
    p.set("vehicles", "1");
    p.set("length", "1000");
    const TemporalGraph tg =
        snapshot_graphs(generate_synthetic("line-road", p, 1));
    for (int t = 1; t <= tg.snapshot_count(); ++t)
      CHECK(tg.snapshot(t).edge_count() == 0);
  }

  SUBCASE("tight stationary grid forms a complete graph in every snapshot") {
    GenParams p = base;
    p.set("rows", "2");
    p.set("cols", "3");
    p.set("spacing", "5");  // everything within radius 30
    const TemporalGraph tg = snapshot_graphs(generate_synthetic("grid", p, 1));
    for (int t = 1; t <= tg.snapshot_count(); ++t)
      CHECK(tg.snapshot(t).edge_count() == 6u * 5u / 2u);
  }

  SUBCASE("invalid parameters are rejected") {
    GenParams p = base;
    p.set("vehicles", "0");
    p.set("length", "100");
    CHECK_THROWS_AS(generate_synthetic("line-road", p, 1), ParamError);
    GenParams q = base;
    q.set("vehicles", "3");
    q.set("width", "-5");
    q.set("height", "10");
    CHECK_THROWS_AS(generate_synthetic("random-waypoint", q, 1), ParamError);
    CHECK_THROWS_AS(generate_synthetic("no-such-kind", base, 1), ParamError);
  }

  SUBCASE("records stay inside the declared window") {
    GenParams p = base;
    p.set("vehicles", "4");
    p.set("length", "500");
    const Trace tr = generate_synthetic("line-road", p, 9);
    for (const auto& r : tr.records()) {
      CHECK(r.t >= 0.0);
      CHECK(r.t < 10.0);
      CHECK(r.x >= 0.0);
      CHECK(r.x < 500.0);
    }
  }
}

TEST_CASE("aggregated edge count never exceeds temporal edge count") {
  GenParams p;
  p.set("t_end", "12");
  p.set("interval", "3");
  p.set("radius", "60");
  p.set("vehicles", "8");
  p.set("width", "300");
  p.set("height", "300");
  p.set("speed", "25");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TemporalGraph tg =
        snapshot_graphs(generate_synthetic("random-waypoint", p, seed));
    const GraphCounts c = counts(tg);
    CHECK(c.aggregated_edge_count <= c.temporal_edge_count);
  }
}
