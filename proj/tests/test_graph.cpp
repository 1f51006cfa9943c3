#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "vanetgraph/graph.hpp"

using namespace vanetgraph;

TEST_CASE("aggregate") {
  SUBCASE("single snapshot aggregates to itself") {
    const TemporalGraph tg(4, {{{0, 1}, {2, 3}}});
    const AggregatedGraph g = aggregate(tg, 1, 1);
    CHECK(g.edges() == tg.snapshot(1).edges());
  }

  SUBCASE("three pairwise-disjoint snapshot edges compose to a triangle") {
    const TemporalGraph tg(3, {{{0, 1}}, {{0, 2}}, {{1, 2}}});
    const AggregatedGraph g = aggregate(tg, 1, 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(1, 2));
  }

  SUBCASE("random graphs match a set-union oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const TemporalGraph tg = testoracle::random_temporal_graph(rng, 6, 4, 0.4);
      const AggregatedGraph g = aggregate(tg, 1, 4);
      std::set<Edge> expected;
      for (int t = 1; t <= 4; ++t)
        for (const auto& e : tg.snapshot(t).edges()) expected.insert(e);
      CHECK(std::set<Edge>(g.edges().begin(), g.edges().end()) == expected);
    }
  }

  SUBCASE("out-of-range interval is rejected") {
    const TemporalGraph tg(3, {{{0, 1}}});
    CHECK_THROWS_AS(aggregate(tg, 0, 1), BoundsError);
    CHECK_THROWS_AS(aggregate(tg, 1, 2), BoundsError);
    CHECK_THROWS_AS(aggregate(tg, 2, 1), BoundsError);
  }

  SUBCASE("nested intervals give nested edge sets") {
    std::mt19937_64 rng(5);
    const TemporalGraph tg = testoracle::random_temporal_graph(rng, 6, 4, 0.3);
    for (int a = 1; a <= 4; ++a)
      for (int b = a; b <= 4; ++b) {
        const auto inner = aggregate(tg, a, b).edges();
        const auto outer = aggregate(tg, 1, 4).edges();
        for (const auto& e : inner)
          CHECK(std::binary_search(outer.begin(), outer.end(), e));
      }
  }

  SUBCASE("duplicating a snapshot leaves the aggregated edge set unchanged") {
    std::mt19937_64 rng(6);
    const TemporalGraph tg = testoracle::random_temporal_graph(rng, 5, 3, 0.5);
    std::vector<std::vector<Edge>> snaps;
    for (int t = 1; t <= 3; ++t) snaps.push_back(tg.snapshot(t).edges());
    snaps.push_back(tg.snapshot(2).edges());  // duplicate
    const TemporalGraph dup(5, snaps);
    CHECK(aggregate(tg, 1, 3).edges() == aggregate(dup, 1, 4).edges());
  }
}

TEST_CASE("counts") {
  SUBCASE("empty snapshots count zero edges") {
    const TemporalGraph tg(4, {{}, {}});
    const GraphCounts c = counts(tg);
    CHECK(c.aggregated_edge_count == 0);
    CHECK(c.temporal_edge_count == 0);
    CHECK(c.active_per_snapshot == std::vector<int>{0, 0});
  }

  SUBCASE("disjoint-contact example") {
    const TemporalGraph tg(3, {{{0, 1}}, {{0, 2}}, {{1, 2}}});
    const GraphCounts c = counts(tg);
    CHECK(c.vertex_count == 3);
    CHECK(c.aggregated_edge_count == 3);
    CHECK(c.temporal_edge_count == 3);
    CHECK(c.edges_per_snapshot == std::vector<std::size_t>{1, 1, 1});
    CHECK(c.active_per_snapshot == std::vector<int>{2, 2, 2});
  }

  SUBCASE("temporal count equals the per-snapshot sum") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      const TemporalGraph tg = testoracle::random_temporal_graph(rng, 7, 5, 0.4);
      const GraphCounts c = counts(tg);
      std::size_t sum = 0;
      for (auto e : c.edges_per_snapshot) sum += e;
      CHECK(c.temporal_edge_count == sum);
      CHECK(c.aggregated_edge_count <= c.temporal_edge_count);
    }
  }
}

TEST_CASE("graph construction rules") {
  CHECK_THROWS_AS(TemporalGraph(3, {}), ParamError);
  CHECK_THROWS_AS(SnapshotGraph(3, 1, {{1, 1}}), ParamError);
  CHECK_THROWS_AS(SnapshotGraph(3, 1, {{0, 3}}), BoundsError);
  // duplicate and unordered edges are canonicalized
  const SnapshotGraph g(3, 1, {{2, 0}, {0, 2}, {1, 0}});
  CHECK(g.edge_count() == 2);
  CHECK(g.neighbors(0) == std::vector<int>{1, 2});
}

TEST_CASE("serialization round-trips bit-exactly") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const TemporalGraph tg = testoracle::random_temporal_graph(rng, 6, 4, 0.4);
    const std::string text = serialize(tg);
    const TemporalGraph back = parse_temporal_graph(text);
    CHECK(serialize(back) == text);
    CHECK(graph_hash(back) == graph_hash(tg));
  }

  SUBCASE("labels survive the round trip") {
    const TemporalGraph tg(2, {{{0, 1}}}, {"car-a", "car-b"});
    const TemporalGraph back = parse_temporal_graph(serialize(tg));
    REQUIRE(back.has_labels());
    CHECK(back.label(0) == "car-a");
    CHECK(back.label(1) == "car-b");
  }

  SUBCASE("bad input is rejected") {
    CHECK_THROWS_AS(parse_temporal_graph(std::string("")), ParseError);
    CHECK_THROWS_AS(parse_temporal_graph(std::string("x y\n")), ParseError);
    CHECK_THROWS_AS(parse_temporal_graph(std::string("1 3\n2 0 1\n")),
                    ParseError);
  }
}
