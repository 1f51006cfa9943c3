#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vanetgraph/stats.hpp"

using namespace vanetgraph;

namespace {

MeasureSample sample(std::vector<double> v) {
  MeasureSample s;
  s.values = std::move(v);
  return s;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n,
                                  double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v)
    x = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return v;
}

}  // namespace

TEST_CASE("ks_threshold") {
  SUBCASE("published critical values at alpha=0.05") {
    CHECK(ks_threshold(3558, 3558, 0.05) == doctest::Approx(0.0322).epsilon(1e-3));
    CHECK(ks_threshold(2012, 2012, 0.05) == doctest::Approx(0.0428).epsilon(1e-3));
  }

  SUBCASE("equal-size form c*sqrt(2/M)") {
    CHECK(ks_threshold(100, 100, 0.05) ==
          doctest::Approx(1.36 * std::sqrt(2.0 / 100.0)));
  }

  SUBCASE("unequal sizes use the pooled form") {
    CHECK(ks_threshold(100, 400, 0.05) ==
          doctest::Approx(1.36 * std::sqrt(500.0 / (100.0 * 400.0))));
  }

  SUBCASE("quadrupling both sizes halves the threshold") {
    CHECK(ks_threshold(400, 400, 0.05) ==
          doctest::Approx(ks_threshold(100, 100, 0.05) / 2.0));
  }

  SUBCASE("stricter alpha raises the threshold") {
    CHECK(ks_threshold(100, 100, 0.01) > ks_threshold(100, 100, 0.05));
    CHECK_THROWS_AS(ks_threshold(10, 10, 0.0), ParamError);
    CHECK_THROWS_AS(ks_threshold(10, 10, 1.0), ParamError);
  }
}

TEST_CASE("ks_two_sample") {
  SUBCASE("identical samples give D = 0") {
    const auto a = sample({1, 2, 3, 4, 5});
    const auto r = ks_two_sample(a, a);
    CHECK(r.d == 0.0);
    CHECK_FALSE(r.reject);
  }

  SUBCASE("fully separated samples give D = 1") {
    // 10 points per side so that delta < 1 and the rejection can fire
    const auto r = ks_two_sample(sample({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}),
                                 sample({20, 21, 22, 23, 24, 25, 26, 27, 28,
                                         29}));
    CHECK(r.d == doctest::Approx(1.0));
    CHECK(r.reject);
  }

  SUBCASE("hand-computed small case") {
    // ECDFs of {1,2} vs {2,3}: largest gap 0.5 just below 2.
    const auto r = ks_two_sample(sample({1, 2}), sample({2, 3}));
    CHECK(r.d == doctest::Approx(0.5));
  }

  SUBCASE("D is symmetric and bounded") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = sample(random_values(rng, 30, 0, 1));
      const auto b = sample(random_values(rng, 50, 0.2, 1.5));
      const auto r1 = ks_two_sample(a, b);
      const auto r2 = ks_two_sample(b, a);
      CHECK(r1.d == doctest::Approx(r2.d));
      CHECK(r1.d >= 0.0);
      CHECK(r1.d <= 1.0);
      // brute-force D over every sample point as evaluation position
      double expect = 0.0;
      std::vector<double> points = a.values;
      points.insert(points.end(), b.values.begin(), b.values.end());
      for (double x : points) {
        double fa = 0, fb = 0;
        for (double v : a.values) fa += v <= x ? 1.0 : 0.0;
        for (double v : b.values) fb += v <= x ? 1.0 : 0.0;
        expect = std::max(expect, std::abs(fa / 30.0 - fb / 50.0));
      }
      CHECK(r1.d == doctest::Approx(expect));
    }
  }

  SUBCASE("empty samples are rejected") {
    CHECK_THROWS_AS(ks_two_sample(sample({}), sample({1})), ParamError);
  }
}

TEST_CASE("histogram_proportions") {
  SUBCASE("uniform 1..100 over 100 bins is 0.01 everywhere") {
    std::vector<double> v(100);
    for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = i + 1.0;
    const auto h = histogram_proportions(sample(v), 100, 0.5, 100.5);
    REQUIRE(h.proportions.size() == 100);
    for (double p : h.proportions) CHECK(p == doctest::Approx(0.01));
  }

  SUBCASE("interior edges belong to the right bin; the top edge is closed") {
    const auto h = histogram_proportions(sample({0.0, 1.0, 2.0}), 2, 0.0, 2.0);
    CHECK(h.proportions[0] == doctest::Approx(1.0 / 3.0));  // just 0
    CHECK(h.proportions[1] == doctest::Approx(2.0 / 3.0));  // 1 and the top
  }

  SUBCASE("degenerate range collapses into one bin") {
    const auto h = histogram_proportions(sample({5, 5, 5}), 4, 5.0, 5.0);
    CHECK(h.proportions[0] == doctest::Approx(1.0));
  }

  SUBCASE("proportions always sum to 1 (counting oracle)") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = random_values(rng, 200, -3, 7);
      const auto h = histogram_proportions(sample(v), 17, -3, 7);
      double total = 0;
      for (double p : h.proportions) total += p;
      CHECK(total == doctest::Approx(1.0));
      // independent recount per bin
      for (int b = 0; b < 17; ++b) {
        const double lo = h.bin_edges[static_cast<std::size_t>(b)];
        const double hi = h.bin_edges[static_cast<std::size_t>(b) + 1];
        std::size_t count = 0;
        for (double x : v) {
          const bool in_bin =
              b + 1 == 17 ? (x >= lo && x <= hi) : (x >= lo && x < hi);
          if (in_bin) ++count;
        }
        CHECK(h.proportions[static_cast<std::size_t>(b)] ==
              doctest::Approx(count / 200.0));
      }
    }
  }
}

TEST_CASE("hellinger") {
  const auto mk = [](std::vector<double> p) {
    Histogram h;
    h.proportions = std::move(p);
    h.bin_edges.resize(h.proportions.size() + 1);
    for (std::size_t i = 0; i < h.bin_edges.size(); ++i)
      h.bin_edges[i] = static_cast<double>(i);
    return h;
  };

  SUBCASE("identical distributions give 0") {
    const auto h = mk({0.25, 0.25, 0.5});
    const auto r = hellinger(h, h);
    CHECK(r.h == 0.0);
    CHECK(r.h2 == 0.0);
  }

  SUBCASE("disjoint supports give 1") {
    const auto r = hellinger(mk({1, 0}), mk({0, 1}));
    CHECK(r.h == doctest::Approx(1.0));
    CHECK(r.h2 == doctest::Approx(1.0));
  }

  SUBCASE("closed form for (.5,.5) vs (.9,.1)") {
    const double expect2 =
        0.5 * (std::pow(std::sqrt(0.5) - std::sqrt(0.9), 2) +
               std::pow(std::sqrt(0.5) - std::sqrt(0.1), 2));
    const auto r = hellinger(mk({0.5, 0.5}), mk({0.9, 0.1}));
    CHECK(r.h2 == doctest::Approx(expect2));
    CHECK(r.h == doctest::Approx(std::sqrt(expect2)));
  }

  SUBCASE("mismatched binning is rejected") {
    auto p = mk({0.5, 0.5});
    auto q = mk({0.5, 0.5});
    q.bin_edges[1] = 0.7;
    CHECK_THROWS_AS(hellinger(p, q), ParamError);
  }

  SUBCASE("symmetric and bounded on random histograms") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      auto raw_p = random_values(rng, 10, 0, 1);
      auto raw_q = random_values(rng, 10, 0, 1);
      double sp = 0, sq = 0;
      for (double x : raw_p) sp += x;
      for (double x : raw_q) sq += x;
      for (auto& x : raw_p) x /= sp;
      for (auto& x : raw_q) x /= sq;
      const auto r1 = hellinger(mk(raw_p), mk(raw_q));
      const auto r2 = hellinger(mk(raw_q), mk(raw_p));
      CHECK(r1.h == doctest::Approx(r2.h));
      CHECK(r1.h >= 0.0);
      CHECK(r1.h <= 1.0);
      CHECK(r1.h * r1.h == doctest::Approx(r1.h2));
    }
  }
}

TEST_CASE("pearson") {
  SUBCASE("perfect linear relationships") {
    CHECK(pearson({1, 2, 3}, {10, 20, 30}) == doctest::Approx(1.0));
    CHECK(pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  }

  SUBCASE("constant input returns 0 instead of dividing by zero") {
    CHECK(pearson({1, 1, 1}, {1, 2, 3}) == 0.0);
  }

  SUBCASE("matches a covariance-formula oracle") {
    std::mt19937_64 rng(19);
    const auto x = random_values(rng, 60, -5, 5);
    auto y = random_values(rng, 60, -5, 5);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.5 * x[i];
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const double n = 60.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      syy += y[i] * y[i];
      sxy += x[i] * y[i];
    }
    const double expect = (n * sxy - sx * sy) /
                          std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    CHECK(pearson(x, y) == doctest::Approx(expect));
  }

  SUBCASE("length mismatch is rejected") {
    CHECK_THROWS_AS(pearson({1, 2}, {1}), ParamError);
    CHECK_THROWS_AS(pearson({}, {}), ParamError);
  }
}

TEST_CASE("scatter_export") {
  auto a = sample({1, 2, 3});
  a.model = Model::aggregated;
  auto t = sample({2, 4, 6});
  t.model = Model::temporal;
  const auto s = scatter_export(a, t);
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[1].vertex == 1);
  CHECK(s.rows[1].aggregated == 2.0);
  CHECK(s.rows[1].temporal == 4.0);
  CHECK(s.pearson == doctest::Approx(1.0));
  CHECK_THROWS_AS(scatter_export(a, sample({1, 2})), ParamError);
}

TEST_CASE("compare_samples") {
  SUBCASE("a sample against itself: nothing differs") {
    std::mt19937_64 rng(23);
    auto a = sample(random_values(rng, 120, 0, 1));
    const auto r = compare_samples(a, a);
    CHECK(r.ks.d == 0.0);
    CHECK_FALSE(r.ks.reject);
    CHECK(r.hd.h == 0.0);
    CHECK(r.pearson == doctest::Approx(1.0));
    CHECK(r.hd.bins == 100);
  }

  SUBCASE("histograms share the union range of both samples") {
    // Samples with different supports must still be binned over one range
    // or Hellinger would overstate the distance.
    const auto r =
        compare_samples(sample({0, 0, 1, 1}), sample({0, 0, 1, 1}), 0.05, 4);
    CHECK(r.hd.h == 0.0);
  }

  SUBCASE("well-separated samples reject and max out the distance") {
    std::mt19937_64 rng(29);
    const auto a = sample(random_values(rng, 200, 0, 1));
    const auto b = sample(random_values(rng, 200, 100, 101));
    const auto r = compare_samples(a, b);
    CHECK(r.ks.reject);
    CHECK(r.ks.d == doctest::Approx(1.0));
    CHECK(r.hd.h == doctest::Approx(1.0));
  }
}
