#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "loophull/bridge.hpp"
#include "loophull/geometry.hpp"
#include "loophull/rng.hpp"

using namespace loophull;

namespace {

// 99th percentile of the chi-square distribution.
constexpr double kChi2Crit99Df3 = 11.344867;
constexpr double kChi2Crit99Df35 = 57.342073;

std::string step_string(const LoopPath& p) {
  std::string s;
  for (std::size_t k = 0; k + 1 < p.points.size(); ++k) {
    const double dx = p.points[k + 1].x - p.points[k].x;
    const double dy = p.points[k + 1].y - p.points[k].y;
    if (dx == 1.0) s += 'E';
    else if (dx == -1.0) s += 'W';
    else if (dy == 1.0) s += 'N';
    else s += 'S';
  }
  return s;
}

}  // namespace

TEST_SUITE("bridge") {

TEST_CASE("gaussian bridge pins both endpoints at the origin") {
  for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
    const LoopPath p = sample_gaussian_bridge({2, seed, PathKind::gaussian_bridge});
    REQUIRE(p.points.size() == 3);
    CHECK(p.points[0] == PlanarPoint{0.0, 0.0});
    CHECK(p.points[2] == PlanarPoint{0.0, 0.0});
  }
  const LoopPath p =
      sample_gaussian_bridge({1 << 10, 5, PathKind::gaussian_bridge});
  CHECK(p.points.front() == PlanarPoint{0.0, 0.0});
  CHECK(p.points.back() == PlanarPoint{0.0, 0.0});
}

TEST_CASE("bridge midpoint has mean 0 and per-coordinate variance 1/4") {
  const int n = 1 << 14;
  const int m = 100000;
  std::vector<double> xs(m);
  std::vector<double> ys(m);
#pragma omp parallel for schedule(dynamic, 64)
  for (int k = 0; k < m; ++k) {
    const LoopPath p = sample_gaussian_bridge(
        {n, derive_seed(1, static_cast<std::uint64_t>(k)), PathKind::gaussian_bridge});
    xs[k] = p.points[n / 2].x;
    ys[k] = p.points[n / 2].y;
  }
  double mx = 0.0;
  double my = 0.0;
  for (int k = 0; k < m; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  // Var = t(1-t) = 1/4 at t = 1/2; mean within 3 standard errors.
  const double se = 0.5 / std::sqrt(static_cast<double>(m));
  CHECK(std::abs(mx) < 3.0 * se);
  CHECK(std::abs(my) < 3.0 * se);
  double vx = 0.0;
  double vy = 0.0;
  for (int k = 0; k < m; ++k) {
    vx += (xs[k] - mx) * (xs[k] - mx);
    vy += (ys[k] - my) * (ys[k] - my);
  }
  vx /= m - 1;
  vy /= m - 1;
  CHECK(std::abs(vx - 0.25) < 0.02 * 0.25);
  CHECK(std::abs(vy - 0.25) < 0.02 * 0.25);
}

TEST_CASE("bridge covariance at N=3 matches s(1-t) = 1/9") {
  const int m = 100000;
  double acc = 0.0;
#pragma omp parallel for reduction(+ : acc)
  for (int k = 0; k < m; ++k) {
    const LoopPath p = sample_gaussian_bridge(
        {3, derive_seed(2, static_cast<std::uint64_t>(k)), PathKind::gaussian_bridge});
    acc += p.points[1].x * p.points[2].x;
  }
  const double cov = acc / m;
  // sd of the product estimator: sqrt((v1 v2 + cov^2)/m).
  const double sigma = std::sqrt((2.0 / 9.0 * 2.0 / 9.0 + 1.0 / 81.0) / m);
  CHECK(std::abs(cov - 1.0 / 9.0) < 3.0 * sigma);
}

TEST_CASE("bridge spec validation") {
  CHECK_THROWS_AS(sample_gaussian_bridge({1, 0, PathKind::gaussian_bridge}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_lattice_loop({5, 0, PathKind::lattice_loop}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_gaussian_bridge({8, 0, PathKind::lattice_loop}),
                  std::invalid_argument);
}

TEST_CASE("lattice loop length 2: the four return loops are uniform") {
  std::map<std::string, int> counts;
  const int m = 10000;
  for (int k = 0; k < m; ++k) {
    const LoopPath p = sample_lattice_loop(
        {2, derive_seed(3, static_cast<std::uint64_t>(k)), PathKind::lattice_loop});
    ++counts[step_string(p)];
  }
  REQUIRE(counts.size() == 4);
  double chi = 0.0;
  const double expected = m / 4.0;
  for (const auto& [s, c] : counts) {
    chi += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi < kChi2Crit99Df3);
}

TEST_CASE("lattice loop length 4: uniform over the 36 enumerated loops") {
  // Brute-force oracle: all 4^4 walks conditioned to return to the origin.
  std::set<std::string> oracle;
  const char dirs[4] = {'E', 'W', 'N', 'S'};
  for (int code = 0; code < 256; ++code) {
    int x = 0;
    int y = 0;
    std::string s;
    for (int p = 0; p < 4; ++p) {
      const char d = dirs[(code >> (2 * p)) & 3];
      s += d;
      x += d == 'E' ? 1 : d == 'W' ? -1 : 0;
      y += d == 'N' ? 1 : d == 'S' ? -1 : 0;
    }
    if (x == 0 && y == 0) oracle.insert(s);
  }
  REQUIRE(oracle.size() == 36);

  std::map<std::string, int> counts;
  const int m = 100000;
  for (int k = 0; k < m; ++k) {
    const LoopPath p = sample_lattice_loop(
        {4, derive_seed(4, static_cast<std::uint64_t>(k)), PathKind::lattice_loop});
    const std::string s = step_string(p);
    REQUIRE(oracle.count(s) == 1);
    ++counts[s];
  }
  REQUIRE(counts.size() == 36);
  double chi = 0.0;
  const double expected = m / 36.0;
  for (const auto& [s, c] : counts) {
    chi += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi < kChi2Crit99Df35);
}

TEST_CASE("lattice loop is balanced and closed for every seed") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LoopPath p = sample_lattice_loop({40, seed, PathKind::lattice_loop});
    REQUIRE(p.closed());
    int east = 0;
    int west = 0;
    int north = 0;
    int south = 0;
    for (std::size_t k = 0; k + 1 < p.points.size(); ++k) {
      const double dx = p.points[k + 1].x - p.points[k].x;
      const double dy = p.points[k + 1].y - p.points[k].y;
      REQUIRE(std::abs(dx) + std::abs(dy) == 1.0);
      east += dx == 1.0;
      west += dx == -1.0;
      north += dy == 1.0;
      south += dy == -1.0;
    }
    CHECK(east == west);
    CHECK(north == south);
  }
}

TEST_CASE("lattice loop with 50000 steps samples in well under a second") {
  const auto t0 = std::chrono::steady_clock::now();
  const LoopPath p = sample_lattice_loop({50000, 11, PathKind::lattice_loop});
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  CHECK(p.steps() == 50000);
  CHECK(ms < 1000.0);
}

TEST_CASE("vervaat: square already starting at a lowest point is unchanged") {
  LoopPath sq;
  sq.kind = PathKind::lattice_loop;
  sq.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  const LoopPath out = vervaat_transform(sq);
  REQUIRE(out.points.size() == sq.points.size());
  for (std::size_t k = 0; k < sq.points.size(); ++k) {
    CHECK(out.points[k] == sq.points[k]);
  }
}

TEST_CASE("vervaat output starts at origin with y >= 0 and min y exactly 0") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const LoopPath p =
        sample_gaussian_bridge({256, seed, PathKind::gaussian_bridge});
    const LoopPath z = vervaat_transform(p);
    REQUIRE(z.closed());
    CHECK(z.points[0] == PlanarPoint{0.0, 0.0});
    double min_y = 1e300;
    for (const PlanarPoint& q : z.points) {
      REQUIRE(q.y >= 0.0);
      min_y = std::min(min_y, q.y);
    }
    CHECK(min_y == 0.0);
  }
}

TEST_CASE("vervaat increments are a cyclic rotation of the input increments") {
  const LoopPath p =
      sample_gaussian_bridge({128, 31, PathKind::gaussian_bridge});
  const LoopPath z = vervaat_transform(p);
  const std::size_t n = 128;
  const std::size_t base = lowest_vertex_index(p);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = (base + k) % n;
    const double dx_in = p.points[src + 1].x - p.points[src].x;
    const double dy_in = p.points[src + 1].y - p.points[src].y;
    const double dx_out = z.points[k + 1].x - z.points[k].x;
    const double dy_out = z.points[k + 1].y - z.points[k].y;
    // The same differences evaluated after one exact translation.
    REQUIRE(dx_out == doctest::Approx(dx_in).epsilon(1e-12));
    REQUIRE(dy_out == doctest::Approx(dy_in).epsilon(1e-12));
  }
}

TEST_CASE("vervaat preserves the shoelace area to rounding") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const LoopPath p =
        sample_gaussian_bridge({2048, seed, PathKind::gaussian_bridge});
    const LoopPath z = vervaat_transform(p);
    const double a = polygon_area(p);
    const double b = polygon_area(z);
    CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("vervaat tie-break picks the smallest index") {
  LoopPath flat;
  flat.kind = PathKind::lattice_loop;
  // Two vertices tie at the minimal y; index 2 comes first.
  flat.points = {{0, 1}, {1, 1}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}};
  // y-minimum of 0 at indices 2 and 3.
  CHECK(lowest_vertex_index(flat) == 2);
  const LoopPath z = vervaat_transform(flat);
  CHECK(z.points[0] == PlanarPoint{0.0, 0.0});
  CHECK(z.points[1] == PlanarPoint{1.0, 0.0});
}

TEST_CASE("sampling is deterministic in the spec") {
  const BridgeSpec spec{512, 997, PathKind::gaussian_bridge};
  const LoopPath a = sample_gaussian_bridge(spec);
  const LoopPath b = sample_gaussian_bridge(spec);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    REQUIRE(a.points[k] == b.points[k]);
  }
}

}  // TEST_SUITE
