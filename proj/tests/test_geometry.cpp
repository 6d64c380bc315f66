#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "loophull/bridge.hpp"
#include "loophull/geometry.hpp"

using namespace loophull;

namespace {

LoopPath square_ccw() {
  LoopPath p;
  p.kind = PathKind::lattice_loop;
  p.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  return p;
}

LoopPath circle(int vertices, double radius) {
  LoopPath p;
  p.kind = PathKind::gaussian_bridge;
  p.points.reserve(vertices + 1);
  for (int k = 0; k <= vertices; ++k) {
    const double a = 2.0 * std::numbers::pi * k / vertices;
    p.points.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  p.points.back() = p.points.front();
  return p;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("shoelace area of simple fixtures") {
  CHECK(polygon_area(square_ccw()) == doctest::Approx(1.0));
  LoopPath cw = square_ccw();
  std::reverse(cw.points.begin(), cw.points.end());
  CHECK(polygon_area(cw) == doctest::Approx(-1.0));
  CHECK(polygon_area(circle(4096, 1.0)) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-5));
}

TEST_CASE("winding by angle accumulation and by crossings agree") {
  const LoopPath sq = square_ccw();
  const PlanarPoint inside{0.5, 0.5};
  const PlanarPoint outside{2.5, 0.5};
  CHECK(winding_number_angle(sq, inside).winding == 1);
  CHECK(winding_number_crossing(sq, inside).winding == 1);
  CHECK(winding_number_angle(sq, outside).winding == 0);
  CHECK(winding_number_crossing(sq, outside).winding == 0);

  // Doubly traversed circle winds twice.
  LoopPath twice = circle(512, 1.0);
  const LoopPath once = circle(512, 1.0);
  twice.points.insert(twice.points.end(), once.points.begin() + 1,
                      once.points.end());
  CHECK(winding_number_angle(twice, {0.1, -0.2}).winding == 2);
  CHECK(winding_number_crossing(twice, {0.1, -0.2}).winding == 2);

  // Random bridges: both routes agree at random probe points.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LoopPath p =
        sample_gaussian_bridge({512, seed, PathKind::gaussian_bridge});
    for (int q = 0; q < 40; ++q) {
      const PlanarPoint z{-1.0 + 0.05 * q, 0.3 - 0.02 * q};
      const PointWinding a = winding_number_angle(p, z);
      const PointWinding c = winding_number_crossing(p, z);
      REQUIRE(a.on_path == c.on_path);
      if (!a.on_path) REQUIRE(a.winding == c.winding);
    }
  }
}

TEST_CASE("points on the path are flagged") {
  const LoopPath sq = square_ccw();
  CHECK(winding_number_angle(sq, {0.5, 0.0}).on_path);
  CHECK(winding_number_angle(sq, {1.0, 1.0}).on_path);
  CHECK(winding_number_crossing(sq, {0.5, 0.0}).on_path);
}

TEST_CASE("path export/import round-trips doubles exactly") {
  const LoopPath p =
      sample_gaussian_bridge({64, 1234, PathKind::gaussian_bridge});
  std::stringstream ss;
  export_path(p, ss);
  const LoopPath q = import_path(ss);
  REQUIRE(q.points.size() == p.points.size());
  CHECK(q.kind == p.kind);
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    REQUIRE(q.points[k].x == p.points[k].x);
    REQUIRE(q.points[k].y == p.points[k].y);
  }
}

TEST_CASE("import rejects malformed files") {
  std::stringstream empty;
  CHECK_THROWS_AS(import_path(empty), std::invalid_argument);
  std::stringstream open_loop("2 gaussian_bridge\n0 0\n1 0\n2 2\n");
  CHECK_THROWS_AS(import_path(open_loop), std::invalid_argument);
  std::stringstream truncated("4 gaussian_bridge\n0 0\n1 0\n");
  CHECK_THROWS_AS(import_path(truncated), std::invalid_argument);
}

TEST_CASE("subsample keeps every factor-th vertex") {
  const LoopPath p =
      sample_gaussian_bridge({64, 9, PathKind::gaussian_bridge});
  const LoopPath q = subsample_path(p, 4);
  REQUIRE(q.steps() == 16);
  for (int k = 0; k <= 16; ++k) {
    REQUIRE(q.points[k].x == p.points[4 * k].x);
    REQUIRE(q.points[k].y == p.points[4 * k].y);
  }
  CHECK_THROWS_AS(subsample_path(p, 7), std::invalid_argument);
}

}  // TEST_SUITE
