#include <doctest.h>

#include <cmath>
#include <numbers>

#include "loophull/bridge.hpp"
#include "loophull/hull.hpp"
#include "loophull/rng.hpp"

using namespace loophull;

namespace {

LoopPath make_loop(std::initializer_list<PlanarPoint> pts) {
  LoopPath p;
  p.kind = PathKind::lattice_loop;
  p.points = pts;
  return p;
}

GridSpec unit_grid(double ox, double oy, double h, int nx, int ny) {
  return GridSpec{{ox, oy}, h, nx, ny};
}

LoopPath circle(int vertices, double radius) {
  LoopPath p;
  p.kind = PathKind::gaussian_bridge;
  for (int k = 0; k <= vertices; ++k) {
    const double a = 2.0 * std::numbers::pi * k / vertices;
    p.points.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  p.points.back() = p.points.front();
  return p;
}

LoopPath square_ccw() {
  return make_loop({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
}

// Two unit squares joined at the origin, traversed with opposite
// orientations.
LoopPath figure_eight() {
  return make_loop({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0},
                    {0, -1}, {-1, -1}, {-1, 0}, {0, 0}});
}

}  // namespace

TEST_SUITE("hull") {

TEST_CASE("segment/box slab test handles touch cases") {
  // Through the middle.
  CHECK(detail::segment_touches_box(-1, 0.5, 2, 0.5, 0, 0, 1, 1));
  // Corner touch only: the diagonal meets this box at its (1,1) corner.
  CHECK(detail::segment_touches_box(-1, -1, 1, 1, 1, 0, 2, 1));
  CHECK(detail::segment_touches_box(-1, -1, 1, 1, 0, 1, 1, 2));
  // Along the boundary.
  CHECK(detail::segment_touches_box(0, 1, 1, 1, 0, 0, 1, 1));
  CHECK(detail::segment_touches_box(0, 1, 1, 1, 0, 1, 1, 2));
  // Clearly apart.
  CHECK_FALSE(detail::segment_touches_box(-1, -1, -0.5, -0.5, 0, 0, 1, 1));
  // Degenerate point segment.
  CHECK(detail::segment_touches_box(0.5, 0.5, 0.5, 0.5, 0, 0, 1, 1));
  CHECK_FALSE(detail::segment_touches_box(1.5, 0.5, 1.5, 0.5, 0, 0, 1, 1));
}

TEST_CASE("grid construction: 2h margins and no vertex on a center line") {
  BridgeSpec spec{400, 5, PathKind::lattice_loop};
  const LoopPath path = sample_lattice_loop(spec);
  const GridSpec grid = make_grid_for_path(path, 1.0, 0.0);
  const BoundingBox box = bounding_box(path);
  const double h = grid.cell_size;
  CHECK(grid.origin.x <= box.lo.x - 2.0 * h);
  CHECK(grid.origin.y <= box.lo.y - 2.0 * h);
  CHECK(grid.max_x() >= box.hi.x + 2.0 * h);
  CHECK(grid.max_y() >= box.hi.y + 2.0 * h);
  for (const PlanarPoint& p : path.points) {
    for (int j = 0; j < grid.ny; ++j) REQUIRE(grid.center_y(j) != p.y);
    for (int i = 0; i < grid.nx; ++i) REQUIRE(grid.center_x(i) != p.x);
  }
}

TEST_CASE("supercover: horizontal segment blocks exactly its row of cells") {
  const LoopPath seg = make_loop({{0.6, 0.5}, {3.4, 0.5}, {0.6, 0.5}});
  const GridSpec grid = unit_grid(0, 0, 1.0, 5, 3);
  const CellMask blocked = serial::rasterize_path(seg, grid);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 5; ++i) {
      const bool expect = j == 0 && i >= 0 && i <= 3;
      CHECK(blocked.test(i, j) == expect);
    }
  }
}

TEST_CASE("supercover: exact corner crossing blocks both side cells") {
  const LoopPath diag = make_loop({{1, 1}, {3, 3}, {1, 1}});
  const GridSpec grid = unit_grid(0, 0, 1.0, 5, 5);
  const CellMask blocked = rasterize_path(diag, grid);
  // Cells entered by the diagonal.
  CHECK(blocked.test(1, 1));
  CHECK(blocked.test(2, 2));
  // Side pair at the crossed corner (2,2).
  CHECK(blocked.test(1, 2));
  CHECK(blocked.test(2, 1));
  // Far cells stay clear.
  CHECK_FALSE(blocked.test(3, 1));
  CHECK_FALSE(blocked.test(1, 3));
  CHECK_FALSE(blocked.test(0, 2));
}

TEST_CASE("blocked band area is bounded by a constant times perimeter times h") {
  const LoopPath sq = square_ccw();
  for (const double cpu : {64.0, 128.0, 256.0}) {
    const GridSpec grid = make_grid_for_path(sq, cpu, 0.05);
    const CellMask blocked = rasterize_path(sq, grid);
    const double h = grid.cell_size;
    const double band = static_cast<double>(blocked.count()) * h * h;
    CHECK(band <= 4.0 * 4.0 * h + 16.0 * h * h);
  }
}

TEST_CASE("flood fill: empty mask leaves every cell outside") {
  const GridSpec grid = unit_grid(0, 0, 1.0, 7, 5);
  const CellMask blocked(7, 5, MaskRole::blocked);
  const CellMask outside = flood_fill_outside(blocked, grid);
  CHECK(outside.count() == 35);
}

TEST_CASE("flood fill: square interior is not outside") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 32.0, 0.1);
  const CellMask blocked = rasterize_path(sq, grid);
  const CellMask outside = flood_fill_outside(blocked, grid);
  int inside_hits = 0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double cx = grid.center_x(i);
      const double cy = grid.center_y(j);
      const bool interior =
          cx > 0.1 && cx < 0.9 && cy > 0.1 && cy < 0.9;
      if (interior) {
        REQUIRE_FALSE(outside.test(i, j));
        ++inside_hits;
      }
    }
  }
  CHECK(inside_hits > 0);
}

TEST_CASE("flood fill: both lobes of a figure-eight are enclosed") {
  const LoopPath fe = figure_eight();
  const GridSpec grid = make_grid_for_path(fe, 32.0, 0.1);
  const CellMask blocked = rasterize_path(fe, grid);
  const CellMask outside = flood_fill_outside(blocked, grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double cx = grid.center_x(i);
      const double cy = grid.center_y(j);
      const bool lobe_a = cx > 0.15 && cx < 0.85 && cy > 0.15 && cy < 0.85;
      const bool lobe_b = cx > -0.85 && cx < -0.15 && cy > -0.85 && cy < -0.15;
      if (lobe_a || lobe_b) REQUIRE_FALSE(outside.test(i, j));
    }
  }
}

TEST_CASE("hull area of the unit square at h=1/256") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 256.0, 0.05);
  const RegionAreas ra = hull_area(sq, grid);
  const double h = grid.cell_size;
  CHECK(std::abs(ra.hull_area - 1.0) <= 4.0 * h + 4.0 * h * h);
}

TEST_CASE("hull area of a polygonized circle is pi within 2%") {
  const LoopPath c = circle(10000, 1.0);
  const GridSpec grid = make_grid_for_path(c, 256.0, 0.05);
  const RegionAreas ra = hull_area(c, grid);
  CHECK(std::abs(ra.hull_area - std::numbers::pi) < 0.02 * std::numbers::pi);
}

TEST_CASE("degenerate back-and-forth path encloses nothing") {
  const LoopPath seg = make_loop({{0, 0}, {1, 0}, {0, 0}});
  const GridSpec grid = make_grid_for_path(seg, 64.0, 0.1);
  const RegionAreas ra = hull_area(seg, grid);
  CHECK(ra.hull_area == ra.blocked_area);
  CHECK(ra.hull_cells == ra.blocked_cells);
}

TEST_CASE("path leaving the grid raises a geometry error") {
  const LoopPath sq = square_ccw();
  const GridSpec tiny = unit_grid(0.2, 0.2, 0.1, 5, 5);
  CHECK_THROWS_AS(rasterize_path(sq, tiny), GeometryError);
}

TEST_CASE("winding field: unit square is 1 inside and 0 outside") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 64.0, 0.1);
  const PathRasterAnalysis an = analyze_path(sq, grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (an.blocked.test(i, j)) {
        REQUIRE(an.winding.at(i, j) == WindingField::kOnPathSentinel);
        continue;
      }
      const double cx = grid.center_x(i);
      const double cy = grid.center_y(j);
      const bool in_square = cx > 0.0 && cx < 1.0 && cy > 0.0 && cy < 1.0;
      REQUIRE(an.winding.at(i, j) == (in_square ? 1 : 0));
      if (an.outside.test(i, j)) REQUIRE(an.winding.at(i, j) == 0);
    }
  }
}

TEST_CASE("winding field: doubly traversed circle winds twice") {
  LoopPath twice = circle(2048, 1.0);
  const LoopPath once = circle(2048, 1.0);
  twice.points.insert(twice.points.end(), once.points.begin() + 1,
                      once.points.end());
  const GridSpec grid = make_grid_for_path(twice, 64.0, 0.1);
  const PathRasterAnalysis an = analyze_path(twice, grid);
  int deep_inside = 0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (an.blocked.test(i, j)) continue;
      const double cx = grid.center_x(i);
      const double cy = grid.center_y(j);
      if (cx * cx + cy * cy < 0.9 * 0.9) {
        REQUIRE(an.winding.at(i, j) == 2);
        ++deep_inside;
      }
    }
  }
  CHECK(deep_inside > 100);
}

TEST_CASE("winding field agrees with the angle-accumulation oracle") {
  BridgeSpec spec{50, 321, PathKind::lattice_loop};
  const LoopPath raw = sample_lattice_loop(spec);
  const LoopPath path = scaled(raw, 1.0 / std::sqrt(50.0));
  const GridSpec grid = make_grid_for_path(path, 64.0, 0.1);
  const CellMask blocked = rasterize_path(path, grid);
  const WindingField field = winding_field(path, grid, blocked);
  CounterRng rng(55);
  int tested = 0;
  while (tested < 200) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(grid.nx)));
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(grid.ny)));
    if (blocked.test(i, j)) continue;
    ++tested;
    const PointWinding w =
        winding_number_angle(path, {grid.center_x(i), grid.center_y(j)});
    REQUIRE_FALSE(w.on_path);
    REQUIRE(w.winding == field.at(i, j));
  }
}

TEST_CASE("region areas: unit square puts ~1 in index 1 and nothing in 0") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 256.0, 0.05);
  const PathRasterAnalysis an = analyze_path(sq, grid);
  const double h = grid.cell_size;
  CHECK(std::abs(an.areas.per_index.at(1) - 1.0) < 4.0 * h + 4.0 * h * h);
  CHECK(an.areas.zero_inside == 0.0);
}

TEST_CASE("region areas: figure-eight lobes carry index +1 and -1") {
  const LoopPath fe = figure_eight();
  const GridSpec grid = make_grid_for_path(fe, 128.0, 0.1);
  const PathRasterAnalysis an = analyze_path(fe, grid);
  const double h = grid.cell_size;
  // Shoelace areas of the two lobes are 1 each, opposite orientations.
  CHECK(std::abs(an.areas.per_index.at(1) - 1.0) < 5.0 * h);
  CHECK(std::abs(an.areas.per_index.at(-1) - 1.0) < 5.0 * h);
}

TEST_CASE("partition identity holds exactly on random paths") {
  for (int c = 0; c < 24; ++c) {
    const bool lattice = c % 2 == 1;
    BridgeSpec spec{lattice ? 200 : 512, derive_seed(9, c),
                    lattice ? PathKind::lattice_loop : PathKind::gaussian_bridge};
    LoopPath path = sample_path(spec);
    if (lattice) path = scaled(path, 1.0 / std::sqrt(200.0));
    const GridSpec grid = make_grid_for_path(path, 128.0, 0.05);
    const PathRasterAnalysis an = analyze_path(path, grid);
    REQUIRE(an.areas.partition_residual_cells() == 0);
    REQUIRE(an.areas.outside_nonzero_cells == 0);
    const double sum = an.areas.zero_inside + an.areas.per_index_sum() +
                       an.areas.blocked_area;
    REQUIRE(sum == an.areas.hull_area);
    // Outside cells carry winding zero.
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (an.outside.test(i, j)) REQUIRE(an.winding.at(i, j) == 0);
      }
    }
  }
}

TEST_CASE("serial and parallel kernels produce bit-identical results") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const LoopPath path =
        sample_gaussian_bridge({4096, seed, PathKind::gaussian_bridge});
    const GridSpec grid = make_grid_for_path(path, 128.0, 0.05);
    const CellMask b_serial = serial::rasterize_path(path, grid);
    const CellMask b_parallel = rasterize_path(path, grid);
    REQUIRE(b_serial == b_parallel);
    const CellMask o_serial = serial::flood_fill_outside(b_serial, grid);
    const CellMask o_parallel = flood_fill_outside(b_parallel, grid);
    REQUIRE(o_serial == o_parallel);
    const WindingField w_serial = serial::winding_field(path, grid, b_serial);
    const WindingField w_parallel = winding_field(path, grid, b_parallel);
    REQUIRE(w_serial.values == w_parallel.values);
  }
}

TEST_CASE("hull area grows with path refinement and blocked area shrinks with h") {
  const LoopPath fine =
      sample_gaussian_bridge({1 << 12, 17, PathKind::gaussian_bridge});
  // Fixed path, refined grids: the blocked band scales about linearly in h.
  const double len = path_length(fine);
  double prev_blocked = 1e300;
  for (const double cpu : {64.0, 128.0, 256.0, 512.0}) {
    const GridSpec grid = make_grid_for_path(fine, cpu, 0.05);
    const RegionAreas ra = hull_area(fine, grid);
    CHECK(ra.blocked_area < prev_blocked);
    CHECK(ra.blocked_area <= 4.0 * len * grid.cell_size +
                                 64.0 * grid.cell_size * grid.cell_size);
    prev_blocked = ra.blocked_area;
  }
}

}  // TEST_SUITE
