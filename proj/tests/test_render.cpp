#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "loophull/bridge.hpp"
#include "loophull/hull.hpp"
#include "loophull/render.hpp"

using namespace loophull;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path(std::string("loophull_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

LoopPath square_ccw() {
  LoopPath p;
  p.kind = PathKind::lattice_loop;
  p.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  return p;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("hull SVG contains a filled raster and the loop polyline") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 32.0, 0.1);
  const CellMask blocked = rasterize_path(sq, grid);
  const CellMask outside = flood_fill_outside(blocked, grid);
  TempFile svg("hull.svg");
  RenderSpec spec;
  spec.out_path = svg.path;
  render_hull_svg(sq, outside, grid, spec);
  const std::string text = slurp(svg.path);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find(spec.hull_color) != std::string::npos);
  CHECK(text.find("<polyline") != std::string::npos);
}

TEST_CASE("empty path renders a blank canvas with axes") {
  LoopPath degenerate;
  degenerate.kind = PathKind::gaussian_bridge;
  degenerate.points = {{0, 0}, {0, 0}, {0, 0}};
  const GridSpec grid{{-1.0, -1.0}, 0.25, 8, 8};
  const CellMask outside(8, 8, MaskRole::outside);
  TempFile svg("blank.svg");
  RenderSpec spec;
  spec.out_path = svg.path;
  render_hull_svg(degenerate, outside, grid, spec);
  const std::string text = slurp(svg.path);
  CHECK(text.find("<line") != std::string::npos);       // axes
  CHECK(text.find("<polyline") == std::string::npos);   // no path drawn
}

TEST_CASE("winding SVG: square interior is one color, zero region black") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 32.0, 0.1);
  const PathRasterAnalysis an = analyze_path(sq, grid);
  TempFile svg("winding.svg");
  RenderSpec spec;
  spec.out_path = svg.path;
  render_winding_svg(an.winding, an.blocked, an.outside, grid, spec);
  const std::string text = slurp(svg.path);
  CHECK(text.find(spec.color_for_index(1)) != std::string::npos);
  CHECK(text.find("index 1") != std::string::npos);
  CHECK(text.find("path cells") != std::string::npos);
}

TEST_CASE("figure-eight winding map uses two lobe colors") {
  LoopPath fe;
  fe.kind = PathKind::lattice_loop;
  fe.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0},
               {0, -1}, {-1, -1}, {-1, 0}, {0, 0}};
  const GridSpec grid = make_grid_for_path(fe, 32.0, 0.1);
  const PathRasterAnalysis an = analyze_path(fe, grid);
  TempFile svg("eight.svg");
  RenderSpec spec;
  spec.out_path = svg.path;
  render_winding_svg(an.winding, an.blocked, an.outside, grid, spec);
  const std::string text = slurp(svg.path);
  CHECK(text.find(spec.color_for_index(1)) != std::string::npos);
  CHECK(text.find(spec.color_for_index(-1)) != std::string::npos);
}

TEST_CASE("palette keeps the zero-index color distinct and validates") {
  RenderSpec spec;
  CHECK(spec.color_for_index(0) == spec.zero_inside_color);
  CHECK(spec.color_for_index(2) != spec.color_for_index(-2));
  spec.blocked_color = spec.zero_inside_color;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("PBM export is a parseable P1 raster with y upward") {
  CellMask mask(3, 2, MaskRole::blocked);
  mask.set(0, 0);
  mask.set(2, 1);
  TempFile pbm("mask.pbm");
  write_mask_pbm(mask, pbm.path);
  std::ifstream is(pbm.path);
  std::string magic;
  int nx = 0;
  int ny = 0;
  is >> magic >> nx >> ny;
  CHECK(magic == "P1");
  CHECK(nx == 3);
  CHECK(ny == 2);
  std::vector<int> bits(6, -1);
  for (int& b : bits) is >> b;
  // First emitted row is j = ny-1 = 1: cells (0,1),(1,1),(2,1).
  CHECK(bits[0] == 0);
  CHECK(bits[2] == 1);
  CHECK(bits[3] == 1);
  CHECK(bits[5] == 0);
}

TEST_CASE("winding CSV lists unblocked cells only, with grid sidecar") {
  const LoopPath sq = square_ccw();
  const GridSpec grid = make_grid_for_path(sq, 16.0, 0.15);
  const PathRasterAnalysis an = analyze_path(sq, grid);
  TempFile csv("wind.csv");
  TempFile sidecar("grid.json");
  write_winding_csv(an.winding, an.blocked, csv.path);
  write_grid_json(grid, sidecar.path);

  std::ifstream is(csv.path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "i,j,n");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == static_cast<std::size_t>(grid.cell_count()) -
                    static_cast<std::size_t>(an.blocked.count()));

  const std::string sj = slurp(sidecar.path);
  CHECK(sj.find("\"cell_size\"") != std::string::npos);
  CHECK(sj.find("\"nx\"") != std::string::npos);
}

}  // TEST_SUITE
