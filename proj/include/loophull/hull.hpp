#pragma once

#include "loophull/geometry.hpp"
#include "loophull/grid.hpp"

namespace loophull {

// Supercover rasterization: a cell is blocked iff some path segment meets
// its closed square, including both side cells at an exactly crossed corner.
// Throws GeometryError when a vertex comes within one cell of the grid edge.
// OpenMP over segments; the result is a pure union, so it is bit-identical
// for any thread count.
CellMask rasterize_path(const LoopPath& path, const GridSpec& grid);

// 4-connected flood fill from the full boundary ring through unblocked
// cells. Level-synchronous parallel frontier; the visited set is identical
// for any thread count.
CellMask flood_fill_outside(const CellMask& blocked, const GridSpec& grid);

// Hull = complement of the outside component; blocked cells count as hull.
RegionAreas hull_area(const LoopPath& path, const GridSpec& grid);

// Scanline winding field: per row of cell centers, signed crossings of the
// horizontal line under the half-open rule min(y0,y1) <= y_row < max(y0,y1),
// winding = sum of crossing signs strictly to the right of the center.
// Blocked cells receive the sentinel. OpenMP over rows.
WindingField winding_field(const LoopPath& path, const GridSpec& grid,
                           const CellMask& blocked);
WindingField winding_field(const LoopPath& path, const GridSpec& grid);

// Cell counts and areas of the hull partition (winding regions, index-0
// area inside the hull, blocked band).
RegionAreas region_areas(const WindingField& w, const CellMask& outside,
                         const CellMask& blocked, const GridSpec& grid);

struct PathRasterAnalysis {
  CellMask blocked;
  CellMask outside;
  WindingField winding;
  RegionAreas areas;
};

// Full pipeline: rasterize, flood, winding, areas.
PathRasterAnalysis analyze_path(const LoopPath& path, const GridSpec& grid);

// Single-threaded reference implementations, kept for correctness testing,
// the kernel benchmark, and per-sample work inside the sample-parallel
// Monte Carlo loops (parallelism belongs to the outer loop there). Outputs
// are bit-identical to the parallel ones.
namespace serial {
CellMask rasterize_path(const LoopPath& path, const GridSpec& grid);
CellMask flood_fill_outside(const CellMask& blocked, const GridSpec& grid);
WindingField winding_field(const LoopPath& path, const GridSpec& grid,
                           const CellMask& blocked);
RegionAreas hull_area(const LoopPath& path, const GridSpec& grid);
PathRasterAnalysis analyze_path(const LoopPath& path, const GridSpec& grid);
}  // namespace serial

namespace detail {
// Closed segment vs closed axis-aligned box intersection (slab test).
bool segment_touches_box(double ax, double ay, double bx, double by,
                         double x0, double y0, double x1, double y1);
}  // namespace detail

}  // namespace loophull
