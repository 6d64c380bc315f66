#include "loophull/grid.hpp"

#include <bit>
#include <cmath>

namespace loophull {

std::int64_t CellMask::count() const {
  std::int64_t total = 0;
  for (const std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

namespace {

bool axis_degenerate(const LoopPath& path, double origin, double h, bool use_y) {
  for (const PlanarPoint& p : path.points) {
    const double v = use_y ? p.y : p.x;
    const double u = (v - origin) / h - 0.5;
    const double j = std::nearbyint(u);
    if (origin + (j + 0.5) * h == v) return true;
  }
  return false;
}

}  // namespace

GridSpec make_grid_for_path(const LoopPath& path, double cells_per_unit,
                            double margin) {
  if (cells_per_unit <= 0.0) {
    throw std::invalid_argument("cells_per_unit must be positive");
  }
  if (!path.closed()) throw GeometryError("path is not closed");

  const double h = 1.0 / cells_per_unit;
  const BoundingBox box = bounding_box(path);
  const double m = std::max(margin, 2.0 * h);

  GridSpec grid;
  grid.cell_size = h;
  grid.origin = {box.lo.x - m, box.lo.y - m};

  // Cell-center rows must avoid every vertex y exactly (half-open crossing
  // rule), and center columns every vertex x (no center may sit on an
  // axis-parallel segment); an odd sub-cell shift of the origin clears any
  // coincidence.
  const double shift = h * (0.5 + std::ldexp(1.0, -20));
  int tries = 0;
  while (axis_degenerate(path, grid.origin.y, h, true)) {
    grid.origin.y -= shift;
    if (++tries > 8) {
      throw GeometryError("could not clear grid-row degeneracy");
    }
  }
  tries = 0;
  while (axis_degenerate(path, grid.origin.x, h, false)) {
    grid.origin.x -= shift;
    if (++tries > 8) {
      throw GeometryError("could not clear grid-column degeneracy");
    }
  }

  grid.nx = static_cast<int>(std::ceil((box.hi.x + m - grid.origin.x) / h));
  grid.ny = static_cast<int>(std::ceil((box.hi.y + m - grid.origin.y) / h));
  if (grid.nx < 5) grid.nx = 5;
  if (grid.ny < 5) grid.ny = 5;
  if (grid.cell_count() > (std::int64_t{1} << 31)) {
    throw GeometryError("grid would exceed 2^31 cells; lower cells_per_unit");
  }
  return grid;
}

}  // namespace loophull
