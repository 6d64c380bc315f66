#include "loophull/hull.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

namespace loophull {

namespace detail {

bool segment_touches_box(double ax, double ay, double bx, double by,
                         double x0, double y0, double x1, double y1) {
  double tmin = 0.0;
  double tmax = 1.0;
  const double dx = bx - ax;
  if (dx == 0.0) {
    if (ax < x0 || ax > x1) return false;
  } else {
    double t1 = (x0 - ax) / dx;
    double t2 = (x1 - ax) / dx;
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return false;
  }
  const double dy = by - ay;
  if (dy == 0.0) {
    if (ay < y0 || ay > y1) return false;
  } else {
    double t1 = (y0 - ay) / dy;
    double t2 = (y1 - ay) / dy;
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return false;
  }
  return true;
}

}  // namespace detail

namespace {

void check_path_in_grid(const LoopPath& path, const GridSpec& grid) {
  for (const PlanarPoint& p : path.points) {
    if (p.x <= grid.origin.x || p.x >= grid.max_x() || p.y <= grid.origin.y ||
        p.y >= grid.max_y()) {
      throw GeometryError("path exits the grid");
    }
  }
}

// Visits every cell whose closed square the segment touches. Candidate
// ranges are widened by one cell so exact boundary contacts are never lost
// to the floor rounding.
template <typename Fn>
void for_each_touched_cell(const PlanarPoint& a, const PlanarPoint& b,
                           const GridSpec& grid, Fn&& fn) {
  const double h = grid.cell_size;
  int i0 = static_cast<int>(std::floor((std::min(a.x, b.x) - grid.origin.x) / h)) - 1;
  int i1 = static_cast<int>(std::floor((std::max(a.x, b.x) - grid.origin.x) / h)) + 1;
  int j0 = static_cast<int>(std::floor((std::min(a.y, b.y) - grid.origin.y) / h)) - 1;
  int j1 = static_cast<int>(std::floor((std::max(a.y, b.y) - grid.origin.y) / h)) + 1;
  i0 = std::max(i0, 0);
  j0 = std::max(j0, 0);
  i1 = std::min(i1, grid.nx - 1);
  j1 = std::min(j1, grid.ny - 1);
  for (int j = j0; j <= j1; ++j) {
    const double y0 = grid.origin.y + j * h;
    const double y1 = grid.origin.y + (j + 1) * h;
    for (int i = i0; i <= i1; ++i) {
      const double x0 = grid.origin.x + i * h;
      const double x1 = grid.origin.x + (i + 1) * h;
      if (detail::segment_touches_box(a.x, a.y, b.x, b.y, x0, y0, x1, y1)) {
        fn(i, j);
      }
    }
  }
}

struct Crossing {
  double x;
  std::int32_t sign;
};

// Signed crossings of each cell-center row, bucketed per row. Half-open
// rule: a segment contributes to row y_j iff min(y) <= y_j < max(y).
std::vector<std::vector<Crossing>> build_row_crossings(const LoopPath& path,
                                                       const GridSpec& grid) {
  std::vector<std::vector<Crossing>> rows(grid.ny);
  const double oy = grid.origin.y;
  const double h = grid.cell_size;
  for (std::size_t s = 0; s + 1 < path.points.size(); ++s) {
    const PlanarPoint a = path.points[s];
    const PlanarPoint b = path.points[s + 1];
    if (a.y == b.y) continue;
    const double ylo = std::min(a.y, b.y);
    const double yhi = std::max(a.y, b.y);
    int j = static_cast<int>(std::floor((ylo - oy) / h - 0.5));
    if (j < 0) j = 0;
    while (j < grid.ny && oy + (j + 0.5) * h < ylo) ++j;
    while (j > 0 && oy + (j - 0.5) * h >= ylo) --j;
    const double inv_dy = 1.0 / (b.y - a.y);
    const std::int32_t sign = (b.y > a.y) ? 1 : -1;
    for (; j < grid.ny; ++j) {
      const double yr = oy + (j + 0.5) * h;
      if (!(yr < yhi)) break;
      rows[j].push_back({a.x + (b.x - a.x) * ((yr - a.y) * inv_dy), sign});
    }
  }
  return rows;
}

WindingField winding_field_impl(const LoopPath& path, const GridSpec& grid,
                                const CellMask& blocked, bool parallel) {
  WindingField field;
  field.nx = grid.nx;
  field.ny = grid.ny;
  field.values.assign(static_cast<std::size_t>(grid.cell_count()), 0);

  std::vector<std::vector<Crossing>> rows = build_row_crossings(path, grid);

#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (int j = 0; j < grid.ny; ++j) {
    std::vector<Crossing>& cr = rows[j];
    std::sort(cr.begin(), cr.end(), [](const Crossing& u, const Crossing& v) {
      return u.x != v.x ? u.x < v.x : u.sign < v.sign;
    });
    std::vector<std::int32_t> suffix(cr.size() + 1, 0);
    for (std::size_t t = cr.size(); t-- > 0;) {
      suffix[t] = suffix[t + 1] + cr[t].sign;
    }
    std::size_t p = 0;
    const std::size_t base = static_cast<std::size_t>(j) * grid.nx;
    for (int i = 0; i < grid.nx; ++i) {
      const double cx = grid.center_x(i);
      // A crossing exactly at the center abscissa would mean the center
      // lies on a segment; such a cell is blocked (supercover) and carries
      // the sentinel, so the strict right-of-center rule never ties.
      while (p < cr.size() && cr[p].x <= cx) ++p;
      field.values[base + i] =
          blocked.test(i, j) ? WindingField::kOnPathSentinel : suffix[p];
    }
  }
  return field;
}

}  // namespace

CellMask rasterize_path(const LoopPath& path, const GridSpec& grid) {
  check_path_in_grid(path, grid);
  CellMask blocked(grid.nx, grid.ny, MaskRole::blocked);
  std::vector<std::uint64_t>& words = blocked.words();
  const std::int64_t nseg = static_cast<std::int64_t>(path.points.size()) - 1;
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < nseg; ++s) {
    for_each_touched_cell(
        path.points[s], path.points[s + 1], grid, [&](int i, int j) {
          const std::size_t idx = blocked.index(i, j);
          std::atomic_ref<std::uint64_t>(words[idx >> 6])
              .fetch_or(std::uint64_t{1} << (idx & 63),
                        std::memory_order_relaxed);
        });
  }
  return blocked;
}

CellMask flood_fill_outside(const CellMask& blocked, const GridSpec& grid) {
  CellMask outside(grid.nx, grid.ny, MaskRole::outside);
  std::vector<std::uint64_t>& words = outside.words();
  const int nx = grid.nx;
  const int ny = grid.ny;

  auto try_claim = [&](std::int64_t idx) -> bool {
    if (blocked.test_index(static_cast<std::size_t>(idx))) return false;
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    const std::uint64_t old =
        std::atomic_ref<std::uint64_t>(words[static_cast<std::size_t>(idx) >> 6])
            .fetch_or(bit, std::memory_order_relaxed);
    return (old & bit) == 0;
  };

  std::vector<std::int64_t> frontier;
  for (int i = 0; i < nx; ++i) {
    if (try_claim(i)) frontier.push_back(i);
    const std::int64_t top = static_cast<std::int64_t>(ny - 1) * nx + i;
    if (ny > 1 && try_claim(top)) frontier.push_back(top);
  }
  for (int j = 1; j + 1 < ny; ++j) {
    const std::int64_t left = static_cast<std::int64_t>(j) * nx;
    if (try_claim(left)) frontier.push_back(left);
    const std::int64_t right = left + nx - 1;
    if (nx > 1 && try_claim(right)) frontier.push_back(right);
  }

  // Level-synchronous expansion; claims are idempotent, so the final mask
  // does not depend on scheduling.
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
#pragma omp parallel
    {
      std::vector<std::int64_t> local;
#pragma omp for nowait schedule(static)
      for (std::int64_t t = 0; t < static_cast<std::int64_t>(frontier.size());
           ++t) {
        const std::int64_t idx = frontier[static_cast<std::size_t>(t)];
        const int i = static_cast<int>(idx % nx);
        const int j = static_cast<int>(idx / nx);
        if (i > 0 && try_claim(idx - 1)) local.push_back(idx - 1);
        if (i + 1 < nx && try_claim(idx + 1)) local.push_back(idx + 1);
        if (j > 0 && try_claim(idx - nx)) local.push_back(idx - nx);
        if (j + 1 < ny && try_claim(idx + nx)) local.push_back(idx + nx);
      }
#pragma omp critical
      next.insert(next.end(), local.begin(), local.end());
    }
    frontier.swap(next);
  }
  return outside;
}

namespace {

RegionAreas hull_area_from_masks(const CellMask& blocked,
                                 const CellMask& outside,
                                 const GridSpec& grid) {
  RegionAreas ra;
  ra.cell_size = grid.cell_size;
  ra.total_cells = grid.cell_count();
  ra.outside_cells = outside.count();
  ra.hull_cells = ra.total_cells - ra.outside_cells;
  ra.blocked_cells = blocked.count();
  const double h2 = grid.cell_area();
  ra.hull_area = static_cast<double>(ra.hull_cells) * h2;
  ra.blocked_area = static_cast<double>(ra.blocked_cells) * h2;
  return ra;
}

}  // namespace

RegionAreas hull_area(const LoopPath& path, const GridSpec& grid) {
  const CellMask blocked = rasterize_path(path, grid);
  const CellMask outside = flood_fill_outside(blocked, grid);
  return hull_area_from_masks(blocked, outside, grid);
}

WindingField winding_field(const LoopPath& path, const GridSpec& grid,
                           const CellMask& blocked) {
  return winding_field_impl(path, grid, blocked, true);
}

WindingField winding_field(const LoopPath& path, const GridSpec& grid) {
  return winding_field_impl(path, grid, rasterize_path(path, grid), true);
}

namespace {

// Unblocked hull cells are classified by the winding number of their
// centers; blocked cells are booked as the path band. Together with the
// outside component this is an exact partition of the raster.
RegionAreas region_areas_impl(const WindingField& w, const CellMask& outside,
                              const CellMask& blocked, const GridSpec& grid,
                              bool parallel) {
  RegionAreas ra;
  ra.cell_size = grid.cell_size;
  ra.total_cells = grid.cell_count();

  std::int64_t out_cells = 0;
  std::int64_t blocked_cells = 0;
  std::int64_t zero_cells = 0;
  std::int64_t outside_nonzero = 0;
  std::map<int, std::int64_t> per;
#pragma omp parallel if (parallel)
  {
    std::int64_t l_out = 0;
    std::int64_t l_blk = 0;
    std::int64_t l_zero = 0;
    std::int64_t l_anom = 0;
    std::map<int, std::int64_t> l_per;
#pragma omp for nowait schedule(static)
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (outside.test(i, j)) {
          ++l_out;
          if (w.at(i, j) != 0) ++l_anom;
          continue;
        }
        if (blocked.test(i, j)) {
          ++l_blk;
          continue;
        }
        const std::int32_t v = w.at(i, j);
        if (v == 0) {
          ++l_zero;
        } else {
          ++l_per[v];
        }
      }
    }
#pragma omp critical
    {
      out_cells += l_out;
      blocked_cells += l_blk;
      zero_cells += l_zero;
      outside_nonzero += l_anom;
      for (const auto& [n, c] : l_per) per[n] += c;
    }
  }

  ra.outside_cells = out_cells;
  ra.hull_cells = ra.total_cells - out_cells;
  ra.blocked_cells = blocked_cells;
  ra.zero_inside_cells = zero_cells;
  ra.outside_nonzero_cells = outside_nonzero;
  ra.per_index_cells = std::move(per);

  const double h2 = grid.cell_area();
  ra.hull_area = static_cast<double>(ra.hull_cells) * h2;
  ra.blocked_area = static_cast<double>(ra.blocked_cells) * h2;
  ra.zero_inside = static_cast<double>(ra.zero_inside_cells) * h2;
  for (const auto& [n, c] : ra.per_index_cells) {
    ra.per_index[n] = static_cast<double>(c) * h2;
  }
  return ra;
}

}  // namespace

RegionAreas region_areas(const WindingField& w, const CellMask& outside,
                         const CellMask& blocked, const GridSpec& grid) {
  return region_areas_impl(w, outside, blocked, grid, true);
}

PathRasterAnalysis analyze_path(const LoopPath& path, const GridSpec& grid) {
  PathRasterAnalysis out;
  out.blocked = rasterize_path(path, grid);
  out.outside = flood_fill_outside(out.blocked, grid);
  out.winding = winding_field(path, grid, out.blocked);
  out.areas = region_areas(out.winding, out.outside, out.blocked, grid);
  return out;
}

namespace serial {

CellMask rasterize_path(const LoopPath& path, const GridSpec& grid) {
  check_path_in_grid(path, grid);
  CellMask blocked(grid.nx, grid.ny, MaskRole::blocked);
  for (std::size_t s = 0; s + 1 < path.points.size(); ++s) {
    for_each_touched_cell(path.points[s], path.points[s + 1], grid,
                          [&](int i, int j) { blocked.set(i, j); });
  }
  return blocked;
}

CellMask flood_fill_outside(const CellMask& blocked, const GridSpec& grid) {
  const int nx = grid.nx;
  const int ny = grid.ny;
  CellMask outside(grid.nx, grid.ny, MaskRole::outside);
  std::vector<std::int64_t> stack;
  auto visit = [&](std::int64_t idx) {
    const std::size_t u = static_cast<std::size_t>(idx);
    if (blocked.test_index(u) || outside.test_index(u)) return;
    outside.set_index(u);
    stack.push_back(idx);
  };
  for (int i = 0; i < nx; ++i) {
    visit(i);
    if (ny > 1) visit(static_cast<std::int64_t>(ny - 1) * nx + i);
  }
  for (int j = 1; j + 1 < ny; ++j) {
    visit(static_cast<std::int64_t>(j) * nx);
    if (nx > 1) visit(static_cast<std::int64_t>(j) * nx + nx - 1);
  }
  while (!stack.empty()) {
    const std::int64_t idx = stack.back();
    stack.pop_back();
    const int i = static_cast<int>(idx % nx);
    const int j = static_cast<int>(idx / nx);
    if (i > 0) visit(idx - 1);
    if (i + 1 < nx) visit(idx + 1);
    if (j > 0) visit(idx - nx);
    if (j + 1 < ny) visit(idx + nx);
  }
  return outside;
}

WindingField winding_field(const LoopPath& path, const GridSpec& grid,
                           const CellMask& blocked) {
  return winding_field_impl(path, grid, blocked, false);
}

RegionAreas hull_area(const LoopPath& path, const GridSpec& grid) {
  const CellMask blocked = serial::rasterize_path(path, grid);
  const CellMask outside = serial::flood_fill_outside(blocked, grid);
  return hull_area_from_masks(blocked, outside, grid);
}

PathRasterAnalysis analyze_path(const LoopPath& path, const GridSpec& grid) {
  PathRasterAnalysis out;
  out.blocked = serial::rasterize_path(path, grid);
  out.outside = serial::flood_fill_outside(out.blocked, grid);
  out.winding = serial::winding_field(path, grid, out.blocked);
  out.areas = region_areas_impl(out.winding, out.outside, out.blocked, grid,
                                false);
  return out;
}

}  // namespace serial

}  // namespace loophull
