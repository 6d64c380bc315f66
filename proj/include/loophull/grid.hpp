#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "loophull/geometry.hpp"

namespace loophull {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform cell grid. Cell (i,j) covers
// [origin.x + i*h, origin.x + (i+1)*h] x [origin.y + j*h, origin.y + (j+1)*h]
// and its center sits at origin + ((i+1/2)h, (j+1/2)h).
struct GridSpec {
  PlanarPoint origin;
  double cell_size = 1.0;
  int nx = 0;
  int ny = 0;

  double center_x(int i) const { return origin.x + (i + 0.5) * cell_size; }
  double center_y(int j) const { return origin.y + (j + 0.5) * cell_size; }
  double max_x() const { return origin.x + nx * cell_size; }
  double max_y() const { return origin.y + ny * cell_size; }
  std::int64_t cell_count() const {
    return static_cast<std::int64_t>(nx) * ny;
  }
  double cell_area() const { return cell_size * cell_size; }
};

// Grid that strictly contains the path's bounding box with margin at least
// 2h on every side. If a path vertex coordinate coincides exactly with a
// cell-center row or column, the origin is shifted by the odd sub-cell
// offset h*(1/2 + 2^-20) until no coincidence remains, so the half-open
// crossing rule never sees a degenerate configuration.
GridSpec make_grid_for_path(const LoopPath& path, double cells_per_unit,
                            double margin);

enum class MaskRole { blocked, outside, hull };

class CellMask {
 public:
  CellMask() = default;
  CellMask(int nx, int ny, MaskRole role)
      : nx_(nx), ny_(ny), role_(role),
        words_((static_cast<std::size_t>(nx) * ny + 63) / 64, 0) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  MaskRole role() const { return role_; }

  bool test(int i, int j) const {
    const std::size_t idx = index(i, j);
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(int i, int j) {
    const std::size_t idx = index(i, j);
    words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }
  bool test_index(std::size_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set_index(std::size_t idx) {
    words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }

  std::int64_t count() const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const CellMask& a, const CellMask& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.words_ == b.words_;
  }

 private:
  int nx_ = 0;
  int ny_ = 0;
  MaskRole role_ = MaskRole::blocked;
  std::vector<std::uint64_t> words_;
};

// Integer winding index per cell; blocked cells carry the sentinel.
struct WindingField {
  static constexpr std::int32_t kOnPathSentinel =
      std::numeric_limits<std::int32_t>::min();

  int nx = 0;
  int ny = 0;
  std::vector<std::int32_t> values;

  std::int32_t at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * nx + i];
  }
};

// Areas of the hull partition: winding regions over the unblocked hull
// cells, the index-0 area inside the hull, and the blocked band. Areas are
// cell counts times the cell area; the counts are kept so the partition
// identity
//   zero_inside_cells + sum(per_index_cells) + blocked_cells == hull_cells
// can be checked exactly.
struct RegionAreas {
  double hull_area = 0.0;
  double zero_inside = 0.0;
  double blocked_area = 0.0;
  std::map<int, double> per_index;

  double cell_size = 0.0;
  std::int64_t total_cells = 0;
  std::int64_t outside_cells = 0;
  std::int64_t hull_cells = 0;
  std::int64_t blocked_cells = 0;
  std::int64_t zero_inside_cells = 0;
  std::int64_t outside_nonzero_cells = 0;  // outside cells must wind zero
  std::map<int, std::int64_t> per_index_cells;

  std::int64_t partition_residual_cells() const {
    std::int64_t s = zero_inside_cells + blocked_cells;
    for (const auto& [n, c] : per_index_cells) s += c;
    return hull_cells - s;
  }
  double per_index_sum() const {
    double s = 0.0;
    for (const auto& [n, a] : per_index) s += a;
    return s;
  }
};

}  // namespace loophull
