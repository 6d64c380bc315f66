#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace loophull {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

enum class PathKind { gaussian_bridge, lattice_loop };

std::string to_string(PathKind kind);
PathKind path_kind_from_string(const std::string& s);

// Closed polygonal loop with N uniform time steps; points has N+1 entries
// and points.front() == points.back().
struct LoopPath {
  std::vector<PlanarPoint> points;
  PathKind kind = PathKind::gaussian_bridge;

  int steps() const { return static_cast<int>(points.size()) - 1; }
  bool closed() const {
    return points.size() >= 2 && points.front() == points.back();
  }
};

struct BoundingBox {
  PlanarPoint lo;
  PlanarPoint hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

BoundingBox bounding_box(const LoopPath& path);

// Signed shoelace area, compensated summation, anchored at the first vertex.
double polygon_area(const LoopPath& path);

double path_length(const LoopPath& path);

struct PointWinding {
  int winding = 0;
  bool on_path = false;
};

// Winding number of the loop around z by accumulating the continuous
// argument of points[k] - z. Sets on_path when z lies on a vertex or
// segment (winding is then meaningless).
PointWinding winding_number_angle(const LoopPath& path, PlanarPoint z);

// Same quantity by the signed ray-crossing rule; integer arithmetic-style
// route kept independent of the angle accumulation.
PointWinding winding_number_crossing(const LoopPath& path, PlanarPoint z);

LoopPath scaled(const LoopPath& path, double factor);
LoopPath translated(const LoopPath& path, PlanarPoint delta);

// Every factor-th vertex of the loop (factor must divide the step count).
// Restricting a bridge to a coarser uniform grid yields a bridge with the
// exact coarse-grid law, which couples refinement comparisons sample by
// sample.
LoopPath subsample_path(const LoopPath& path, int factor);

// Text format: header "N kind", then N+1 lines "x y" with full precision
// (round-trips doubles exactly).
void export_path(const LoopPath& path, std::ostream& os);
LoopPath import_path(std::istream& is);

}  // namespace loophull
