#include "loophull/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "loophull/numerics.hpp"

namespace loophull {

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::gaussian_bridge:
      return "gaussian_bridge";
    case PathKind::lattice_loop:
      return "lattice_loop";
  }
  return "unknown";
}

PathKind path_kind_from_string(const std::string& s) {
  if (s == "gaussian_bridge" || s == "gaussian") return PathKind::gaussian_bridge;
  if (s == "lattice_loop" || s == "lattice") return PathKind::lattice_loop;
  throw std::invalid_argument("unknown path kind: " + s);
}

BoundingBox bounding_box(const LoopPath& path) {
  if (path.points.empty()) throw std::invalid_argument("empty path");
  BoundingBox box{path.points.front(), path.points.front()};
  for (const PlanarPoint& p : path.points) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

double polygon_area(const LoopPath& path) {
  const auto& pts = path.points;
  if (pts.size() < 3) return 0.0;
  const PlanarPoint o = pts.front();
  CompensatedSum sum;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double ax = pts[k].x - o.x;
    const double ay = pts[k].y - o.y;
    const double bx = pts[k + 1].x - o.x;
    const double by = pts[k + 1].y - o.y;
    sum.add(ax * by - bx * ay);
  }
  return 0.5 * sum.value();
}

double path_length(const LoopPath& path) {
  CompensatedSum sum;
  for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
    sum.add(std::hypot(path.points[k + 1].x - path.points[k].x,
                       path.points[k + 1].y - path.points[k].y));
  }
  return sum.value();
}

PointWinding winding_number_angle(const LoopPath& path, PlanarPoint z) {
  PointWinding result;
  const auto& pts = path.points;
  if (pts.size() < 2) return result;
  CompensatedSum total;
  double vx = pts[0].x - z.x;
  double vy = pts[0].y - z.y;
  if (vx == 0.0 && vy == 0.0) {
    result.on_path = true;
    return result;
  }
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double wx = pts[k].x - z.x;
    const double wy = pts[k].y - z.y;
    const double cross = vx * wy - vy * wx;
    const double dot = vx * wx + vy * wy;
    if (cross == 0.0 && dot <= 0.0) {
      // z on the segment (or a vertex): the turn is undefined.
      result.on_path = true;
      return result;
    }
    total.add(std::atan2(cross, dot));
    vx = wx;
    vy = wy;
  }
  result.winding =
      static_cast<int>(std::lround(total.value() / (2.0 * std::numbers::pi)));
  return result;
}

PointWinding winding_number_crossing(const LoopPath& path, PlanarPoint z) {
  PointWinding result;
  const auto& pts = path.points;
  int w = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const PlanarPoint& a = pts[k];
    const PlanarPoint& b = pts[k + 1];
    const double cross = (b.x - a.x) * (z.y - a.y) - (z.x - a.x) * (b.y - a.y);
    if (cross == 0.0 && std::min(a.x, b.x) <= z.x && z.x <= std::max(a.x, b.x) &&
        std::min(a.y, b.y) <= z.y && z.y <= std::max(a.y, b.y)) {
      result.on_path = true;
      return result;
    }
    if (a.y <= z.y) {
      if (b.y > z.y && cross > 0.0) ++w;  // upward crossing, z left of segment
    } else {
      if (b.y <= z.y && cross < 0.0) --w;  // downward crossing, z right
    }
  }
  result.winding = w;
  return result;
}

LoopPath scaled(const LoopPath& path, double factor) {
  LoopPath out = path;
  for (PlanarPoint& p : out.points) {
    p.x *= factor;
    p.y *= factor;
  }
  return out;
}

LoopPath translated(const LoopPath& path, PlanarPoint delta) {
  LoopPath out = path;
  for (PlanarPoint& p : out.points) {
    p.x += delta.x;
    p.y += delta.y;
  }
  return out;
}

LoopPath subsample_path(const LoopPath& path, int factor) {
  const int n = path.steps();
  if (factor < 1 || n % factor != 0) {
    throw std::invalid_argument("subsample factor must divide the step count");
  }
  LoopPath out;
  out.kind = path.kind;
  out.points.reserve(static_cast<std::size_t>(n / factor) + 1);
  for (int k = 0; k <= n; k += factor) {
    out.points.push_back(path.points[static_cast<std::size_t>(k)]);
  }
  return out;
}

void export_path(const LoopPath& path, std::ostream& os) {
  os << path.steps() << ' ' << to_string(path.kind) << '\n';
  char buf[64];
  for (const PlanarPoint& p : path.points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x, p.y);
    os << buf;
  }
}

LoopPath import_path(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("empty path file");
  std::istringstream hs(header);
  long long n = 0;
  std::string kind;
  if (!(hs >> n >> kind) || n < 1) {
    throw std::invalid_argument("bad path header: " + header);
  }
  LoopPath path;
  path.kind = path_kind_from_string(kind);
  path.points.resize(static_cast<std::size_t>(n) + 1);
  for (auto& p : path.points) {
    if (!(is >> p.x >> p.y)) {
      throw std::invalid_argument("truncated path file");
    }
  }
  if (!path.closed()) {
    throw std::invalid_argument("path file does not describe a closed loop");
  }
  return path;
}

}  // namespace loophull
