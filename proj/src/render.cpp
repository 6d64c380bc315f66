#include "loophull/render.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace loophull {

namespace {

const char* kPositivePalette[] = {"#d7301f", "#fc8d59", "#fdcc8a", "#b30000",
                                  "#ef6548"};
const char* kNegativePalette[] = {"#0570b0", "#74a9cf", "#bdc9e1", "#034e7b",
                                  "#3690c0"};

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  return os;
}

struct PixelMap {
  double scale;
  double ox;
  double oy;
  int width;
  int height;

  PixelMap(const GridSpec& grid, int width_px, int height_px) {
    const double wx = grid.nx * grid.cell_size;
    const double wy = grid.ny * grid.cell_size;
    scale = std::min(width_px / wx, height_px / wy);
    ox = grid.origin.x;
    oy = grid.origin.y;
    width = static_cast<int>(std::ceil(wx * scale));
    height = static_cast<int>(std::ceil(wy * scale));
  }
  double px(double x) const { return (x - ox) * scale; }
  // SVG y grows downward; the plane's y grows upward.
  double py(double y) const { return height - (y - oy) * scale; }
};

void svg_header(std::ostream& os, const PixelMap& map,
                const std::string& background) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << map.width
     << "\" height=\"" << map.height << "\" viewBox=\"0 0 " << map.width << ' '
     << map.height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << map.width << "\" height=\""
     << map.height << "\" fill=\"" << background << "\"/>\n";
}

// One rect per horizontal run of same-colored cells keeps files small.
template <typename ColorOf>
void emit_cell_rows(std::ostream& os, const GridSpec& grid, const PixelMap& map,
                    ColorOf&& color_of) {
  const double h = grid.cell_size;
  for (int j = 0; j < grid.ny; ++j) {
    int run_start = 0;
    std::string run_color = color_of(0, j);
    for (int i = 1; i <= grid.nx; ++i) {
      const std::string color = i < grid.nx ? color_of(i, j) : std::string();
      if (color == run_color && i < grid.nx) continue;
      if (!run_color.empty()) {
        const double x0 = map.px(grid.origin.x + run_start * h);
        const double x1 = map.px(grid.origin.x + i * h);
        const double y0 = map.py(grid.origin.y + (j + 1) * h);
        const double y1 = map.py(grid.origin.y + j * h);
        os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\""
           << (x1 - x0) << "\" height=\"" << (y1 - y0) << "\" fill=\""
           << run_color << "\"/>\n";
      }
      run_start = i;
      if (i < grid.nx) run_color = color;
    }
  }
}

void emit_polyline(std::ostream& os, const LoopPath& path, const PixelMap& map,
                   const std::string& color) {
  os << "<polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1\" points=\"";
  for (const PlanarPoint& p : path.points) {
    os << map.px(p.x) << ',' << map.py(p.y) << ' ';
  }
  os << "\"/>\n";
}

void emit_axes(std::ostream& os, const GridSpec& grid, const PixelMap& map) {
  os << "<line x1=\"" << map.px(grid.origin.x) << "\" y1=\"" << map.py(0.0)
     << "\" x2=\"" << map.px(grid.max_x()) << "\" y2=\"" << map.py(0.0)
     << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n"
     << "<line x1=\"" << map.px(0.0) << "\" y1=\"" << map.py(grid.origin.y)
     << "\" x2=\"" << map.px(0.0) << "\" y2=\"" << map.py(grid.max_y())
     << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
}

}  // namespace

std::string RenderSpec::color_for_index(int n) const {
  if (n == 0) return zero_inside_color;
  const auto it = index_colors.find(n);
  if (it != index_colors.end()) return it->second;
  const std::size_t slot = static_cast<std::size_t>(std::abs(n) - 1) % 5;
  return n > 0 ? kPositivePalette[slot] : kNegativePalette[slot];
}

void RenderSpec::validate() const {
  if (blocked_color == zero_inside_color || path_color == zero_inside_color) {
    throw std::invalid_argument(
        "index-0 color must differ from the path/blocked colors");
  }
}

void render_hull_svg(const LoopPath& path, const CellMask& outside,
                     const GridSpec& grid, const RenderSpec& spec) {
  spec.validate();
  std::ofstream os = open_out(spec.out_path);
  const PixelMap map(grid, spec.width_px, spec.height_px);
  svg_header(os, map, spec.background_color);
  const bool degenerate = path.points.size() < 2 ||
                          (bounding_box(path).width() == 0.0 &&
                           bounding_box(path).height() == 0.0);
  if (degenerate) {
    emit_axes(os, grid, map);
    os << "</svg>\n";
    return;
  }
  emit_cell_rows(os, grid, map, [&](int i, int j) -> std::string {
    return outside.test(i, j) ? std::string() : spec.hull_color;
  });
  emit_polyline(os, path, map, spec.path_color);
  os << "</svg>\n";
}

void render_winding_svg(const WindingField& field, const CellMask& blocked,
                        const CellMask& outside, const GridSpec& grid,
                        const RenderSpec& spec) {
  spec.validate();
  std::ofstream os = open_out(spec.out_path);
  const PixelMap map(grid, spec.width_px, spec.height_px);
  svg_header(os, map, spec.background_color);
  emit_cell_rows(os, grid, map, [&](int i, int j) -> std::string {
    if (outside.test(i, j)) return {};
    if (blocked.test(i, j)) return spec.blocked_color;
    return spec.color_for_index(field.at(i, j));
  });
  if (spec.legend) {
    int seen_min = 0;
    int seen_max = 0;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (blocked.test(i, j) || outside.test(i, j)) continue;
        seen_min = std::min(seen_min, field.at(i, j));
        seen_max = std::max(seen_max, field.at(i, j));
      }
    }
    int row = 0;
    auto entry = [&](const std::string& color, const std::string& label) {
      const int y = 10 + 18 * row++;
      os << "<rect x=\"10\" y=\"" << y
         << "\" width=\"14\" height=\"14\" stroke=\"#000000\" fill=\"" << color
         << "\"/>\n"
         << "<text x=\"30\" y=\"" << y + 12
         << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
         << "</text>\n";
    };
    for (int n = seen_max; n >= seen_min; --n) {
      entry(spec.color_for_index(n),
            n == 0 ? "index 0 (inside)" : "index " + std::to_string(n));
    }
    entry(spec.blocked_color, "path cells");
  }
  os << "</svg>\n";
}

void write_mask_pbm(const CellMask& mask, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "P1\n" << mask.nx() << ' ' << mask.ny() << '\n';
  for (int j = mask.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < mask.nx(); ++i) {
      os << (mask.test(i, j) ? '1' : '0');
      os << (i + 1 == mask.nx() ? '\n' : ' ');
    }
  }
}

void write_winding_csv(const WindingField& field, const CellMask& blocked,
                       const std::string& path) {
  std::ofstream os = open_out(path);
  os << "i,j,n\n";
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      if (blocked.test(i, j)) continue;
      os << i << ',' << j << ',' << field.at(i, j) << '\n';
    }
  }
}

void write_grid_json(const GridSpec& grid, const std::string& path) {
  std::ofstream os = open_out(path);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"origin_x\":%.17g,\"origin_y\":%.17g,\"cell_size\":%.17g,"
                "\"nx\":%d,\"ny\":%d}\n",
                grid.origin.x, grid.origin.y, grid.cell_size, grid.nx, grid.ny);
  os << buf;
}

}  // namespace loophull
