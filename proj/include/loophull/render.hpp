#pragma once

#include <map>
#include <string>

#include "loophull/geometry.hpp"
#include "loophull/grid.hpp"

namespace loophull {

struct RenderSpec {
  std::string out_path;
  int width_px = 900;
  int height_px = 900;
  std::string background_color = "#ffffff";
  std::string hull_color = "#d9d9d9";
  std::string path_color = "#1f3a93";
  std::string blocked_color = "#8c8c8c";
  // Index 0 inside the hull is rendered black; other indices cycle through
  // the palette by |n| with warm colors for n > 0 and cool for n < 0.
  std::string zero_inside_color = "#000000";
  std::map<int, std::string> index_colors;
  bool legend = true;

  std::string color_for_index(int n) const;
  // The sentinel/path color must stay distinguishable from index 0.
  void validate() const;
};

// Loop polyline over the filled hull raster (hull = not outside).
void render_hull_svg(const LoopPath& path, const CellMask& outside,
                     const GridSpec& grid, const RenderSpec& spec);

// Per-cell winding-index map with legend; outside cells keep the background.
void render_winding_svg(const WindingField& field, const CellMask& blocked,
                        const CellMask& outside, const GridSpec& grid,
                        const RenderSpec& spec);

// ASCII PBM (P1) raster of a mask; row j = ny-1 is emitted first so the
// image reads with y upward.
void write_mask_pbm(const CellMask& mask, const std::string& path);

// CSV "i,j,n" for unblocked cells.
void write_winding_csv(const WindingField& field, const CellMask& blocked,
                       const std::string& path);

// JSON sidecar with the GridSpec.
void write_grid_json(const GridSpec& grid, const std::string& path);

}  // namespace loophull
