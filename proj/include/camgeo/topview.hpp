#pragma once

#include <vector>

#include "camgeo/camera.hpp"
#include "camgeo/raster.hpp"

namespace camgeo {

/// Axis-aligned ground rectangle, meters.
struct GroundExtent {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Per-cell source pixels for warping an image onto the ground plane.
/// Row 0 is the far edge (largest x2), columns grow with x1; cells whose
/// ground point is behind the camera or projects outside the image are
/// sentinels (NaN source coordinates).
struct TopviewMap {
  GroundExtent extent;
  double resolution = 0.0;  // meters per cell
  int cols = 0;
  int rows = 0;
  int image_width = 0;   // raster dimensions the map was built for
  int image_height = 0;
  std::vector<ImagePoint> source;  // rows*cols, row-major

  const ImagePoint& at(int row, int col) const { return source[static_cast<std::size_t>(row) * cols + col]; }
  bool valid(int row, int col) const { return std::isfinite(at(row, col).y1); }

  /// Ground-plane cell center for a grid position.
  WorldPoint cell_center(int row, int col) const {
    return WorldPoint{extent.x_min + (col + 0.5) * resolution,
                      extent.y_max - (row + 0.5) * resolution, 0.0};
  }
};

TopviewMap topview_map(const CameraMatrix& cam, const GroundExtent& extent,
                       double resolution);

/// Nearest-neighbor warp; sentinel cells become 0.
Raster resample_topview(const Raster& image, const TopviewMap& map);

}  // namespace camgeo
