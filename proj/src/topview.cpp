#include "camgeo/topview.hpp"

#include <limits>
#include <stdexcept>

namespace camgeo {

TopviewMap topview_map(const CameraMatrix& cam, const GroundExtent& extent,
                       double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution))
    throw std::invalid_argument("topview: resolution must be positive");
  if (!(extent.x_max > extent.x_min) || !(extent.y_max > extent.y_min))
    throw std::invalid_argument("topview: extent must have positive area");

  TopviewMap map;
  map.extent = extent;
  map.resolution = resolution;
  map.cols = static_cast<int>(std::ceil((extent.x_max - extent.x_min) / resolution));
  map.rows = static_cast<int>(std::ceil((extent.y_max - extent.y_min) / resolution));
  map.image_width = cam.intrinsics.image_width_px;
  map.image_height = cam.intrinsics.image_height_px;
  map.source.resize(static_cast<std::size_t>(map.rows) * map.cols);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double w = cam.image_width(), h = cam.image_height();
  for (int row = 0; row < map.rows; ++row) {
    for (int col = 0; col < map.cols; ++col) {
      const Projection pr = project(cam, map.cell_center(row, col));
      ImagePoint& dst = map.source[static_cast<std::size_t>(row) * map.cols + col];
      if (pr.in_front() && pr.pixel.y1 >= 0.0 && pr.pixel.y1 < w &&
          pr.pixel.y2 >= 0.0 && pr.pixel.y2 < h) {
        dst = pr.pixel;
      } else {
        dst = ImagePoint{nan, nan};
      }
    }
  }
  return map;
}

Raster resample_topview(const Raster& image, const TopviewMap& map) {
  if (image.width != map.image_width || image.height != map.image_height)
    throw std::invalid_argument("topview: raster dimensions do not match the camera image size");

  Raster out(map.cols, map.rows, image.channels, 0);
  for (int row = 0; row < map.rows; ++row) {
    for (int col = 0; col < map.cols; ++col) {
      if (!map.valid(row, col)) continue;
      const ImagePoint& src = map.at(row, col);
      // continuous coords live in [0, w) x [0, h); floor picks the pixel
      // whose area contains the point
      const int sc = std::min(static_cast<int>(src.y1), image.width - 1);
      const int sr = std::min(static_cast<int>(src.y2), image.height - 1);
      for (int ch = 0; ch < image.channels; ++ch)
        out.at(row, col, ch) = image.at(sr, sc, ch);
    }
  }
  return out;
}

}  // namespace camgeo
