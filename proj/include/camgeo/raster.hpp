#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace camgeo {

/// 8-bit raster, 1 (gray) or 3 (RGB) interleaved channels, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Raster() = default;
  Raster(int w, int h, int ch, std::uint8_t fill = 0);

  std::uint8_t& at(int row, int col, int ch = 0);
  std::uint8_t at(int row, int col, int ch = 0) const;
};

enum class PnmFormat { plain, binary };

/// Reads P2/P5 (PGM) and P3/P6 (PPM), maxval up to 255.
Raster load_pnm(std::istream& in);
Raster load_pnm_file(const std::string& path);

void save_pnm(std::ostream& out, const Raster& r, PnmFormat format = PnmFormat::binary);
void save_pnm_file(const std::string& path, const Raster& r,
                   PnmFormat format = PnmFormat::binary);

}  // namespace camgeo
