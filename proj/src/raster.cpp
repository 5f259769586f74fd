#include "camgeo/raster.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace camgeo {

Raster::Raster(int w, int h, int ch, std::uint8_t fill) : width(w), height(h), channels(ch) {
  if (w <= 0 || h <= 0 || (ch != 1 && ch != 3))
    throw std::invalid_argument("raster: dimensions must be positive, channels 1 or 3");
  data.assign(static_cast<std::size_t>(w) * h * ch, fill);
}

std::uint8_t& Raster::at(int row, int col, int ch) {
  return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
}

std::uint8_t Raster::at(int row, int col, int ch) const {
  return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
}

namespace {

// next token, skipping whitespace and '#' comments
std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw std::runtime_error("pnm: unexpected end of header");
  return tok;
}

int pnm_int(std::istream& in) {
  const std::string tok = pnm_token(in);
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("pnm: malformed integer '" + tok + "' in header");
  }
}

}  // namespace

Raster load_pnm(std::istream& in) {
  const std::string magic = pnm_token(in);
  bool binary;
  int channels;
  if (magic == "P2") { binary = false; channels = 1; }
  else if (magic == "P3") { binary = false; channels = 3; }
  else if (magic == "P5") { binary = true; channels = 1; }
  else if (magic == "P6") { binary = true; channels = 3; }
  else throw std::runtime_error("pnm: unsupported magic '" + magic + "' (need P2/P3/P5/P6)");

  const int w = pnm_int(in);
  const int h = pnm_int(in);
  const int maxval = pnm_int(in);
  if (w <= 0 || h <= 0) throw std::runtime_error("pnm: non-positive dimensions");
  if (maxval <= 0 || maxval > 255)
    throw std::runtime_error("pnm: only maxval <= 255 supported");

  Raster r(w, h, channels);
  const std::size_t n = r.data.size();
  if (binary) {
    // exactly one whitespace byte separates header from pixel data
    in.read(reinterpret_cast<char*>(r.data.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      throw std::runtime_error("pnm: truncated pixel data");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const int v = pnm_int(in);
      if (v < 0 || v > maxval) throw std::runtime_error("pnm: sample out of range");
      r.data[i] = static_cast<std::uint8_t>(v);
    }
  }
  return r;
}

Raster load_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("pnm: cannot open '" + path + "'");
  return load_pnm(in);
}

void save_pnm(std::ostream& out, const Raster& r, PnmFormat format) {
  if (r.width <= 0 || r.height <= 0 || (r.channels != 1 && r.channels != 3))
    throw std::invalid_argument("pnm: empty raster");
  const bool binary = format == PnmFormat::binary;
  const char* magic = r.channels == 1 ? (binary ? "P5" : "P2") : (binary ? "P6" : "P3");
  out << magic << "\n" << r.width << " " << r.height << "\n255\n";
  if (binary) {
    out.write(reinterpret_cast<const char*>(r.data.data()),
              static_cast<std::streamsize>(r.data.size()));
  } else {
    const int per_row = r.width * r.channels;
    for (int row = 0; row < r.height; ++row) {
      for (int i = 0; i < per_row; ++i) {
        if (i) out << ' ';
        out << static_cast<int>(r.data[static_cast<std::size_t>(row) * per_row + i]);
      }
      out << '\n';
    }
  }
}

void save_pnm_file(const std::string& path, const Raster& r, PnmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("pnm: cannot open '" + path + "' for writing");
  save_pnm(out, r, format);
  if (!out) throw std::runtime_error("pnm: write failed for '" + path + "'");
}

}  // namespace camgeo
