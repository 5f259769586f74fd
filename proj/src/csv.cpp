#include "camgeo/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace camgeo {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& what, int line) {
  throw std::invalid_argument(what + " (line " + std::to_string(line) + ")");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_finite(const std::string& cell, int line) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
    fail("field '" + cell + "' is not a finite decimal", line);
  return v;
}

// reads lines, tolerating trailing '\r' and skipping fully empty lines
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

void expect_header(const std::string& line, const std::string& expected, int lineno) {
  if (line != expected)
    fail("expected header '" + expected + "', got '" + line + "'", lineno);
}

void register_id(std::set<std::string>& seen, const std::string& id, int line) {
  if (id.empty()) fail("empty id", line);
  if (!seen.insert(id).second) fail("duplicate id '" + id + "'", line);
}

}  // namespace

std::vector<AnnotationRecord> read_annotations(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) throw std::invalid_argument("annotations: missing header row");
  expect_header(line, "object_id,foot_x,foot_y,head_x,head_y,height_m", lineno);

  std::vector<AnnotationRecord> out;
  std::set<std::string> ids;
  while (next_line(in, line, lineno)) {
    const auto cells = split_csv(line);
    if (cells.size() != 6) fail("expected 6 fields", lineno);
    register_id(ids, cells[0], lineno);
    AnnotationRecord rec;
    rec.id = cells[0];
    rec.annotation.foot = ImagePoint{parse_finite(cells[1], lineno), parse_finite(cells[2], lineno)};
    rec.annotation.head = ImagePoint{parse_finite(cells[3], lineno), parse_finite(cells[4], lineno)};
    rec.annotation.known_height_m = parse_finite(cells[5], lineno);
    if (!(rec.annotation.known_height_m > 0.0)) fail("height_m must be positive", lineno);
    out.push_back(std::move(rec));
  }
  return out;
}

CorrespondenceFile read_correspondences(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno))
    throw std::invalid_argument("correspondences: missing header row");

  CorrespondenceFile file;
  if (line == "id,image_x,image_y,world_x,world_y") {
    file.geographic = false;
  } else if (line == "id,image_x,image_y,lat,lon") {
    file.geographic = true;
  } else {
    fail("expected header 'id,image_x,image_y,world_x,world_y' or "
         "'id,image_x,image_y,lat,lon', got '" + line + "'", lineno);
  }

  std::set<std::string> ids;
  while (next_line(in, line, lineno)) {
    const auto cells = split_csv(line);
    if (cells.size() != 5) fail("expected 5 fields", lineno);
    register_id(ids, cells[0], lineno);
    CorrespondenceRecord rec;
    rec.id = cells[0];
    rec.image = ImagePoint{parse_finite(cells[1], lineno), parse_finite(cells[2], lineno)};
    rec.a = parse_finite(cells[3], lineno);
    rec.b = parse_finite(cells[4], lineno);
    file.records.push_back(std::move(rec));
  }
  return file;
}

std::vector<ImagePoint> read_horizon_points(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) throw std::invalid_argument("horizon: missing header row");
  expect_header(line, "image_x,image_y", lineno);

  std::vector<ImagePoint> out;
  while (next_line(in, line, lineno)) {
    const auto cells = split_csv(line);
    if (cells.size() != 2) fail("expected 2 fields", lineno);
    out.push_back(ImagePoint{parse_finite(cells[0], lineno), parse_finite(cells[1], lineno)});
  }
  return out;
}

namespace {

template <typename T, typename Reader>
T read_file(const std::string& path, const char* what, Reader reader) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string(what) + ": cannot open '" + path + "'");
  try {
    return reader(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(what) + " '" + path + "': " + e.what());
  }
}

}  // namespace

std::vector<AnnotationRecord> read_annotations_file(const std::string& path) {
  return read_file<std::vector<AnnotationRecord>>(path, "annotations",
                                                  [](std::istream& in) { return read_annotations(in); });
}

CorrespondenceFile read_correspondences_file(const std::string& path) {
  return read_file<CorrespondenceFile>(path, "correspondences",
                                       [](std::istream& in) { return read_correspondences(in); });
}

std::vector<ImagePoint> read_horizon_points_file(const std::string& path) {
  return read_file<std::vector<ImagePoint>>(path, "horizon",
                                            [](std::istream& in) { return read_horizon_points(in); });
}

void CsvWriter::row_strings(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace camgeo
