#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "camgeo/fit.hpp"
#include "camgeo/scene.hpp"

namespace camgeo {

/// Fixed-format number for delimited output: '.' decimal separator,
/// shortest form with up to 12 significant digits, "nan" for missing.
std::string format_number(double v);

/// Annotation record as stored on disk (object id kept for reporting).
struct AnnotationRecord {
  std::string id;
  ObjectAnnotation annotation;
};

/// Correspondence record; world coordinates are either metric or
/// geographic depending on the file header.
struct CorrespondenceRecord {
  std::string id;
  ImagePoint image;
  double a = 0.0;  // world_x or lat
  double b = 0.0;  // world_y or lon
};

struct CorrespondenceFile {
  std::vector<CorrespondenceRecord> records;
  bool geographic = false;  // true when the header carried lat,lon
};

/// Readers for the delimited input files. A header row is mandatory;
/// ids must be unique; every numeric field must parse as a finite
/// decimal. Errors carry the line number.
std::vector<AnnotationRecord> read_annotations(std::istream& in);
std::vector<AnnotationRecord> read_annotations_file(const std::string& path);

CorrespondenceFile read_correspondences(std::istream& in);
CorrespondenceFile read_correspondences_file(const std::string& path);

std::vector<ImagePoint> read_horizon_points(std::istream& in);
std::vector<ImagePoint> read_horizon_points_file(const std::string& path);

/// Comma-delimited writer: LF line endings, mandatory header.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names) { row_strings(names); }
  void row_strings(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace camgeo
