#include "camgeo/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace camgeo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("camera config: " + msg);
}

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail("section '" + section + "' must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      fail("unknown key '" + item.key() + "' in '" + section + "'");
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) fail("missing key '" + key + "' in '" + section + "'");
  }
}

double num(const json& obj, const std::string& section, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail("key '" + key + "' in '" + section + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail("key '" + key + "' in '" + section + "' must be finite");
  return d;
}

int integer(const json& obj, const std::string& section, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail("key '" + key + "' in '" + section + "' must be an integer");
  return v.get<int>();
}

}  // namespace

CameraConfig parse_camera_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  check_keys(doc, "<top level>", {"intrinsics", "pose", "geo_anchor"});
  // geo_anchor is the one optional section
  if (!doc.contains("intrinsics")) fail("missing key 'intrinsics' in '<top level>'");
  if (!doc.contains("pose")) fail("missing key 'pose' in '<top level>'");

  CameraConfig config;

  const json& ji = doc.at("intrinsics");
  check_keys(ji, "intrinsics",
             {"focal_mm", "sensor_width_mm", "sensor_height_mm", "image_width_px",
              "image_height_px"});
  config.intrinsics.focal_mm = num(ji, "intrinsics", "focal_mm");
  config.intrinsics.sensor_width_mm = num(ji, "intrinsics", "sensor_width_mm");
  config.intrinsics.sensor_height_mm = num(ji, "intrinsics", "sensor_height_mm");
  config.intrinsics.image_width_px = integer(ji, "intrinsics", "image_width_px");
  config.intrinsics.image_height_px = integer(ji, "intrinsics", "image_height_px");
  try {
    config.intrinsics.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }

  const json& jp = doc.at("pose");
  check_keys(jp, "pose",
             {"height_m", "tilt_deg", "roll_deg", "heading_deg", "offset_x_m", "offset_y_m"});
  config.pose = Pose(num(jp, "pose", "height_m"), num(jp, "pose", "tilt_deg"),
                     num(jp, "pose", "roll_deg"), num(jp, "pose", "heading_deg"),
                     num(jp, "pose", "offset_x_m"), num(jp, "pose", "offset_y_m"));

  if (doc.contains("geo_anchor")) {
    const json& jg = doc.at("geo_anchor");
    check_keys(jg, "geo_anchor", {"lat_deg", "lon_deg", "bearing_deg"});
    GeoAnchor anchor;
    anchor.latitude_deg = num(jg, "geo_anchor", "lat_deg");
    anchor.longitude_deg = num(jg, "geo_anchor", "lon_deg");
    anchor.bearing_deg = num(jg, "geo_anchor", "bearing_deg");
    try {
      anchor.validate();
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    config.geo_anchor = anchor;
  }
  return config;
}

CameraConfig load_camera_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("camera config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_camera_config(buf.str());
}

std::string serialize_camera_config(const CameraConfig& config) {
  json doc;
  doc["intrinsics"] = {{"focal_mm", config.intrinsics.focal_mm},
                       {"sensor_width_mm", config.intrinsics.sensor_width_mm},
                       {"sensor_height_mm", config.intrinsics.sensor_height_mm},
                       {"image_width_px", config.intrinsics.image_width_px},
                       {"image_height_px", config.intrinsics.image_height_px}};
  doc["pose"] = {{"height_m", config.pose.height_m},   {"tilt_deg", config.pose.tilt_deg},
                 {"roll_deg", config.pose.roll_deg},   {"heading_deg", config.pose.heading_deg},
                 {"offset_x_m", config.pose.offset_x_m}, {"offset_y_m", config.pose.offset_y_m}};
  if (config.geo_anchor) {
    doc["geo_anchor"] = {{"lat_deg", config.geo_anchor->latitude_deg},
                         {"lon_deg", config.geo_anchor->longitude_deg},
                         {"bearing_deg", config.geo_anchor->bearing_deg}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace camgeo
