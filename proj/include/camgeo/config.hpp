#pragma once

#include <optional>
#include <string>

#include "camgeo/geo.hpp"
#include "camgeo/types.hpp"

namespace camgeo {

/// Parsed camera description file: sensor/lens, pose, optional
/// geographic anchor.
struct CameraConfig {
  Intrinsics intrinsics;
  Pose pose;
  std::optional<GeoAnchor> geo_anchor;
};

/// Parse the JSON camera config. Unknown keys are rejected; every key
/// of a present section is required. Errors name the offending key.
CameraConfig parse_camera_config(const std::string& text);

CameraConfig load_camera_config(const std::string& path);

/// Serialization round-trips through parse_camera_config.
std::string serialize_camera_config(const CameraConfig& config);

}  // namespace camgeo
