#include "camgeo/geo.hpp"

namespace camgeo {

namespace {

constexpr double kEarthRadius = 6371000.0;
constexpr double kMaxRange = 100000.0;  // beyond this the flat approximation lies

void check_anchor(const GeoAnchor& anchor) {
  anchor.validate();
  if (std::abs(anchor.latitude_deg) >= 89.9)
    throw std::invalid_argument("geo: anchors within 0.1 deg of a pole are unsupported");
}

}  // namespace

GeoPoint world_to_gps(const GeoAnchor& anchor, const WorldPoint& p) {
  check_anchor(anchor);
  if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
    throw std::invalid_argument("geo: point must be finite");
  if (std::hypot(p.x1, p.x2) > kMaxRange)
    throw std::invalid_argument("geo: point farther than 100 km from the anchor");

  const double b = deg_to_rad(anchor.bearing_deg);
  const double north = -p.x1 * std::sin(b) + p.x2 * std::cos(b);
  const double east = p.x1 * std::cos(b) + p.x2 * std::sin(b);

  GeoPoint out;
  out.latitude_deg = anchor.latitude_deg + rad_to_deg(north / kEarthRadius);
  out.longitude_deg =
      anchor.longitude_deg +
      rad_to_deg(east / (kEarthRadius * std::cos(deg_to_rad(anchor.latitude_deg))));
  return out;
}

WorldPoint gps_to_world(const GeoAnchor& anchor, double latitude_deg, double longitude_deg) {
  check_anchor(anchor);
  if (!std::isfinite(latitude_deg) || !std::isfinite(longitude_deg))
    throw std::invalid_argument("geo: coordinates must be finite");

  const double north = deg_to_rad(latitude_deg - anchor.latitude_deg) * kEarthRadius;
  const double east = deg_to_rad(normalize_angle_deg(longitude_deg - anchor.longitude_deg)) *
                      kEarthRadius * std::cos(deg_to_rad(anchor.latitude_deg));

  // the rotation matrix [[-sin b, cos b], [cos b, sin b]] is its own inverse
  const double b = deg_to_rad(anchor.bearing_deg);
  WorldPoint p;
  p.x1 = -north * std::sin(b) + east * std::cos(b);
  p.x2 = north * std::cos(b) + east * std::sin(b);
  p.x3 = 0.0;
  if (std::hypot(p.x1, p.x2) > kMaxRange)
    throw std::invalid_argument("geo: point farther than 100 km from the anchor");
  return p;
}

}  // namespace camgeo
