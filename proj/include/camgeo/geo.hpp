#pragma once

#include "camgeo/types.hpp"

namespace camgeo {

/// Ties the local metric frame to geographic coordinates: the anchor
/// sits at the world origin and `bearing_deg` is the compass bearing
/// (clockwise from true north) of the +x2 axis. The frame is
/// right-handed with x3 up, so +x1 lies 90 degrees clockwise of +x2.
struct GeoAnchor {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double bearing_deg = 0.0;

  void validate() const {
    if (!(std::abs(latitude_deg) < 90.0))
      throw std::invalid_argument("geo_anchor: |latitude| must be < 90");
    if (!std::isfinite(longitude_deg) || !std::isfinite(bearing_deg))
      throw std::invalid_argument("geo_anchor: fields must be finite");
  }
};

struct GeoPoint {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
};

/// Equirectangular local approximation, Earth radius 6 371 000 m.
/// Rejects points farther than 100 km from the anchor and anchors
/// within 0.1 degrees of a pole.
GeoPoint world_to_gps(const GeoAnchor& anchor, const WorldPoint& p);

/// Exact inverse of world_to_gps under the same approximation; the
/// returned point lies on the ground plane (x3 = 0).
WorldPoint gps_to_world(const GeoAnchor& anchor, double latitude_deg, double longitude_deg);

}  // namespace camgeo
