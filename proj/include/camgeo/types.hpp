#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace camgeo {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Normalize an angle in degrees to (-180, 180].
inline double normalize_angle_deg(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a <= -180.0) a += 360.0;
  if (a > 180.0) a -= 360.0;
  return a;
}

/// Sensor and lens description. Focal length and sensor size in mm,
/// image size in pixels.
struct Intrinsics {
  double focal_mm = 0.0;
  double sensor_width_mm = 0.0;
  double sensor_height_mm = 0.0;
  int image_width_px = 0;
  int image_height_px = 0;

  /// Effective focal length in pixels (width ratio; the sensor height
  /// only participates in validation, not in the projection).
  double focal_px() const {
    return focal_mm / sensor_width_mm * static_cast<double>(image_width_px);
  }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("intrinsics: ") + name +
                                    " must be strictly positive");
    };
    positive(focal_mm, "focal_mm");
    positive(sensor_width_mm, "sensor_width_mm");
    positive(sensor_height_mm, "sensor_height_mm");
    positive(static_cast<double>(image_width_px), "image_width_px");
    positive(static_cast<double>(image_height_px), "image_height_px");
    double f = focal_px();
    if (!std::isfinite(f) || !(f > 0.0))
      throw std::invalid_argument("intrinsics: effective focal length is not finite");
  }
};

/// Camera placement: height above ground, orientation angles in degrees
/// and the ground offset of the reference frame. Angles are normalized
/// to (-180, 180] on construction. tilt 90 deg views horizontally,
/// smaller tilts look further down; heading turns about the vertical
/// axis; roll spins the image about the optical axis.
struct Pose {
  double height_m = 0.0;
  double tilt_deg = 0.0;
  double roll_deg = 0.0;
  double heading_deg = 0.0;
  double offset_x_m = 0.0;
  double offset_y_m = 0.0;

  Pose() = default;
  Pose(double height, double tilt, double roll, double heading,
       double offset_x, double offset_y)
      : height_m(height),
        tilt_deg(normalize_angle_deg(tilt)),
        roll_deg(normalize_angle_deg(roll)),
        heading_deg(normalize_angle_deg(heading)),
        offset_x_m(offset_x),
        offset_y_m(offset_y) {}

  Pose normalized() const {
    return Pose(height_m, tilt_deg, roll_deg, heading_deg, offset_x_m, offset_y_m);
  }

  void validate_finite() const {
    for (double v : {height_m, tilt_deg, roll_deg, heading_deg, offset_x_m, offset_y_m})
      if (!std::isfinite(v))
        throw std::invalid_argument("pose: all fields must be finite");
  }
};

/// Point in the metric world frame (meters). x3 is up.
struct WorldPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

/// Continuous pixel position, origin at the top-left image corner,
/// y2 grows downward.
struct ImagePoint {
  double y1 = 0.0;
  double y2 = 0.0;
};

/// Infinite image line through two distinct generator points.
struct ImageLine {
  ImagePoint a;
  ImagePoint b;

  bool valid() const {
    double dx = b.y1 - a.y1, dy = b.y2 - a.y2;
    return std::sqrt(dx * dx + dy * dy) > 1e-9;
  }

  /// Signed perpendicular distance of a point to the line, in pixels.
  /// The sign is fixed by the generator order (left normal of a->b).
  double signed_distance(const ImagePoint& p) const {
    double dx = b.y1 - a.y1, dy = b.y2 - a.y2;
    double len = std::sqrt(dx * dx + dy * dy);
    // normal (-dy, dx)/len
    return (-dy * (p.y1 - a.y1) + dx * (p.y2 - a.y2)) / len;
  }
};

/// World coordinate held fixed during back-projection.
enum class Axis { x1 = 0, x2 = 1, x3 = 2 };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x1: return "x1";
    case Axis::x2: return "x2";
    default: return "x3";
  }
}

}  // namespace camgeo
