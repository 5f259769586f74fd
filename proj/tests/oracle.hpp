#pragma once

// Test-only reference implementations, deliberately independent of the
// library's Eigen-based code path: plain C arrays, explicit loops, and
// a geometric ray-intersection route for back-projection.

#include <array>
#include <optional>

namespace oracle {

using Mat34 = std::array<std::array<double, 4>, 3>;
using Mat44 = std::array<std::array<double, 4>, 4>;
using Mat33 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

struct CameraParams {
  double focal_mm, sensor_width_mm, sensor_height_mm;
  double image_width_px, image_height_px;
  double height_m, tilt_deg, roll_deg, heading_deg, offset_x_m, offset_y_m;
};

double focal_px(const CameraParams& p);
Mat34 intrinsic(const CameraParams& p);
Mat44 extrinsic(const CameraParams& p);
Mat34 combined(const CameraParams& p);
Mat33 rotation(const CameraParams& p);
Vec3 translation(const CameraParams& p);

/// Step-wise projection: homogeneous world vector -> dense 3x4 multiply
/// -> divide by the third entry. Returns false when the scale is zero.
bool project(const CameraParams& p, const Vec3& world, double out_pixel[2], double* scale = nullptr);

/// Camera center (the projection's null direction, dehomogenized).
Vec3 camera_center(const CameraParams& p);

/// Ray through a pixel intersected with the plane {axis = value};
/// axis 0..2. Returns the point and the projective scale it would
/// project back with (negative = in front).
struct RayHit {
  Vec3 point;
  double scale;
};
std::optional<RayHit> backproject_ray(const CameraParams& p, double pixel_x, double pixel_y,
                                      int axis, double value);

/// Apparent height of a 1-object-per-distance reconstruction done
/// entirely with the ray route.
std::optional<double> apparent_height_ray(const CameraParams& true_cam,
                                          const CameraParams& wrong_cam, double distance_m,
                                          double object_height_m);

}  // namespace oracle
