#pragma once

#include <Eigen/Dense>
#include <optional>

#include "camgeo/types.hpp"

namespace camgeo {

using Matrix34d = Eigen::Matrix<double, 3, 4>;

/// Assembled projection matrices plus the factors they are built from.
/// combined = intrinsic * extrinsic; rotation is orthonormal with
/// determinant +1.
struct CameraMatrix {
  Intrinsics intrinsics;
  Pose pose;
  Matrix34d intrinsic = Matrix34d::Zero();
  Eigen::Matrix4d extrinsic = Eigen::Matrix4d::Identity();
  Matrix34d combined = Matrix34d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  double image_width() const { return static_cast<double>(intrinsics.image_width_px); }
  double image_height() const { return static_cast<double>(intrinsics.image_height_px); }
};

/// Pixel-scaling matrix built from the sensor/lens description.
Matrix34d intrinsic_matrix(const Intrinsics& intr);

Eigen::Matrix3d rotation_matrix(const Pose& pose);
Eigen::Vector3d translation_vector(const Pose& pose);

/// Rigid placement of the camera as a 4x4 matrix in projective
/// coordinates. The translation column is R_tilt * R_heading * t with
/// t = (offset_x, offset_y, -height).
Eigen::Matrix4d extrinsic_matrix(const Pose& pose);

CameraMatrix camera_matrix(const Intrinsics& intr, const Pose& pose);

/// Result of projecting a world point. Under the matrix conventions
/// used here, points in front of the camera carry a negative
/// homogeneous scale; the pixel itself is scale-sign-blind.
struct Projection {
  ImagePoint pixel;
  double scale = 0.0;
  bool at_camera_plane = false;  // |scale| < 1e-12, pixel meaningless

  bool in_front() const { return !at_camera_plane && scale < 0.0; }
  bool behind() const { return !at_camera_plane && scale > 0.0; }
};

Projection project(const CameraMatrix& cam, const WorldPoint& p);

/// Projects a homogeneous world vector (x1, x2, x3, w). With w = 0 this
/// maps a direction at infinity.
Projection project_homogeneous(const CameraMatrix& cam, const Eigen::Vector4d& p);

/// Result of constrained back-projection. The fixed coordinate is
/// reinserted exactly; `behind_camera` reports a recovered scale of the
/// wrong sign, `degenerate` a singular reduced matrix or a ray parallel
/// to the constraint plane.
struct BackProjection {
  WorldPoint point;
  double scale = 0.0;
  bool degenerate = false;
  bool behind_camera = false;

  bool ok() const { return !degenerate && !behind_camera; }
};

BackProjection backproject(const CameraMatrix& cam, const ImagePoint& pixel,
                           Axis fixed_axis, double fixed_value);

/// Image of the horizontal directions at infinity. Independent of the
/// camera height and ground offsets. Returns nullopt when the camera
/// points straight down (or up) or the two sampled directions project
/// to coincident pixels.
std::optional<ImageLine> horizon_line(const CameraMatrix& cam);

}  // namespace camgeo
