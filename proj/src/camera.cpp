#include "camgeo/camera.hpp"

namespace camgeo {

Matrix34d intrinsic_matrix(const Intrinsics& intr) {
  intr.validate();
  const double f = intr.focal_px();
  Matrix34d m = Matrix34d::Zero();
  m(0, 0) = f;
  m(1, 1) = f;
  m(0, 2) = static_cast<double>(intr.image_width_px) / 2.0;
  m(1, 2) = static_cast<double>(intr.image_height_px) / 2.0;
  m(2, 2) = 1.0;
  return m;
}

namespace {

Eigen::Matrix3d rot_tilt(double tilt_rad) {
  const double c = std::cos(tilt_rad), s = std::sin(tilt_rad);
  Eigen::Matrix3d r;
  r << 1, 0, 0,
       0, c, s,
       0, -s, c;
  return r;
}

// roll and heading share the same axis form
Eigen::Matrix3d rot_z(double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  Eigen::Matrix3d r;
  r << c, s, 0,
       -s, c, 0,
       0, 0, 1;
  return r;
}

}  // namespace

Eigen::Matrix3d rotation_matrix(const Pose& pose) {
  pose.validate_finite();
  return rot_z(deg_to_rad(pose.roll_deg)) * rot_tilt(deg_to_rad(pose.tilt_deg)) *
         rot_z(deg_to_rad(pose.heading_deg));
}

Eigen::Vector3d translation_vector(const Pose& pose) {
  pose.validate_finite();
  const Eigen::Vector3d t(pose.offset_x_m, pose.offset_y_m, -pose.height_m);
  // The roll factor is deliberately absent from the translation chain.
  return rot_tilt(deg_to_rad(pose.tilt_deg)) * rot_z(deg_to_rad(pose.heading_deg)) * t;
}

Eigen::Matrix4d extrinsic_matrix(const Pose& pose) {
  Eigen::Matrix4d e = Eigen::Matrix4d::Identity();
  e.topLeftCorner<3, 3>() = rotation_matrix(pose);
  e.topRightCorner<3, 1>() = translation_vector(pose);
  return e;
}

CameraMatrix camera_matrix(const Intrinsics& intr, const Pose& pose) {
  CameraMatrix cam;
  cam.intrinsics = intr;
  cam.pose = pose.normalized();
  cam.intrinsic = intrinsic_matrix(intr);
  cam.extrinsic = extrinsic_matrix(cam.pose);
  cam.combined = cam.intrinsic * cam.extrinsic;
  cam.rotation = cam.extrinsic.topLeftCorner<3, 3>();
  cam.translation = cam.extrinsic.topRightCorner<3, 1>();
  return cam;
}

Projection project_homogeneous(const CameraMatrix& cam, const Eigen::Vector4d& p) {
  const Eigen::Vector3d im = cam.combined * p;
  Projection out;
  out.scale = im(2);
  if (std::abs(im(2)) < 1e-12) {
    out.at_camera_plane = true;
    return out;
  }
  out.pixel = ImagePoint{im(0) / im(2), im(1) / im(2)};
  return out;
}

Projection project(const CameraMatrix& cam, const WorldPoint& p) {
  return project_homogeneous(cam, Eigen::Vector4d(p.x1, p.x2, p.x3, 1.0));
}

BackProjection backproject(const CameraMatrix& cam, const ImagePoint& pixel,
                           Axis fixed_axis, double fixed_value) {
  const int k = static_cast<int>(fixed_axis);
  const Matrix34d& c = cam.combined;

  // Reduced matrix: the fixed coordinate's column is folded together
  // with the translation column; the remaining unknowns are the scaled
  // free coordinates and the scale itself.
  Eigen::Matrix3d reduced;
  for (int j = 0; j < 3; ++j) {
    if (j == k)
      reduced.col(j) = c.col(k) * fixed_value + c.col(3);
    else
      reduced.col(j) = c.col(j);
  }

  BackProjection out;
  const double norm = reduced.norm();
  const double det = reduced.determinant();
  if (norm == 0.0 || std::abs(det) <= 1e-12 * norm * norm * norm) {
    out.degenerate = true;
    return out;
  }

  const Eigen::Matrix3d inv = reduced.inverse();
  const Eigen::Vector3d rhs(pixel.y1, pixel.y2, 1.0);
  const Eigen::Vector3d sol = inv * rhs;

  // sol(k) is the recovered scale. A near-zero scale means the pixel ray
  // runs parallel to the constraint plane (intersection at infinity);
  // the reduced determinant cannot see this case since it does not
  // depend on the pixel.
  const double s = sol(k);
  out.scale = s;
  if (std::abs(s) <= 1e-12 * inv.norm() * rhs.norm()) {
    out.degenerate = true;
    return out;
  }

  double coords[3];
  for (int j = 0; j < 3; ++j) coords[j] = (j == k) ? fixed_value : sol(j) / s;
  out.point = WorldPoint{coords[0], coords[1], coords[2]};
  // In-front points carry s < 0 (same sign as the projective scale).
  out.behind_camera = s > 0.0;
  return out;
}

std::optional<ImageLine> horizon_line(const CameraMatrix& cam) {
  // Two horizontal directions at infinity straddling the viewing
  // direction; both sit 45 degrees off the optical axis' ground bearing,
  // which keeps them projectable for any tilt except straight up/down.
  const double base = -deg_to_rad(cam.pose.heading_deg);
  const double phis[2] = {base - kPi / 4.0, base + kPi / 4.0};
  ImagePoint pts[2];
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector4d dir(std::sin(phis[i]), std::cos(phis[i]), 0.0, 0.0);
    const Projection pr = project_homogeneous(cam, dir);
    if (pr.at_camera_plane) return std::nullopt;
    pts[i] = pr.pixel;
  }
  ImageLine line{pts[0], pts[1]};
  if (!line.valid()) return std::nullopt;
  return line;
}

}  // namespace camgeo
