#include "oracle.hpp"

#include <cmath>

namespace oracle {

namespace {

constexpr double kDegToRad = 3.141592653589793238462643383279502884 / 180.0;

Mat33 matmul33(const Mat33& a, const Mat33& b) {
  Mat33 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  return out;
}

Vec3 matvec33(const Mat33& a, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) acc += a[i][k] * v[k];
    out[i] = acc;
  }
  return out;
}

Mat33 tilt_matrix(double deg) {
  const double c = std::cos(deg * kDegToRad), s = std::sin(deg * kDegToRad);
  return Mat33{{{1, 0, 0}, {0, c, s}, {0, -s, c}}};
}

Mat33 z_matrix(double deg) {
  const double c = std::cos(deg * kDegToRad), s = std::sin(deg * kDegToRad);
  return Mat33{{{c, s, 0}, {-s, c, 0}, {0, 0, 1}}};
}

// 3x3 solve by Cramer's rule
bool solve33(const Mat33& a, const Vec3& b, Vec3& x) {
  const auto det3 = [](const Mat33& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(a);
  if (d == 0.0) return false;
  for (int col = 0; col < 3; ++col) {
    Mat33 m = a;
    for (int row = 0; row < 3; ++row) m[row][col] = b[row];
    x[col] = det3(m) / d;
  }
  return true;
}

}  // namespace

double focal_px(const CameraParams& p) {
  return p.focal_mm / p.sensor_width_mm * p.image_width_px;
}

Mat34 intrinsic(const CameraParams& p) {
  const double f = focal_px(p);
  return Mat34{{{f, 0, p.image_width_px / 2.0, 0},
                {0, f, p.image_height_px / 2.0, 0},
                {0, 0, 1, 0}}};
}

Mat33 rotation(const CameraParams& p) {
  return matmul33(z_matrix(p.roll_deg), matmul33(tilt_matrix(p.tilt_deg), z_matrix(p.heading_deg)));
}

Vec3 translation(const CameraParams& p) {
  const Vec3 t{p.offset_x_m, p.offset_y_m, -p.height_m};
  return matvec33(matmul33(tilt_matrix(p.tilt_deg), z_matrix(p.heading_deg)), t);
}

Mat44 extrinsic(const CameraParams& p) {
  const Mat33 r = rotation(p);
  const Vec3 t = translation(p);
  Mat44 e{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) e[i][j] = r[i][j];
    e[i][3] = t[i];
  }
  e[3][3] = 1.0;
  return e;
}

Mat34 combined(const CameraParams& p) {
  const Mat34 ci = intrinsic(p);
  const Mat44 ce = extrinsic(p);
  Mat34 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += ci[i][k] * ce[k][j];
      out[i][j] = acc;
    }
  return out;
}

bool project(const CameraParams& p, const Vec3& world, double out_pixel[2], double* scale) {
  const Mat34 c = combined(p);
  const Vec4 hom{world[0], world[1], world[2], 1.0};
  double im[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k) im[i] += c[i][k] * hom[k];
  if (scale) *scale = im[2];
  if (im[2] == 0.0) return false;
  out_pixel[0] = im[0] / im[2];
  out_pixel[1] = im[1] / im[2];
  return true;
}

Vec3 camera_center(const CameraParams& p) {
  // R c + T = 0
  const Mat33 r = rotation(p);
  const Vec3 t = translation(p);
  Vec3 c{};
  solve33(r, Vec3{-t[0], -t[1], -t[2]}, c);
  return c;
}

std::optional<RayHit> backproject_ray(const CameraParams& p, double pixel_x, double pixel_y,
                                      int axis, double value) {
  const Mat33 r = rotation(p);
  const Vec3 center = camera_center(p);
  // camera-frame direction of the pixel, transported to the world by R^T
  const Vec3 cam_dir{pixel_x - p.image_width_px / 2.0, pixel_y - p.image_height_px / 2.0,
                     focal_px(p)};
  Vec3 dir{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) dir[i] += r[k][i] * cam_dir[k];

  if (dir[axis] == 0.0) return std::nullopt;
  const double lambda = (value - center[axis]) / dir[axis];
  Vec3 point{center[0] + lambda * dir[0], center[1] + lambda * dir[1],
             center[2] + lambda * dir[2]};
  point[axis] = value;

  double px[2];
  double scale = 0.0;
  project(p, point, px, &scale);
  return RayHit{point, scale};
}

std::optional<double> apparent_height_ray(const CameraParams& true_cam,
                                          const CameraParams& wrong_cam, double distance_m,
                                          double object_height_m) {
  double foot_px[2], head_px[2];
  if (!project(true_cam, Vec3{0.0, distance_m, 0.0}, foot_px)) return std::nullopt;
  if (!project(true_cam, Vec3{0.0, distance_m, object_height_m}, head_px)) return std::nullopt;

  const auto foot = backproject_ray(wrong_cam, foot_px[0], foot_px[1], 2, 0.0);
  if (!foot || foot->scale >= 0.0) return std::nullopt;
  const auto head = backproject_ray(wrong_cam, head_px[0], head_px[1], 1, foot->point[1]);
  if (!head || head->scale >= 0.0) return std::nullopt;
  return head->point[2];
}

}  // namespace oracle
