#include <doctest.h>

#include <random>

#include "camgeo/camera.hpp"
#include "oracle.hpp"

using namespace camgeo;

namespace {

Intrinsics paper_intrinsics() {
  return Intrinsics{14.0, 17.3, 9.7, 4608, 2592};
}

oracle::CameraParams oracle_params(const Intrinsics& intr, const Pose& pose) {
  return oracle::CameraParams{intr.focal_mm,
                              intr.sensor_width_mm,
                              intr.sensor_height_mm,
                              static_cast<double>(intr.image_width_px),
                              static_cast<double>(intr.image_height_px),
                              pose.height_m,
                              pose.tilt_deg,
                              pose.roll_deg,
                              pose.heading_deg,
                              pose.offset_x_m,
                              pose.offset_y_m};
}

struct RandomScenario {
  Intrinsics intr;
  Pose pose;
};

RandomScenario random_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  RandomScenario s;
  s.intr.focal_mm = 4.0 + 96.0 * u01(rng);
  s.intr.sensor_width_mm = 5.0 + 35.0 * u01(rng);
  s.intr.sensor_height_mm = 4.0 + 26.0 * u01(rng);
  s.intr.image_width_px = 320 + static_cast<int>(7000 * u01(rng));
  s.intr.image_height_px = 240 + static_cast<int>(5000 * u01(rng));
  s.pose = Pose(1.0 + 299.0 * u01(rng), 20.0 + 140.0 * u01(rng), -30.0 + 60.0 * u01(rng),
                -180.0 + 360.0 * u01(rng), -100.0 + 200.0 * u01(rng),
                -100.0 + 200.0 * u01(rng));
  return s;
}

// world point a given pixel-and-depth in front of the camera, via the
// oracle's ray route
WorldPoint point_in_front(const oracle::CameraParams& params, double px, double py,
                          double depth) {
  const oracle::Vec3 center = oracle::camera_center(params);
  const oracle::Mat33 rot = oracle::rotation(params);
  const double f = oracle::focal_px(params);
  const oracle::Vec3 cam_dir{px - params.image_width_px / 2.0,
                             py - params.image_height_px / 2.0, f};
  oracle::Vec3 dir{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) dir[i] += rot[k][i] * cam_dir[k];
  const double lambda = -depth / f;  // negative camera-frame depth = in front
  return WorldPoint{center[0] + lambda * dir[0], center[1] + lambda * dir[1],
                    center[2] + lambda * dir[2]};
}

}  // namespace

TEST_CASE("intrinsic matrix entries") {
  const Matrix34d m = intrinsic_matrix(paper_intrinsics());
  CHECK(m(0, 0) == doctest::Approx(3729.0173410404623).epsilon(1e-12));
  CHECK(m(1, 1) == doctest::Approx(3729.0173410404623).epsilon(1e-12));
  CHECK(m(0, 2) == 2304.0);
  CHECK(m(1, 2) == 1296.0);
  CHECK(m(2, 2) == 1.0);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(0, 3) == 0.0);
  CHECK(m(2, 3) == 0.0);

  // unit ratio: focal equal to sensor width
  const Matrix34d unit = intrinsic_matrix(Intrinsics{8.0, 8.0, 6.0, 100, 100});
  CHECK(unit(0, 0) == doctest::Approx(100.0).epsilon(1e-15));

  const Matrix34d ff = intrinsic_matrix(Intrinsics{50.0, 36.0, 24.0, 7200, 4800});
  CHECK(ff(0, 0) == doctest::Approx(10000.0).epsilon(1e-15));
}

TEST_CASE("intrinsic matrix rejects non-positive fields") {
  CHECK_THROWS_AS(intrinsic_matrix(Intrinsics{-14.0, 17.3, 9.7, 4608, 2592}),
                  std::invalid_argument);
  CHECK_THROWS_AS(intrinsic_matrix(Intrinsics{14.0, 0.0, 9.7, 4608, 2592}),
                  std::invalid_argument);
  CHECK_THROWS_AS(intrinsic_matrix(Intrinsics{14.0, 17.3, 9.7, 0, 2592}),
                  std::invalid_argument);
}

TEST_CASE("extrinsic matrix: zero pose is the identity") {
  const Eigen::Matrix4d e = extrinsic_matrix(Pose(0, 0, 0, 0, 0, 0));
  CHECK((e - Eigen::Matrix4d::Identity()).norm() < 1e-15);
}

TEST_CASE("extrinsic matrix at tilt 90") {
  const Pose pose(20.0, 90.0, 0.0, 0.0, 0.0, 0.0);
  const Eigen::Matrix3d r = rotation_matrix(pose);
  const Eigen::Vector3d mapped = r * Eigen::Vector3d(0, 1, 0);
  CHECK(mapped(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mapped(1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mapped(2) == doctest::Approx(-1.0).epsilon(1e-15));
  const Eigen::Vector3d t = translation_vector(pose);
  CHECK(t(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(t(1) == doctest::Approx(-20.0).epsilon(1e-15));
  CHECK(t(2) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rotation orthonormality for random poses") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_scenario(rng);
    const Eigen::Matrix3d r = rotation_matrix(s.pose);
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("camera matrix equals dense factor product") {
  const Intrinsics intr = paper_intrinsics();
  const Pose pose(20.0, 80.0, 0.0, 0.0, 0.0, 0.0);
  const CameraMatrix cam = camera_matrix(intr, pose);

  const oracle::Mat34 ref = oracle::combined(oracle_params(intr, pose));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(cam.combined(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-12));

  CHECK((cam.combined - cam.intrinsic * cam.extrinsic).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("camera matrix: zero pose leaves the intrinsic matrix") {
  const CameraMatrix cam = camera_matrix(paper_intrinsics(), Pose(0, 0, 0, 0, 0, 0));
  CHECK((cam.combined - cam.intrinsic).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("camera matrix invariant under chip rescaling") {
  const Pose pose(20.0, 80.0, 5.0, 30.0, 1.0, 2.0);
  const CameraMatrix a = camera_matrix(paper_intrinsics(), pose);
  Intrinsics scaled = paper_intrinsics();
  const double k = 3.25;
  scaled.focal_mm *= k;
  scaled.sensor_width_mm *= k;
  scaled.sensor_height_mm *= k;
  const CameraMatrix b = camera_matrix(scaled, pose);
  CHECK((a.combined - b.combined).cwiseAbs().maxCoeff() <
        1e-12 * a.combined.cwiseAbs().maxCoeff());
}

TEST_CASE("projection fixtures") {
  const CameraMatrix cam = camera_matrix(paper_intrinsics(), Pose(20, 80, 0, 0, 0, 0));

  SUBCASE("ground point 100 m ahead") {
    const Projection pr = project(cam, WorldPoint{0, 100, 0});
    REQUIRE(pr.in_front());
    CHECK(pr.pixel.y1 == doctest::Approx(2304.0).epsilon(1e-12));
    CHECK(pr.pixel.y2 == doctest::Approx(1381.270018472478).epsilon(1e-9));
  }

  SUBCASE("on-axis point at tilt 90 hits the image center") {
    const CameraMatrix cam90 = camera_matrix(paper_intrinsics(), Pose(20, 90, 0, 0, 0, 0));
    for (double d : {1.0, 10.0, 250.0}) {
      const Projection pr = project(cam90, WorldPoint{0, d, 20});
      REQUIRE(pr.in_front());
      CHECK(std::abs(pr.pixel.y1 - 2304.0) < 1e-9);
      CHECK(std::abs(pr.pixel.y2 - 1296.0) < 1e-9);
    }
  }

  SUBCASE("homogeneous input scaling does not change the pixel") {
    const Eigen::Vector4d p(3.0, 120.0, 1.5, 1.0);
    const Projection a = project_homogeneous(cam, p);
    const Projection b = project_homogeneous(cam, 7.0 * p);
    CHECK(a.pixel.y1 == doctest::Approx(b.pixel.y1).epsilon(1e-14));
    CHECK(a.pixel.y2 == doctest::Approx(b.pixel.y2).epsilon(1e-14));
  }

  SUBCASE("point on the camera plane is flagged") {
    // at tilt 90 the camera plane is the vertical plane x2 = 0
    const CameraMatrix cam90 = camera_matrix(paper_intrinsics(), Pose(20, 90, 0, 0, 0, 0));
    const Projection pr = project(cam90, WorldPoint{5.0, 0.0, 33.0});
    CHECK(pr.at_camera_plane);
  }

  SUBCASE("point behind the camera is flagged but computable") {
    const Projection pr = project(cam, WorldPoint{0, -100, 0});
    CHECK(pr.behind());
    CHECK(!pr.in_front());
  }
}

TEST_CASE("projection equals the step-wise oracle on random scenes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const auto s = random_scenario(rng);
    const auto params = oracle_params(s.intr, s.pose);
    const double px = u01(rng) * s.intr.image_width_px;
    const double py = u01(rng) * s.intr.image_height_px;
    const double depth = 2.0 + 800.0 * u01(rng);
    const WorldPoint p = point_in_front(params, px, py, depth);

    const CameraMatrix cam = camera_matrix(s.intr, s.pose);
    const Projection pr = project(cam, p);
    REQUIRE(pr.in_front());

    double ref[2];
    REQUIRE(oracle::project(params, oracle::Vec3{p.x1, p.x2, p.x3}, ref));
    CHECK(std::abs(pr.pixel.y1 - ref[0]) < 1e-9);
    CHECK(std::abs(pr.pixel.y2 - ref[1]) < 1e-9);
    // the construction promised this pixel
    CHECK(std::abs(pr.pixel.y1 - px) < 1e-6);
    CHECK(std::abs(pr.pixel.y2 - py) < 1e-6);
    ++checked;
  }
}

TEST_CASE("backprojection fixtures") {
  const CameraMatrix cam90 = camera_matrix(paper_intrinsics(), Pose(20, 90, 0, 0, 0, 0));

  SUBCASE("bottom-center pixel meets the ground at 20 f / (h/2)") {
    const BackProjection bp = backproject(cam90, ImagePoint{2304, 2592}, Axis::x3, 0.0);
    REQUIRE(bp.ok());
    CHECK(std::abs(bp.point.x1 - 0.0) < 1e-9);
    CHECK(bp.point.x2 == doctest::Approx(57.5465639049454).epsilon(1e-12));
    CHECK(bp.point.x3 == 0.0);
  }

  SUBCASE("horizon pixel with fixed ground plane is degenerate") {
    // at tilt 90 the horizon runs through the image center row
    const BackProjection bp = backproject(cam90, ImagePoint{1700.0, 1296.0}, Axis::x3, 0.0);
    CHECK(bp.degenerate);
  }

  SUBCASE("pixel above the horizon lands behind the camera") {
    const BackProjection bp = backproject(cam90, ImagePoint{2304.0, 700.0}, Axis::x3, 0.0);
    CHECK(!bp.degenerate);
    CHECK(bp.behind_camera);
  }

  SUBCASE("camera on the constraint plane is degenerate") {
    const BackProjection bp = backproject(cam90, ImagePoint{2304.0, 2000.0}, Axis::x3, 20.0);
    CHECK(bp.degenerate);
  }
}

TEST_CASE("backprojection inverts projection for every fixed axis") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (Axis axis : {Axis::x1, Axis::x2, Axis::x3}) {
    int checked = 0;
    while (checked < 400) {
      const auto s = random_scenario(rng);
      const auto params = oracle_params(s.intr, s.pose);
      const double px = u01(rng) * s.intr.image_width_px;
      const double py = u01(rng) * s.intr.image_height_px;
      const double depth = 2.0 + 500.0 * u01(rng);
      const WorldPoint p = point_in_front(params, px, py, depth);

      const CameraMatrix cam = camera_matrix(s.intr, s.pose);
      const Projection pr = project(cam, p);
      if (!pr.in_front()) continue;

      const double fixed_value =
          axis == Axis::x1 ? p.x1 : (axis == Axis::x2 ? p.x2 : p.x3);
      const BackProjection bp = backproject(cam, pr.pixel, axis, fixed_value);
      if (bp.degenerate) continue;  // ray nearly parallel to the plane
      REQUIRE(!bp.behind_camera);
      CHECK(std::abs(bp.point.x1 - p.x1) < 1e-9 * std::max(1.0, std::abs(p.x1)));
      CHECK(std::abs(bp.point.x2 - p.x2) < 1e-9 * std::max(1.0, std::abs(p.x2)));
      CHECK(std::abs(bp.point.x3 - p.x3) < 1e-9 * std::max(1.0, std::abs(p.x3)));
      ++checked;
    }
  }
}

TEST_CASE("horizon line fixtures") {
  SUBCASE("tilt 90, roll 0: horizontal line through the center") {
    const CameraMatrix cam = camera_matrix(paper_intrinsics(), Pose(20, 90, 0, 0, 0, 0));
    const auto line = horizon_line(cam);
    REQUIRE(line.has_value());
    CHECK(line->a.y2 == doctest::Approx(1296.0).epsilon(1e-12));
    CHECK(line->b.y2 == doctest::Approx(1296.0).epsilon(1e-12));
    CHECK(std::abs(line->signed_distance(ImagePoint{2304, 1296})) < 1e-9);
  }

  SUBCASE("height does not move the horizon") {
    for (double tilt : {55.0, 80.0, 110.0}) {
      const auto low = horizon_line(camera_matrix(paper_intrinsics(), Pose(5, tilt, 7, 40, 3, -2)));
      const auto high =
          horizon_line(camera_matrix(paper_intrinsics(), Pose(500, tilt, 7, 40, -9, 12)));
      REQUIRE(low.has_value());
      REQUIRE(high.has_value());
      CHECK(std::abs(low->a.y1 - high->a.y1) < 1e-9);
      CHECK(std::abs(low->a.y2 - high->a.y2) < 1e-9);
      CHECK(std::abs(low->b.y1 - high->b.y1) < 1e-9);
      CHECK(std::abs(low->b.y2 - high->b.y2) < 1e-9);
    }
  }

  SUBCASE("roll 10 at tilt 90 slopes by tan(10 deg)") {
    const CameraMatrix cam = camera_matrix(paper_intrinsics(), Pose(20, 90, 10, 0, 0, 0));
    const auto line = horizon_line(cam);
    REQUIRE(line.has_value());
    const double slope = (line->b.y2 - line->a.y2) / (line->b.y1 - line->a.y1);
    // image y grows downward, so a positive roll gives a negative slope
    CHECK(slope == doctest::Approx(-0.17632698070846498).epsilon(1e-9));
    CHECK(std::abs(std::abs(slope) - std::tan(deg_to_rad(10.0))) < 1e-9);
  }

  SUBCASE("tilt 80 horizon height at the center column") {
    const CameraMatrix cam = camera_matrix(paper_intrinsics(), Pose(20, 80, 0, 0, 0, 0));
    const auto line = horizon_line(cam);
    REQUIRE(line.has_value());
    // intersect with the center column
    const double t = (2304.0 - line->a.y1) / (line->b.y1 - line->a.y1);
    const double y2 = line->a.y2 + t * (line->b.y2 - line->a.y2);
    CHECK(y2 == doctest::Approx(638.4736312448267).epsilon(1e-9));
  }

  SUBCASE("camera straight down has no horizon") {
    const CameraMatrix cam = camera_matrix(paper_intrinsics(), Pose(20, 0, 0, 0, 0, 0));
    CHECK(!horizon_line(cam).has_value());
  }
}

TEST_CASE("heading equivariance of ground back-projection") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int checked = 0;
  while (checked < 100) {
    const Intrinsics intr = paper_intrinsics();
    const Pose pose(5.0 + 50.0 * u01(rng), 45.0 + 40.0 * u01(rng), 0.0,
                    -180.0 + 360.0 * u01(rng), -50.0 + 100.0 * u01(rng),
                    -50.0 + 100.0 * u01(rng));
    const double delta = -90.0 + 180.0 * u01(rng);
    const ImagePoint pixel{u01(rng) * intr.image_width_px,
                           intr.image_height_px * (0.6 + 0.39 * u01(rng))};

    const CameraMatrix cam = camera_matrix(intr, pose);
    Pose rotated = pose;
    rotated.heading_deg = normalize_angle_deg(pose.heading_deg + delta);
    const CameraMatrix cam2 = camera_matrix(intr, rotated);

    const BackProjection a = backproject(cam, pixel, Axis::x3, 0.0);
    const BackProjection b = backproject(cam2, pixel, Axis::x3, 0.0);
    if (!a.ok() || !b.ok()) continue;
    if (std::hypot(a.point.x1, a.point.x2) > 3000.0) continue;

    // rotation by +delta counterclockwise about the camera ground
    // position (-offset_x, -offset_y)
    const double cx = -pose.offset_x_m, cy = -pose.offset_y_m;
    const double c = std::cos(deg_to_rad(delta)), s = std::sin(deg_to_rad(delta));
    const double ex = cx + c * (a.point.x1 - cx) - s * (a.point.x2 - cy);
    const double ey = cy + s * (a.point.x1 - cx) + c * (a.point.x2 - cy);
    CHECK(std::abs(b.point.x1 - ex) < 1e-7 * std::max(1.0, std::abs(ex)));
    CHECK(std::abs(b.point.x2 - ey) < 1e-7 * std::max(1.0, std::abs(ey)));
    ++checked;
  }
}
