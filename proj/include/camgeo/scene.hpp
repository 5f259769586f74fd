#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "camgeo/camera.hpp"

namespace camgeo {

/// Upright object standing on the ground plane.
struct SceneObject {
  WorldPoint base;  // x3 = 0
  double height_m = 0.0;
  double width_m = 0.0;
};

/// Clicked foot/head pixel pair with the object's known true height.
struct ObjectAnnotation {
  ImagePoint foot;
  ImagePoint head;
  double known_height_m = 0.0;
};

/// One object per distance, centered on the y axis. Pass `lateral`
/// (same length) to scatter objects off the centerline.
std::vector<SceneObject> place_objects(std::span<const double> distances,
                                       double width_m, double height_m,
                                       std::span<const double> lateral = {});

struct AnnotationSet {
  std::vector<ObjectAnnotation> annotations;
  int excluded = 0;  // objects behind the camera or unprojectable
};

/// Projects foot and head of each object and adds isotropic Gaussian
/// pixel noise. Deterministic for a fixed seed.
AnnotationSet annotate(const CameraMatrix& cam, std::span<const SceneObject> scene,
                       double noise_sigma_px, std::uint64_t seed);

struct ApparentHeight {
  double distance_m = 0.0;
  double value_m = 0.0;
  bool valid = false;  // false: a back-projection was degenerate or behind the camera
};

/// Projects 1-object-per-distance feet/heads with the true camera and
/// reconstructs their heights under a different pose: foot back-projected
/// onto the ground, head onto the vertical plane x2 = foot.x2.
std::vector<ApparentHeight> apparent_heights(const CameraMatrix& true_cam,
                                             const Pose& perturbed_pose,
                                             std::span<const double> distances,
                                             double object_height_m);

enum class SweepParameter { height, tilt };

struct SweepRow {
  SweepParameter parameter;
  double parameter_value = 0.0;
  double distance_m = 0.0;
  double apparent_height_m = 0.0;
  bool valid = false;
};

/// Grid of reconstructions for one pose parameter varied by a relative
/// range around its true value.
std::vector<SweepRow> perturbation_sweep(const Intrinsics& intr, const Pose& true_pose,
                                         SweepParameter parameter, double relative_range,
                                         int steps, std::span<const double> distances,
                                         double object_height_m = 1.0);

}  // namespace camgeo
