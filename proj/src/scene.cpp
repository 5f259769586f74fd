#include "camgeo/scene.hpp"

#include <cassert>
#include <stdexcept>

#include "camgeo/random.hpp"

namespace camgeo {

std::vector<SceneObject> place_objects(std::span<const double> distances,
                                       double width_m, double height_m,
                                       std::span<const double> lateral) {
  if (!(height_m > 0.0)) throw std::invalid_argument("place_objects: height must be positive");
  if (width_m < 0.0) throw std::invalid_argument("place_objects: width must be non-negative");
  if (!lateral.empty() && lateral.size() != distances.size())
    throw std::invalid_argument("place_objects: lateral offsets must match distances");

  std::vector<SceneObject> scene;
  scene.reserve(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    if (!(d > 0.0) || !std::isfinite(d))
      throw std::invalid_argument("place_objects: distances must be positive");
    const double x = lateral.empty() ? 0.0 : lateral[i];
    scene.push_back(SceneObject{WorldPoint{x, d, 0.0}, height_m, width_m});
  }
  return scene;
}

AnnotationSet annotate(const CameraMatrix& cam, std::span<const SceneObject> scene,
                       double noise_sigma_px, std::uint64_t seed) {
  if (noise_sigma_px < 0.0)
    throw std::invalid_argument("annotate: noise sigma must be non-negative");

  AnnotationSet out;
  GaussianSampler gauss(seed);
  for (const SceneObject& obj : scene) {
    const Projection foot = project(cam, obj.base);
    const Projection head =
        project(cam, WorldPoint{obj.base.x1, obj.base.x2, obj.base.x3 + obj.height_m});
    if (!foot.in_front() || !head.in_front()) {
      ++out.excluded;
      continue;
    }
    ObjectAnnotation ann;
    ann.foot = ImagePoint{foot.pixel.y1 + noise_sigma_px * gauss(),
                          foot.pixel.y2 + noise_sigma_px * gauss()};
    ann.head = ImagePoint{head.pixel.y1 + noise_sigma_px * gauss(),
                          head.pixel.y2 + noise_sigma_px * gauss()};
    ann.known_height_m = obj.height_m;
    if (noise_sigma_px == 0.0) assert(ann.foot.y2 >= ann.head.y2);
    out.annotations.push_back(ann);
  }
  return out;
}

std::vector<ApparentHeight> apparent_heights(const CameraMatrix& true_cam,
                                             const Pose& perturbed_pose,
                                             std::span<const double> distances,
                                             double object_height_m) {
  const CameraMatrix pert = camera_matrix(true_cam.intrinsics, perturbed_pose);

  std::vector<ApparentHeight> out;
  out.reserve(distances.size());
  for (const double d : distances) {
    ApparentHeight entry;
    entry.distance_m = d;

    const Projection foot_px = project(true_cam, WorldPoint{0.0, d, 0.0});
    const Projection head_px = project(true_cam, WorldPoint{0.0, d, object_height_m});
    if (!foot_px.in_front() || !head_px.in_front()) {
      out.push_back(entry);
      continue;
    }

    const BackProjection foot = backproject(pert, foot_px.pixel, Axis::x3, 0.0);
    if (!foot.ok()) {
      out.push_back(entry);
      continue;
    }
    const BackProjection head = backproject(pert, head_px.pixel, Axis::x2, foot.point.x2);
    if (!head.ok()) {
      out.push_back(entry);
      continue;
    }
    entry.value_m = head.point.x3;
    entry.valid = true;
    out.push_back(entry);
  }
  return out;
}

std::vector<SweepRow> perturbation_sweep(const Intrinsics& intr, const Pose& true_pose,
                                         SweepParameter parameter, double relative_range,
                                         int steps, std::span<const double> distances,
                                         double object_height_m) {
  if (steps < 2) throw std::invalid_argument("perturbation_sweep: steps must be >= 2");
  if (relative_range < 0.0)
    throw std::invalid_argument("perturbation_sweep: range must be non-negative");

  const CameraMatrix true_cam = camera_matrix(intr, true_pose);
  const double base =
      parameter == SweepParameter::height ? true_pose.height_m : true_pose.tilt_deg;

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps) * distances.size());
  for (int k = 0; k < steps; ++k) {
    const double frac = -relative_range + 2.0 * relative_range * k / (steps - 1);
    const double value = base * (1.0 + frac);
    Pose pert = true_pose;
    if (parameter == SweepParameter::height)
      pert.height_m = value;
    else
      pert.tilt_deg = normalize_angle_deg(value);

    const auto heights = apparent_heights(true_cam, pert, distances, object_height_m);
    for (const ApparentHeight& h : heights)
      rows.push_back(SweepRow{parameter, value, h.distance_m, h.value_m, h.valid});
  }
  return rows;
}

}  // namespace camgeo
