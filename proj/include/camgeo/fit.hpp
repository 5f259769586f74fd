#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "camgeo/camera.hpp"
#include "camgeo/scene.hpp"

namespace camgeo {

/// Which pose parameters a fit may move.
struct FreeMask {
  bool height = false;
  bool tilt = false;
  bool roll = false;
  bool heading = false;
  bool offset_x = false;
  bool offset_y = false;

  int count() const {
    return int(height) + int(tilt) + int(roll) + int(heading) + int(offset_x) + int(offset_y);
  }
};

/// Image point paired with a ground-plane map point.
struct Correspondence {
  ImagePoint image;
  WorldPoint world;  // x3 = 0
};

/// Residual family evaluation. `excluded` counts entries dropped for
/// degenerate or behind-camera geometry; used + excluded always equals
/// the number of entries supplied.
struct ResidualReport {
  Eigen::VectorXd residuals;
  int used = 0;
  int excluded = 0;
  bool horizon_degenerate = false;
};

/// Two components per annotation: predicted head pixel (foot lifted by
/// the known height through the ground plane) minus the observed head.
ResidualReport object_residuals(const Intrinsics& intr, const Pose& pose,
                                std::span<const ObjectAnnotation> annotations);

/// Signed perpendicular pixel distance of each point to the pose's
/// horizon line.
ResidualReport horizon_residuals(const Intrinsics& intr, const Pose& pose,
                                 std::span<const ImagePoint> points);

/// Two components per correspondence: ground back-projection of the
/// image point minus the map point, meters.
ResidualReport map_residuals(const Intrinsics& intr, const Pose& pose,
                             std::span<const Correspondence> correspondences);

/// (1-w) * mean(object^2) + w * mean(horizon^2); an empty family hands
/// its weight to the other. Throws when both are empty.
double combined_cost(const Eigen::VectorXd& object_res, const Eigen::VectorXd& horizon_res,
                     double weight_horizon = 0.5);

/// Input bundle for a fit. Pixel-space families (annotations, horizon)
/// cannot be mixed with the metric map family in one fit.
struct FitData {
  std::vector<ObjectAnnotation> annotations;
  std::vector<ImagePoint> horizon_points;
  std::vector<Correspondence> correspondences;
  double weight_horizon = 0.5;
};

struct FitOptions {
  int max_iterations = 200;
  double cost_tol = 1e-10;      // relative cost change
  double step_tol = 1e-10;      // max parameter step
  double fd_step_rel = 1e-6;    // forward-difference step, relative
  double lambda0 = 1e-3;        // initial damping
};

struct FitResult {
  Pose pose;
  bool converged = false;
  bool rank_deficient = false;
  int iterations = 0;
  double cost = std::numeric_limits<double>::quiet_NaN();
  double rms_object_px = std::numeric_limits<double>::quiet_NaN();
  double rms_horizon_px = std::numeric_limits<double>::quiet_NaN();
  double rms_map_m = std::numeric_limits<double>::quiet_NaN();
  // order: height, tilt, roll, heading, offset_x, offset_y; NaN if fixed
  std::array<double, 6> std_errors{};
  int excluded_annotations = 0;
  int excluded_correspondences = 0;
};

/// Weighted residual vector whose squared norm is the fit cost
/// (families scaled by their combined-cost weights over per-family
/// component counts).
Eigen::VectorXd weighted_residuals(const Intrinsics& intr, const Pose& pose,
                                   const FitData& data);

/// Forward-difference Jacobian of the weighted residuals with respect
/// to the free parameters (columns ordered height, tilt, roll, heading,
/// offset_x, offset_y, free ones only).
Eigen::MatrixXd fit_jacobian(const Intrinsics& intr, const Pose& pose,
                             const FreeMask& free, const FitData& data,
                             double fd_step_rel = 1e-6);

/// Damped least squares over the selected parameters. Non-convergence
/// is a reported state carrying the best pose seen, not an error.
FitResult fit(const Intrinsics& intr, const Pose& initial, const FreeMask& free,
              const FitData& data, const FitOptions& options = {});

/// Height of an annotated object reconstructed under a camera: foot on
/// the ground plane, head on the vertical plane through the foot.
struct ReconstructedHeight {
  double value_m = 0.0;
  bool valid = false;
};
ReconstructedHeight reconstruct_height(const CameraMatrix& cam, const ObjectAnnotation& ann);

struct StudyRow {
  int n = 0;
  int repeat = 0;
  double height_m = 0.0;
  double tilt_deg = 0.0;
  bool converged = false;
  double height_err_mean = std::numeric_limits<double>::quiet_NaN();
  double height_err_std = std::numeric_limits<double>::quiet_NaN();
};

/// For every subset size n = 1..N and repeat, fits a random
/// without-replacement subset of the annotations (optionally with the
/// horizon) and records the fitted parameters plus reconstructed-height
/// error statistics over the full annotation set. Deterministic per
/// (seed, n, repeat).
std::vector<StudyRow> subset_study(const Intrinsics& intr,
                                   std::span<const ObjectAnnotation> annotations,
                                   std::span<const ImagePoint> horizon_points,
                                   int repeats, std::uint64_t seed,
                                   const Pose& initial = Pose(10.0, 80.0, 0, 0, 0, 0),
                                   const FreeMask& free = FreeMask{true, true, false, false, false, false},
                                   const FitOptions& options = {});

}  // namespace camgeo
