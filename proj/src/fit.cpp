#include "camgeo/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "camgeo/random.hpp"

namespace camgeo {

ResidualReport object_residuals(const Intrinsics& intr, const Pose& pose,
                                std::span<const ObjectAnnotation> annotations) {
  const CameraMatrix cam = camera_matrix(intr, pose);
  ResidualReport rep;
  std::vector<double> vals;
  vals.reserve(annotations.size() * 2);
  for (const ObjectAnnotation& ann : annotations) {
    const BackProjection foot = backproject(cam, ann.foot, Axis::x3, 0.0);
    if (!foot.ok()) {
      ++rep.excluded;
      continue;
    }
    const WorldPoint lifted{foot.point.x1, foot.point.x2, ann.known_height_m};
    const Projection head = project(cam, lifted);
    if (!head.in_front()) {
      ++rep.excluded;
      continue;
    }
    vals.push_back(head.pixel.y1 - ann.head.y1);
    vals.push_back(head.pixel.y2 - ann.head.y2);
    ++rep.used;
  }
  rep.residuals = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return rep;
}

ResidualReport horizon_residuals(const Intrinsics& intr, const Pose& pose,
                                 std::span<const ImagePoint> points) {
  ResidualReport rep;
  const CameraMatrix cam = camera_matrix(intr, pose);
  const std::optional<ImageLine> horizon = horizon_line(cam);
  if (!horizon) {
    rep.excluded = static_cast<int>(points.size());
    rep.horizon_degenerate = true;
    return rep;
  }
  rep.residuals.resize(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    rep.residuals(static_cast<Eigen::Index>(i)) = horizon->signed_distance(points[i]);
  rep.used = static_cast<int>(points.size());
  return rep;
}

ResidualReport map_residuals(const Intrinsics& intr, const Pose& pose,
                             std::span<const Correspondence> correspondences) {
  const CameraMatrix cam = camera_matrix(intr, pose);
  ResidualReport rep;
  std::vector<double> vals;
  vals.reserve(correspondences.size() * 2);
  for (const Correspondence& c : correspondences) {
    const BackProjection bp = backproject(cam, c.image, Axis::x3, 0.0);
    if (!bp.ok()) {
      ++rep.excluded;
      continue;
    }
    vals.push_back(bp.point.x1 - c.world.x1);
    vals.push_back(bp.point.x2 - c.world.x2);
    ++rep.used;
  }
  rep.residuals = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return rep;
}

double combined_cost(const Eigen::VectorXd& object_res, const Eigen::VectorXd& horizon_res,
                     double weight_horizon) {
  if (weight_horizon < 0.0 || weight_horizon > 1.0)
    throw std::invalid_argument("combined_cost: weight must lie in [0, 1]");
  const Eigen::Index no = object_res.size(), nh = horizon_res.size();
  if (no == 0 && nh == 0)
    throw std::invalid_argument("combined_cost: both residual families are empty");
  const double mo = no ? object_res.squaredNorm() / static_cast<double>(no) : 0.0;
  const double mh = nh ? horizon_res.squaredNorm() / static_cast<double>(nh) : 0.0;
  if (no == 0) return mh;
  if (nh == 0) return mo;
  return (1.0 - weight_horizon) * mo + weight_horizon * mh;
}

namespace {

constexpr int kParamCount = 6;

double* pose_field(Pose& p, int i) {
  switch (i) {
    case 0: return &p.height_m;
    case 1: return &p.tilt_deg;
    case 2: return &p.roll_deg;
    case 3: return &p.heading_deg;
    case 4: return &p.offset_x_m;
    default: return &p.offset_y_m;
  }
}

std::vector<int> free_indices(const FreeMask& free) {
  std::vector<int> idx;
  const bool flags[kParamCount] = {free.height, free.tilt,     free.roll,
                                   free.heading, free.offset_x, free.offset_y};
  for (int i = 0; i < kParamCount; ++i)
    if (flags[i]) idx.push_back(i);
  return idx;
}

Pose apply_params(const Pose& base, const std::vector<int>& idx, const Eigen::VectorXd& p) {
  Pose out = base;
  for (std::size_t k = 0; k < idx.size(); ++k) *pose_field(out, idx[k]) = p(static_cast<Eigen::Index>(k));
  return out;
}

Eigen::VectorXd extract_params(const Pose& pose, const std::vector<int>& idx) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(idx.size()));
  Pose tmp = pose;
  for (std::size_t k = 0; k < idx.size(); ++k) p(static_cast<Eigen::Index>(k)) = *pose_field(tmp, idx[k]);
  return p;
}

struct Evaluation {
  Eigen::VectorXd weighted;
  Eigen::VectorXd object, horizon, map;
  double cost = std::numeric_limits<double>::infinity();
  int excluded_annotations = 0;
  int excluded_correspondences = 0;
  bool valid = false;
};

Evaluation evaluate(const Intrinsics& intr, const Pose& pose, const FitData& data) {
  Evaluation ev;
  if (!data.correspondences.empty()) {
    ResidualReport rep = map_residuals(intr, pose, data.correspondences);
    ev.map = rep.residuals;
    ev.excluded_correspondences = rep.excluded;
    const Eigen::Index m = ev.map.size();
    if (m == 0) return ev;
    ev.weighted = ev.map / std::sqrt(static_cast<double>(m));
    ev.cost = ev.weighted.squaredNorm();
    ev.valid = ev.weighted.allFinite();
    return ev;
  }

  ResidualReport obj = object_residuals(intr, pose, data.annotations);
  ResidualReport hor = horizon_residuals(intr, pose, data.horizon_points);
  ev.object = obj.residuals;
  ev.horizon = hor.residuals;
  ev.excluded_annotations = obj.excluded;
  const Eigen::Index no = ev.object.size(), nh = ev.horizon.size();
  if (no == 0 && nh == 0) return ev;

  const double w = data.weight_horizon;
  double wo = 1.0, wh = 1.0;
  if (no > 0 && nh > 0) {
    wo = 1.0 - w;
    wh = w;
  }
  ev.weighted.resize(no + nh);
  if (no > 0) ev.weighted.head(no) = ev.object * std::sqrt(wo / static_cast<double>(no));
  if (nh > 0) ev.weighted.tail(nh) = ev.horizon * std::sqrt(wh / static_cast<double>(nh));
  ev.cost = ev.weighted.squaredNorm();
  ev.valid = ev.weighted.allFinite();
  return ev;
}

// forward differences; columns for stepped poses that lose residuals
// (active set changed) retry with a smaller step, then zero out
Eigen::MatrixXd jacobian_impl(const Intrinsics& intr, const Pose& base,
                              const std::vector<int>& idx, const FitData& data,
                              const Evaluation& at_base, double fd_step_rel) {
  const Eigen::VectorXd p0 = extract_params(base, idx);
  const Eigen::Index m = at_base.weighted.size();
  Eigen::MatrixXd jac(m, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    double h = fd_step_rel * std::max(std::abs(p0(static_cast<Eigen::Index>(k))), 1.0);
    bool done = false;
    for (int attempt = 0; attempt < 3 && !done; ++attempt, h *= 0.1) {
      Eigen::VectorXd p = p0;
      p(static_cast<Eigen::Index>(k)) += h;
      const Evaluation ev = evaluate(intr, apply_params(base, idx, p), data);
      if (ev.valid && ev.weighted.size() == m) {
        jac.col(static_cast<Eigen::Index>(k)) = (ev.weighted - at_base.weighted) / h;
        done = true;
      }
    }
    if (!done) jac.col(static_cast<Eigen::Index>(k)).setZero();
  }
  return jac;
}

void validate_fit_inputs(const FreeMask& free, const FitData& data) {
  if (free.count() < 1)
    throw std::invalid_argument("fit: at least one parameter must be free");
  if (!data.correspondences.empty() &&
      (!data.annotations.empty() || !data.horizon_points.empty()))
    throw std::invalid_argument(
        "fit: map correspondences (meters) cannot be mixed with pixel residual families");
  if (data.weight_horizon < 0.0 || data.weight_horizon > 1.0)
    throw std::invalid_argument("fit: weight_horizon must lie in [0, 1]");
}

}  // namespace

Eigen::VectorXd weighted_residuals(const Intrinsics& intr, const Pose& pose,
                                   const FitData& data) {
  return evaluate(intr, pose, data).weighted;
}

Eigen::MatrixXd fit_jacobian(const Intrinsics& intr, const Pose& pose, const FreeMask& free,
                             const FitData& data, double fd_step_rel) {
  const Evaluation base = evaluate(intr, pose, data);
  if (!base.valid)
    throw std::invalid_argument("fit_jacobian: no usable residuals at this pose");
  return jacobian_impl(intr, pose, free_indices(free), data, base, fd_step_rel);
}

FitResult fit(const Intrinsics& intr, const Pose& initial, const FreeMask& free,
              const FitData& data, const FitOptions& options) {
  validate_fit_inputs(free, data);
  initial.validate_finite();
  intr.validate();

  const std::vector<int> idx = free_indices(free);
  const Pose start = initial.normalized();

  Evaluation ev = evaluate(intr, start, data);
  if (!ev.valid)
    throw std::invalid_argument("fit: no usable residuals at the initial pose");
  if (static_cast<Eigen::Index>(idx.size()) > ev.weighted.size())
    throw std::invalid_argument("fit: more free parameters than residuals");

  Eigen::VectorXd p = extract_params(start, idx);
  double cost = ev.cost;
  double lambda = options.lambda0;

  FitResult result;
  bool converged = false;
  bool rank_deficient = false;

  for (int iter = 1; iter <= options.max_iterations && !converged; ++iter) {
    result.iterations = iter;
    const Eigen::MatrixXd jac = jacobian_impl(intr, apply_params(start, idx, p), idx, data,
                                              ev, options.fd_step_rel);
    {
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
      const auto& sv = svd.singularValues();
      rank_deficient = !sv.allFinite() || sv(sv.size() - 1) <= 1e-12 * sv(0);
    }
    const Eigen::VectorXd grad = jac.transpose() * ev.weighted;
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::VectorXd damping = normal.diagonal().cwiseMax(1e-30);

    bool stepped = false;
    for (int attempt = 0; attempt < 64 && !stepped && !converged; ++attempt) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += lambda * damping;
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      if (step.cwiseAbs().maxCoeff() < options.step_tol) {
        converged = true;
        break;
      }
      const Eigen::VectorXd trial = p + step;
      const Evaluation trial_ev = evaluate(intr, apply_params(start, idx, trial), data);
      if (trial_ev.valid && trial_ev.cost < cost) {
        const double rel_change = (cost - trial_ev.cost) / std::max(cost, 1e-300);
        p = trial;
        ev = trial_ev;
        cost = trial_ev.cost;
        lambda = std::max(lambda / 10.0, 1e-15);
        if (rel_change < options.cost_tol) converged = true;
        stepped = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!stepped && !converged) break;  // damping exhausted, no downhill step
  }

  const Pose final_pose = apply_params(start, idx, p).normalized();
  result.pose = final_pose;
  result.rank_deficient = rank_deficient;
  result.converged = converged && !rank_deficient;
  result.cost = cost;
  result.excluded_annotations = ev.excluded_annotations;
  result.excluded_correspondences = ev.excluded_correspondences;
  if (ev.object.size() > 0)
    result.rms_object_px = std::sqrt(ev.object.squaredNorm() / static_cast<double>(ev.object.size()));
  if (ev.horizon.size() > 0)
    result.rms_horizon_px = std::sqrt(ev.horizon.squaredNorm() / static_cast<double>(ev.horizon.size()));
  if (ev.map.size() > 0)
    result.rms_map_m = std::sqrt(ev.map.squaredNorm() / static_cast<double>(ev.map.size()));

  // standard errors from the damped curvature at the optimum
  result.std_errors.fill(std::numeric_limits<double>::quiet_NaN());
  {
    const Eigen::MatrixXd jac =
        jacobian_impl(intr, final_pose, idx, data, ev, options.fd_step_rel);
    Eigen::MatrixXd curvature = jac.transpose() * jac;
    curvature.diagonal() += lambda * curvature.diagonal().cwiseMax(1e-30);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(curvature);
    if (lu.isInvertible()) {
      const Eigen::MatrixXd cov = lu.inverse();
      const double dof =
          std::max<double>(static_cast<double>(ev.weighted.size()) - static_cast<double>(idx.size()), 1.0);
      const double sigma2 = cost / dof;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double var = cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) * sigma2;
        result.std_errors[static_cast<std::size_t>(idx[k])] = var > 0.0 ? std::sqrt(var) : 0.0;
      }
    }
  }
  return result;
}

ReconstructedHeight reconstruct_height(const CameraMatrix& cam, const ObjectAnnotation& ann) {
  ReconstructedHeight out;
  const BackProjection foot = backproject(cam, ann.foot, Axis::x3, 0.0);
  if (!foot.ok()) return out;
  const BackProjection head = backproject(cam, ann.head, Axis::x2, foot.point.x2);
  if (!head.ok()) return out;
  out.value_m = head.point.x3;
  out.valid = true;
  return out;
}

std::vector<StudyRow> subset_study(const Intrinsics& intr,
                                   std::span<const ObjectAnnotation> annotations,
                                   std::span<const ImagePoint> horizon_points,
                                   int repeats, std::uint64_t seed, const Pose& initial,
                                   const FreeMask& free, const FitOptions& options) {
  if (repeats < 1) throw std::invalid_argument("subset_study: repeats must be >= 1");
  if (annotations.empty()) throw std::invalid_argument("subset_study: no annotations");

  const int total = static_cast<int>(annotations.size());
  std::vector<StudyRow> rows;
  rows.reserve(static_cast<std::size_t>(total) * repeats);

  for (int n = 1; n <= total; ++n) {
    for (int rep = 0; rep < repeats; ++rep) {
      const std::vector<int> picked = sample_without_replacement(
          n, total, derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep)));

      FitData data;
      data.annotations.reserve(static_cast<std::size_t>(n));
      for (int i : picked) data.annotations.push_back(annotations[static_cast<std::size_t>(i)]);
      data.horizon_points.assign(horizon_points.begin(), horizon_points.end());

      StudyRow row;
      row.n = n;
      row.repeat = rep;
      FitResult res;
      bool fit_ok = true;
      try {
        res = fit(intr, initial, free, data, options);
      } catch (const std::invalid_argument&) {
        fit_ok = false;  // e.g. every subset annotation degenerate at the initial pose
      }
      if (fit_ok) {
        row.height_m = res.pose.height_m;
        row.tilt_deg = res.pose.tilt_deg;
        row.converged = res.converged;

        const CameraMatrix cam = camera_matrix(intr, res.pose);
        std::vector<double> errs;
        errs.reserve(annotations.size());
        for (const ObjectAnnotation& ann : annotations) {
          const ReconstructedHeight rh = reconstruct_height(cam, ann);
          if (rh.valid) errs.push_back(rh.value_m - ann.known_height_m);
        }
        if (!errs.empty()) {
          const double mean = std::accumulate(errs.begin(), errs.end(), 0.0) /
                              static_cast<double>(errs.size());
          row.height_err_mean = mean;
          if (errs.size() > 1) {
            double ss = 0.0;
            for (double e : errs) ss += (e - mean) * (e - mean);
            row.height_err_std = std::sqrt(ss / static_cast<double>(errs.size() - 1));
          } else {
            row.height_err_std = 0.0;
          }
        }
      } else {
        row.height_m = initial.height_m;
        row.tilt_deg = initial.tilt_deg;
        row.converged = false;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace camgeo
