// camgeo command line: projection, back-projection, pose fitting,
// perturbation sweeps, subset studies and ground-plane top views.
//
// Exit codes: 0 success, 1 invalid input, 2 partial degeneracy
// (some rows not ok), 3 fit did not converge.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "camgeo/config.hpp"
#include "camgeo/csv.hpp"
#include "camgeo/fit.hpp"
#include "camgeo/geo.hpp"
#include "camgeo/raster.hpp"
#include "camgeo/scene.hpp"
#include "camgeo/topview.hpp"

namespace {

using namespace camgeo;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitNotConverged = 3;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* b = s.data();
  const auto res = std::from_chars(b, b + s.size(), v);
  if (res.ec != std::errc() || res.ptr != b + s.size() || !std::isfinite(v))
    fail(what + ": '" + s + "' is not a finite decimal");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_double(tok, what));
  return out;
}

// "height=10,tilt=80,...": unspecified fields keep the base value
Pose parse_pose_spec(const std::string& spec, const Pose& base) {
  Pose p = base;
  if (spec.empty()) return p;
  for (const std::string& item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail("pose spec: expected name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const double value = parse_double(item.substr(eq + 1), "pose spec " + name);
    if (name == "height") p.height_m = value;
    else if (name == "tilt") p.tilt_deg = value;
    else if (name == "roll") p.roll_deg = value;
    else if (name == "heading") p.heading_deg = value;
    else if (name == "x") p.offset_x_m = value;
    else if (name == "y") p.offset_y_m = value;
    else fail("pose spec: unknown parameter '" + name + "'");
  }
  return p.normalized();
}

FreeMask parse_free_mask(const std::string& spec) {
  FreeMask mask;
  for (const std::string& name : split(spec, ',')) {
    if (name == "height") mask.height = true;
    else if (name == "tilt") mask.tilt = true;
    else if (name == "roll") mask.roll = true;
    else if (name == "heading") mask.heading = true;
    else if (name == "x") mask.offset_x = true;
    else if (name == "y") mask.offset_y = true;
    else fail("--free: unknown parameter '" + name + "' (use height,tilt,roll,heading,x,y)");
  }
  return mask;
}

// output redirection: stdout unless --output was given
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<ImagePoint> read_pixel_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open points file '" + path + "'");
  std::vector<ImagePoint> out;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "image_x,image_y") fail("points file: expected header 'image_x,image_y'");
      saw_header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 2) fail("points file line " + std::to_string(lineno) + ": expected 2 fields");
    out.push_back(ImagePoint{parse_double(cells[0], "image_x"), parse_double(cells[1], "image_y")});
  }
  if (!saw_header) fail("points file: missing header row");
  return out;
}

std::vector<WorldPoint> read_world_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open points file '" + path + "'");
  std::vector<WorldPoint> out;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "x1,x2,x3") fail("points file: expected header 'x1,x2,x3'");
      saw_header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 3) fail("points file line " + std::to_string(lineno) + ": expected 3 fields");
    out.push_back(WorldPoint{parse_double(cells[0], "x1"), parse_double(cells[1], "x2"),
                             parse_double(cells[2], "x3")});
  }
  if (!saw_header) fail("points file: missing header row");
  return out;
}

json pose_to_json(const Pose& p) {
  return json{{"height_m", p.height_m},   {"tilt_deg", p.tilt_deg},
              {"roll_deg", p.roll_deg},   {"heading_deg", p.heading_deg},
              {"offset_x_m", p.offset_x_m}, {"offset_y_m", p.offset_y_m}};
}

json fit_result_to_json(const FitResult& res) {
  json rms;
  rms["object_px"] = res.rms_object_px;
  rms["horizon_px"] = res.rms_horizon_px;
  rms["map_m"] = res.rms_map_m;
  json se;
  const char* names[6] = {"height_m", "tilt_deg", "roll_deg", "heading_deg",
                          "offset_x_m", "offset_y_m"};
  for (int i = 0; i < 6; ++i) se[names[i]] = res.std_errors[static_cast<std::size_t>(i)];
  return json{{"pose", pose_to_json(res.pose)},
              {"converged", res.converged},
              {"rank_deficient", res.rank_deficient},
              {"iterations", res.iterations},
              {"cost", res.cost},
              {"rms", rms},
              {"std_errors", se},
              {"excluded", json{{"annotations", res.excluded_annotations},
                                {"correspondences", res.excluded_correspondences}}}};
}

// ---- subcommand implementations ----

struct ProjectArgs {
  std::string config;
  std::string points_file;
  std::vector<std::string> inline_points;
  std::string output;
};

int run_project(const ProjectArgs& args) {
  const CameraConfig config = load_camera_config(args.config);
  const CameraMatrix cam = camera_matrix(config.intrinsics, config.pose);

  std::vector<WorldPoint> points;
  if (!args.points_file.empty()) points = read_world_rows(args.points_file);
  for (const std::string& spec : args.inline_points) {
    const auto v = parse_double_list(spec, "--point");
    if (v.size() != 3) fail("--point expects x1,x2,x3");
    points.push_back(WorldPoint{v[0], v[1], v[2]});
  }
  if (points.empty()) fail("no input points (use --points or --point)");

  OutputTarget target(args.output);
  CsvWriter csv(target.stream());
  csv.header({"x1", "x2", "x3", "y1", "y2", "status"});
  bool all_ok = true;
  for (const WorldPoint& p : points) {
    const Projection pr = project(cam, p);
    std::string status = "ok";
    double y1 = pr.pixel.y1, y2 = pr.pixel.y2;
    if (pr.at_camera_plane) {
      status = "degenerate";
      y1 = y2 = std::numeric_limits<double>::quiet_NaN();
    } else if (pr.behind()) {
      status = "behind";
    }
    if (status != "ok") all_ok = false;
    csv.row_strings({format_number(p.x1), format_number(p.x2), format_number(p.x3),
                     format_number(y1), format_number(y2), status});
  }
  return all_ok ? kExitOk : kExitDegenerate;
}

struct BackprojectArgs {
  std::string config;
  std::string points_file;
  std::vector<std::string> inline_points;
  std::string fix_axis;
  double fix_value = 0.0;
  std::string output;
};

int run_backproject(const BackprojectArgs& args) {
  const CameraConfig config = load_camera_config(args.config);
  const CameraMatrix cam = camera_matrix(config.intrinsics, config.pose);

  Axis axis;
  if (args.fix_axis == "x1") axis = Axis::x1;
  else if (args.fix_axis == "x2") axis = Axis::x2;
  else if (args.fix_axis == "x3") axis = Axis::x3;
  else fail("--fix must be one of x1, x2, x3");

  std::vector<ImagePoint> points;
  if (!args.points_file.empty()) points = read_pixel_rows(args.points_file);
  for (const std::string& spec : args.inline_points) {
    const auto v = parse_double_list(spec, "--point");
    if (v.size() != 2) fail("--point expects image_x,image_y");
    points.push_back(ImagePoint{v[0], v[1]});
  }
  if (points.empty()) fail("no input points (use --points or --point)");

  OutputTarget target(args.output);
  CsvWriter csv(target.stream());
  csv.header({"image_x", "image_y", "x1", "x2", "x3", "status"});
  bool all_ok = true;
  for (const ImagePoint& px : points) {
    const BackProjection bp = backproject(cam, px, axis, args.fix_value);
    std::string status = "ok";
    double c[3] = {bp.point.x1, bp.point.x2, bp.point.x3};
    if (bp.degenerate) {
      status = "degenerate";
      c[0] = c[1] = c[2] = std::numeric_limits<double>::quiet_NaN();
    } else if (bp.behind_camera) {
      status = "behind";
    }
    if (status != "ok") all_ok = false;
    csv.row_strings({format_number(px.y1), format_number(px.y2), format_number(c[0]),
                     format_number(c[1]), format_number(c[2]), status});
  }
  return all_ok ? kExitOk : kExitDegenerate;
}

struct FitObjectsArgs {
  std::string config;
  std::string annotations;
  std::string horizon;
  std::string free_spec = "height,tilt";
  std::string initial_spec;
  bool multistart = false;
  std::string output;
};

Pose cli_default_initial() { return Pose(10.0, 80.0, 0.0, 0.0, 0.0, 0.0); }

int run_fit_objects(const FitObjectsArgs& args) {
  const CameraConfig config = load_camera_config(args.config);

  FitData data;
  const auto records = read_annotations_file(args.annotations);
  if (records.empty()) fail("annotation file contains no records");
  for (const auto& rec : records) data.annotations.push_back(rec.annotation);
  if (!args.horizon.empty()) data.horizon_points = read_horizon_points_file(args.horizon);

  const FreeMask free = parse_free_mask(args.free_spec);
  const Pose initial = parse_pose_spec(args.initial_spec, cli_default_initial());

  std::vector<Pose> starts{initial};
  if (args.multistart) {
    for (double tilt : {45.0, 60.0, 75.0, 85.0}) {
      Pose p = initial;
      p.tilt_deg = tilt;
      starts.push_back(p);
    }
  }

  std::optional<FitResult> best;
  for (const Pose& start : starts) {
    try {
      const FitResult res = fit(config.intrinsics, start, free, data);
      if (!best || res.cost < best->cost) best = res;
    } catch (const std::invalid_argument&) {
      // a start where every residual is excluded; other starts may work
    }
  }
  if (!best) fail("fit failed from every start: no usable residuals");

  OutputTarget target(args.output);
  target.stream() << fit_result_to_json(*best).dump(2) << "\n";
  return best->converged ? kExitOk : kExitNotConverged;
}

struct FitMapArgs {
  std::string config;
  std::string correspondences;
  std::string free_spec = "height,tilt,heading,x,y";
  std::string initial_spec;
  std::string output;
};

int run_fit_map(const FitMapArgs& args) {
  const CameraConfig config = load_camera_config(args.config);
  const CorrespondenceFile file = read_correspondences_file(args.correspondences);
  if (file.records.empty()) fail("correspondence file contains no records");

  FitData data;
  for (const auto& rec : file.records) {
    WorldPoint world;
    if (file.geographic) {
      if (!config.geo_anchor)
        fail("correspondences use lat,lon but the camera config has no geo_anchor");
      world = gps_to_world(*config.geo_anchor, rec.a, rec.b);
    } else {
      world = WorldPoint{rec.a, rec.b, 0.0};
    }
    data.correspondences.push_back(Correspondence{rec.image, world});
  }

  const FreeMask free = parse_free_mask(args.free_spec);
  const int needed = (free.count() + 1) / 2;
  if (static_cast<int>(data.correspondences.size()) < needed)
    fail("a " + std::to_string(free.count()) + "-parameter fit needs at least " +
         std::to_string(needed) + " correspondences");

  const Pose initial = parse_pose_spec(args.initial_spec, cli_default_initial());
  const FitResult res = fit(config.intrinsics, initial, free, data);

  json report = fit_result_to_json(res);
  // per-point residuals at the fitted pose: outliers stay visible
  const CameraMatrix cam = camera_matrix(config.intrinsics, res.pose);
  json rows = json::array();
  for (std::size_t i = 0; i < data.correspondences.size(); ++i) {
    const Correspondence& c = data.correspondences[i];
    const BackProjection bp = backproject(cam, c.image, Axis::x3, 0.0);
    json row;
    row["id"] = file.records[i].id;
    if (bp.ok()) {
      const double dx = bp.point.x1 - c.world.x1;
      const double dy = bp.point.x2 - c.world.x2;
      row["dx_m"] = dx;
      row["dy_m"] = dy;
      row["norm_m"] = std::hypot(dx, dy);
      row["status"] = "ok";
    } else {
      row["status"] = bp.degenerate ? "degenerate" : "behind";
    }
    rows.push_back(row);
  }
  report["residuals"] = rows;
  // fitted camera ground position (world frame and, when anchored, GPS)
  const WorldPoint ground{-res.pose.offset_x_m, -res.pose.offset_y_m, 0.0};
  report["camera_ground"] = json{{"x1_m", ground.x1}, {"x2_m", ground.x2}};
  if (config.geo_anchor) {
    const GeoPoint gps = world_to_gps(*config.geo_anchor, ground);
    report["camera_gps"] = json{{"lat_deg", gps.latitude_deg}, {"lon_deg", gps.longitude_deg}};
  }

  OutputTarget target(args.output);
  target.stream() << report.dump(2) << "\n";
  return res.converged ? kExitOk : kExitNotConverged;
}

struct SweepArgs {
  std::string config;
  std::string parameter = "both";
  double range = 0.1;
  int steps = 11;
  std::string distances = "50,100,150,200,250,300";
  double object_height = 1.0;
  std::string output;
};

int run_sweep(const SweepArgs& args) {
  const CameraConfig config = load_camera_config(args.config);
  const std::vector<double> distances = parse_double_list(args.distances, "--distances");

  std::vector<SweepParameter> params;
  if (args.parameter == "both") params = {SweepParameter::height, SweepParameter::tilt};
  else if (args.parameter == "height") params = {SweepParameter::height};
  else if (args.parameter == "tilt") params = {SweepParameter::tilt};
  else fail("--parameter must be height, tilt or both");

  OutputTarget target(args.output);
  CsvWriter csv(target.stream());
  csv.header({"parameter", "parameter_value", "distance_m", "apparent_height_m", "status"});
  for (SweepParameter param : params) {
    const auto rows = perturbation_sweep(config.intrinsics, config.pose, param, args.range,
                                         args.steps, distances, args.object_height);
    for (const SweepRow& row : rows) {
      csv.row_strings({row.parameter == SweepParameter::height ? "height" : "tilt",
                       format_number(row.parameter_value), format_number(row.distance_m),
                       format_number(row.valid ? row.apparent_height_m
                                               : std::numeric_limits<double>::quiet_NaN()),
                       row.valid ? "ok" : "invalid"});
    }
  }
  return kExitOk;
}

struct StudyArgs {
  std::string config;
  std::string annotations;
  std::string horizon;
  int repeats = 0;
  std::uint64_t seed = 0;
  std::string free_spec = "height,tilt";
  std::string initial_spec;
  std::string output;
};

int run_study(const StudyArgs& args) {
  const CameraConfig config = load_camera_config(args.config);
  const auto records = read_annotations_file(args.annotations);
  if (records.empty()) fail("annotation file contains no records");
  std::vector<ObjectAnnotation> annotations;
  for (const auto& rec : records) annotations.push_back(rec.annotation);

  std::vector<ImagePoint> horizon;
  if (!args.horizon.empty()) horizon = read_horizon_points_file(args.horizon);

  const FreeMask free = parse_free_mask(args.free_spec);
  const Pose initial = parse_pose_spec(args.initial_spec, cli_default_initial());

  const auto rows = subset_study(config.intrinsics, annotations, horizon, args.repeats,
                                 args.seed, initial, free);

  OutputTarget target(args.output);
  CsvWriter csv(target.stream());
  csv.header({"n", "repeat", "height", "tilt", "converged", "height_err_mean",
              "height_err_std"});
  for (const StudyRow& row : rows) {
    csv.row_strings({std::to_string(row.n), std::to_string(row.repeat),
                     format_number(row.height_m), format_number(row.tilt_deg),
                     row.converged ? "1" : "0", format_number(row.height_err_mean),
                     format_number(row.height_err_std)});
  }
  return kExitOk;
}

struct TopviewArgs {
  std::string config;
  std::string extent;
  double resolution = 0.0;
  std::string image;
  std::string warped;
  std::string output;
};

int run_topview(const TopviewArgs& args) {
  const CameraConfig config = load_camera_config(args.config);
  const CameraMatrix cam = camera_matrix(config.intrinsics, config.pose);

  const auto e = parse_double_list(args.extent, "--extent");
  if (e.size() != 4) fail("--extent expects x_min,x_max,y_min,y_max");
  const GroundExtent extent{e[0], e[1], e[2], e[3]};
  const TopviewMap map = topview_map(cam, extent, args.resolution);

  if (!args.image.empty()) {
    if (args.warped.empty()) fail("--image requires --warped output path");
    const Raster input = load_pnm_file(args.image);
    const Raster out = resample_topview(input, map);
    save_pnm_file(args.warped, out);
  } else if (!args.warped.empty()) {
    fail("--warped requires --image");
  }

  OutputTarget target(args.output);
  CsvWriter csv(target.stream());
  csv.header({"row", "col", "x1_m", "x2_m", "src_x", "src_y", "status"});
  for (int row = 0; row < map.rows; ++row) {
    for (int col = 0; col < map.cols; ++col) {
      const WorldPoint c = map.cell_center(row, col);
      const ImagePoint& src = map.at(row, col);
      const bool ok = map.valid(row, col);
      csv.row_strings({std::to_string(row), std::to_string(col), format_number(c.x1),
                       format_number(c.x2), format_number(src.y1), format_number(src.y2),
                       ok ? "ok" : "outside"});
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"camgeo: pinhole camera projection, pose fitting and geo-referencing"};
  app.require_subcommand(1);

  ProjectArgs project_args;
  auto* cmd_project = app.add_subcommand("project", "Project world points to pixels");
  cmd_project->add_option("--config", project_args.config, "camera config JSON")->required();
  cmd_project->add_option("--points", project_args.points_file, "CSV with header x1,x2,x3");
  cmd_project->add_option("--point", project_args.inline_points, "inline point x1,x2,x3");
  cmd_project->add_option("--output", project_args.output, "output CSV (default stdout)");

  BackprojectArgs backproject_args;
  auto* cmd_backproject =
      app.add_subcommand("backproject", "Back-project pixels with one world coordinate fixed");
  cmd_backproject->add_option("--config", backproject_args.config, "camera config JSON")->required();
  cmd_backproject->add_option("--points", backproject_args.points_file,
                              "CSV with header image_x,image_y");
  cmd_backproject->add_option("--point", backproject_args.inline_points,
                              "inline pixel image_x,image_y");
  cmd_backproject->add_option("--fix", backproject_args.fix_axis, "fixed axis: x1, x2 or x3")
      ->required();
  cmd_backproject->add_option("--value", backproject_args.fix_value, "fixed coordinate value")
      ->required();
  cmd_backproject->add_option("--output", backproject_args.output, "output CSV (default stdout)");

  FitObjectsArgs fit_objects_args;
  auto* cmd_fit_objects =
      app.add_subcommand("fit-objects", "Fit pose from known-height object annotations");
  cmd_fit_objects->add_option("--config", fit_objects_args.config, "camera config JSON")->required();
  cmd_fit_objects->add_option("--annotations", fit_objects_args.annotations, "annotation CSV")
      ->required();
  cmd_fit_objects->add_option("--horizon", fit_objects_args.horizon, "horizon point CSV");
  cmd_fit_objects->add_option("--free", fit_objects_args.free_spec,
                              "free parameters (default height,tilt)");
  cmd_fit_objects->add_option("--initial", fit_objects_args.initial_spec,
                              "initial pose, e.g. height=10,tilt=80");
  cmd_fit_objects->add_flag("--multistart", fit_objects_args.multistart,
                            "also start from tilt 45,60,75,85");
  cmd_fit_objects->add_option("--output", fit_objects_args.output, "report path (default stdout)");

  FitMapArgs fit_map_args;
  auto* cmd_fit_map = app.add_subcommand("fit-map", "Fit pose from image-to-map correspondences");
  cmd_fit_map->add_option("--config", fit_map_args.config, "camera config JSON")->required();
  cmd_fit_map->add_option("--correspondences", fit_map_args.correspondences, "correspondence CSV")
      ->required();
  cmd_fit_map->add_option("--free", fit_map_args.free_spec,
                          "free parameters (default height,tilt,heading,x,y)");
  cmd_fit_map->add_option("--initial", fit_map_args.initial_spec, "initial pose");
  cmd_fit_map->add_option("--output", fit_map_args.output, "report path (default stdout)");

  SweepArgs sweep_args;
  auto* cmd_sweep =
      app.add_subcommand("sweep", "Apparent-height table under height/tilt perturbation");
  cmd_sweep->add_option("--config", sweep_args.config, "camera config JSON")->required();
  cmd_sweep->add_option("--parameter", sweep_args.parameter, "height, tilt or both (default)");
  cmd_sweep->add_option("--range", sweep_args.range, "relative range (default 0.1)");
  cmd_sweep->add_option("--steps", sweep_args.steps, "grid steps (default 11)");
  cmd_sweep->add_option("--distances", sweep_args.distances,
                        "comma list of distances in m (default 50..300)");
  cmd_sweep->add_option("--object-height", sweep_args.object_height,
                        "true object height in m (default 1)");
  cmd_sweep->add_option("--output", sweep_args.output, "output CSV (default stdout)");

  StudyArgs study_args;
  auto* cmd_study =
      app.add_subcommand("study", "Subset-sampling study of fit stability vs object count");
  cmd_study->add_option("--config", study_args.config, "camera config JSON")->required();
  cmd_study->add_option("--annotations", study_args.annotations, "annotation CSV")->required();
  cmd_study->add_option("--horizon", study_args.horizon, "horizon point CSV");
  cmd_study->add_option("--repeats", study_args.repeats, "repeats per subset size")->required();
  cmd_study->add_option("--seed", study_args.seed, "random seed")->required();
  cmd_study->add_option("--free", study_args.free_spec, "free parameters (default height,tilt)");
  cmd_study->add_option("--initial", study_args.initial_spec, "initial pose");
  cmd_study->add_option("--output", study_args.output, "output CSV (default stdout)");

  TopviewArgs topview_args;
  auto* cmd_topview = app.add_subcommand("topview", "Ground-plane top-view mapping grid / warp");
  cmd_topview->add_option("--config", topview_args.config, "camera config JSON")->required();
  cmd_topview->add_option("--extent", topview_args.extent, "x_min,x_max,y_min,y_max in m")
      ->required();
  cmd_topview->add_option("--resolution", topview_args.resolution, "meters per cell")->required();
  cmd_topview->add_option("--image", topview_args.image, "input PPM/PGM to warp");
  cmd_topview->add_option("--warped", topview_args.warped, "output PPM/PGM path");
  cmd_topview->add_option("--output", topview_args.output, "grid CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (app.got_subcommand(cmd_project)) return run_project(project_args);
    if (app.got_subcommand(cmd_backproject)) return run_backproject(backproject_args);
    if (app.got_subcommand(cmd_fit_objects)) return run_fit_objects(fit_objects_args);
    if (app.got_subcommand(cmd_fit_map)) return run_fit_map(fit_map_args);
    if (app.got_subcommand(cmd_sweep)) return run_sweep(sweep_args);
    if (app.got_subcommand(cmd_study)) return run_study(study_args);
    if (app.got_subcommand(cmd_topview)) return run_topview(topview_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
