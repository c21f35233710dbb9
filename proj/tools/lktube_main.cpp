#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "lktube/classification.hpp"
#include "lktube/config.hpp"
#include "lktube/errors.hpp"
#include "lktube/io.hpp"
#include "lktube/mesh.hpp"
#include "lktube/operators.hpp"
#include "lktube/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lktube;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kOracleTol = 1e-6;  // closed-form vs numeric adjudication threshold

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  bool verbose = false;
};

void write_json(const fs::path& path, const json& j) { atomic_write_file(path, j.dump(2) + "\n"); }

int cmd_frame(const GlobalArgs& args, const RunConfig& cfg) {
  const CurveCase c = cfg.family.curve_case();
  const FramedCurve curve = integrate_frame(c, cfg.curvatures, cfg.s0, cfg.s1,
                                            standard_frame(c), cfg.integration_step);
  double ortho_drift = 0.0;
  for (const auto& st : curve.samples())
    ortho_drift = std::fmax(ortho_drift, check_orthonormality(st.frame));

  // unit-speed drift via 5-point differences of the integrated curve points
  const auto& sg = curve.s_grid();
  const auto& smp = curve.samples();
  const double eps1 = case_signature(c)[0];
  double speed_drift = 0.0;
  if (sg.size() >= 5) {
    const double h = sg[1] - sg[0];
    for (std::size_t i = 2; i + 2 < sg.size(); ++i) {
      Vec4 d;
      for (int q = 0; q < 4; ++q)
        d[q] = (-smp[i + 2].point[q] + 8.0 * smp[i + 1].point[q] - 8.0 * smp[i - 1].point[q] +
                smp[i - 2].point[q]) /
               (12.0 * h);
      speed_drift = std::fmax(speed_drift, std::fabs(inner(d, d) - eps1));
    }
  }

  const bool ok = ortho_drift < cfg.frame_tol && speed_drift < cfg.frame_tol;
  json rep{{"schema_version", kSchemaVersion},
           {"report", "frame"},
           {"case", case_name(c)},
           {"family", cfg.family.name()},
           {"s_range", {cfg.s0, cfg.s1}},
           {"step", cfg.integration_step},
           {"samples", sg.size()},
           {"max_orthonormality_drift", ortho_drift},
           {"max_unit_speed_drift", speed_drift},
           {"frame_tol", cfg.frame_tol},
           {"within_tolerance", ok}};
  write_json(fs::path(args.out_dir) / "frame_report.json", rep);
  std::printf("frame: case=%s samples=%zu ortho_drift=%.3e speed_drift=%.3e -> %s\n", case_name(c),
              sg.size(), ortho_drift, speed_drift, ok ? "OK" : "OUT OF TOLERANCE");
  return ok ? 0 : 1;
}

int cmd_lk(const GlobalArgs& args, const RunConfig& cfg) {
  const TubeSpec spec = cfg.make_spec();
  const std::vector<GridPoint> points = full_grid(cfg.grid_ranges(), cfg.ns, cfg.nt, cfg.nw);

  struct Row {
    GridPoint p;
    std::array<double, 4> n{}, l1c{}, l1n{}, l2c{}, l2n{};
    Vec4 n_amb, l1_amb, l2_amb;
    std::array<double, 3> kap{};
    SymmetricFunctions a{};
    bool ok = false;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), args.threads, [&](std::size_t i) {
    Row& r = rows[i];
    r.p = points[i];
    if (!grid_point_regular(spec, r.p)) return;
    try {
      r.n = unit_normal_components(spec.family, r.p.t, r.p.w);
      r.n_amb = unit_normal(spec, r.p.s, r.p.t, r.p.w);
      const LkResult l1c = l1_closed_form(spec, r.p.s, r.p.t, r.p.w);
      const LkResult l2c = l2_closed_form(spec, r.p.s, r.p.t, r.p.w);
      r.l1c = l1c.frenet;
      r.l2c = l2c.frenet;
      r.l1_amb = l1c.ambient;
      r.l2_amb = l2c.ambient;
      r.l1n = lk_gauss_map_numeric(spec, 1, r.p.s, r.p.t, r.p.w, cfg.fd_step, cfg.richardson).frenet;
      r.l2n = lk_gauss_map_numeric(spec, 2, r.p.s, r.p.t, r.p.w, cfg.fd_step, cfg.richardson).frenet;
      r.kap = principal_curvatures(spec, r.p.s, r.p.t, r.p.w);
      r.a = symmetric_functions(r.kap);
      r.ok = true;
    } catch (const SingularPoint&) {
    } catch (const DegenerateMetric&) {
    }
  });

  std::string csv =
      "family,s,t,w,n1,n2,n3,n4,"
      "l1_closed_f1,l1_closed_f2,l1_closed_f3,l1_closed_f4,"
      "l1_numeric_f1,l1_numeric_f2,l1_numeric_f3,l1_numeric_f4,"
      "l2_closed_f1,l2_closed_f2,l2_closed_f3,l2_closed_f4,"
      "l2_numeric_f1,l2_numeric_f2,l2_numeric_f3,l2_numeric_f4,"
      "kappa1,kappa2,kappa3,a1,a2,a3,l1_max_diff,l2_max_diff,"
      "n_x1,n_x2,n_x3,n_x4,l1_x1,l1_x2,l1_x3,l1_x4,l2_x1,l2_x2,l2_x3,l2_x4,regular\n";
  std::array<std::array<double, 4>, 2> max_diff{};  // [k-1][component]
  std::array<std::array<double, 4>, 2> sum_diff{};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0, excluded = 0;
  for (const Row& r : rows) {
    csv += spec.family.name() + ',' + format_sci(r.p.s) + ',' + format_sci(r.p.t) + ',' +
           format_sci(r.p.w);
    if (!r.ok) {
      // singular or degenerate points stay in the file, flagged
      ++excluded;
      for (int q = 0; q < 40; ++q) csv += ',' + format_sci(nan);
      csv += ",0\n";
      continue;
    }
    ++used;
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t q = 0; q < 4; ++q) {
      const double e1 = std::fabs(r.l1c[q] - r.l1n[q]);
      const double e2 = std::fabs(r.l2c[q] - r.l2n[q]);
      max_diff[0][q] = std::fmax(max_diff[0][q], e1);
      max_diff[1][q] = std::fmax(max_diff[1][q], e2);
      sum_diff[0][q] += e1;
      sum_diff[1][q] += e2;
      d1 = std::fmax(d1, e1);
      d2 = std::fmax(d2, e2);
    }
    for (const auto& arr4 : {r.n, r.l1c, r.l1n, r.l2c, r.l2n})
      for (double v : arr4) csv += ',' + format_sci(v);
    for (double v : r.kap) csv += ',' + format_sci(v);
    for (double v : {r.a.a1, r.a.a2, r.a.a3}) csv += ',' + format_sci(v);
    csv += ',' + format_sci(d1) + ',' + format_sci(d2);
    for (const Vec4& amb : {r.n_amb, r.l1_amb, r.l2_amb})
      for (int q = 0; q < 4; ++q) csv += ',' + format_sci(amb[q]);
    csv += ",1\n";
  }
  if (used == 0) {
    std::fprintf(stderr, "lk: no usable grid points (%zu excluded as singular)\n", excluded);
    return 1;
  }
  atomic_write_file(fs::path(args.out_dir) / "lk_samples.csv", csv);

  json terms = json::array();
  bool all_agree = true;
  const char* comp_names[4] = {"F1", "F2", "F3", "F4"};
  for (int k = 1; k <= 2; ++k)
    for (std::size_t q = 0; q < 4; ++q) {
      const double mx = max_diff[static_cast<std::size_t>(k - 1)][q];
      const bool agree = mx <= kOracleTol;
      all_agree = all_agree && agree;
      terms.push_back(json{{"k", k},
                           {"component", comp_names[q]},
                           {"max_abs_diff", mx},
                           {"mean_abs_diff",
                            used ? sum_diff[static_cast<std::size_t>(k - 1)][q] / static_cast<double>(used) : 0.0},
                           {"tolerance", kOracleTol},
                           {"verdict", agree ? "agreement" : "discrepancy"}});
    }
  json summary{{"schema_version", kSchemaVersion},
               {"report", "lk"},
               {"family", spec.family.name()},
               {"radius", cfg.radius},
               {"grid", {cfg.ns, cfg.nt, cfg.nw}},
               {"used_points", used},
               {"excluded_points", excluded},
               {"fd_step", cfg.fd_step},
               {"richardson", cfg.richardson},
               {"terms", terms},
               {"all_terms_agree", all_agree}};
  write_json(fs::path(args.out_dir) / "lk_summary.json", summary);

  std::printf("lk: family=%s points=%zu excluded=%zu -> %s\n", spec.family.name().c_str(), used,
              excluded, all_agree ? "all terms agree" : "DISCREPANCY RECORDED");
  if (args.verbose)
    for (const auto& t : terms)
      std::printf("  L%d %s max|closed-numeric|=%.3e (%s)\n", t["k"].get<int>(),
                  t["component"].get<std::string>().c_str(), t["max_abs_diff"].get<double>(),
                  t["verdict"].get<std::string>().c_str());
  return 0;
}

json witness_to_json(const WitnessResult& wr) {
  json j{{"witness", wr.witness},
         {"k1_zero", wr.k1_zero},
         {"residual", wr.residual},
         {"verdict", to_string(wr.verdict)},
         {"expected", to_string(wr.expected)},
         {"pass", wr.pass},
         {"used_points", wr.used_points},
         {"excluded_points", wr.excluded_points},
         {"zero_function_flag", wr.zero_function_flag}};
  if (wr.has_expected_m) {
    j["m_constant"] = wr.m_constant;
    j["m_value"] = wr.m_value;
    j["expected_m"] = wr.expected_m;
  }
  if (!wr.error.empty()) j["error"] = wr.error;
  return j;
}

int cmd_classify(const GlobalArgs& args, const RunConfig& cfg) {
  const SuiteConfig sc = cfg.make_suite_config();
  const SuiteReport rep = theorem_suite(sc, args.threads);

  json checks = json::array();
  for (const auto& chk : rep.checks) {
    json wits = json::array();
    for (const auto& wr : chk.witnesses) wits.push_back(witness_to_json(wr));
    checks.push_back(json{{"id", chk.id},
                          {"family", chk.family},
                          {"k", chk.k},
                          {"class", to_string(chk.class_tested)},
                          {"pass", chk.pass},
                          {"witnesses", wits}});
  }
  json out{{"schema_version", kSchemaVersion},
           {"report", "classify"},
           {"route", to_string(sc.route)},
           {"radius", sc.radius},
           {"class_tol", sc.class_tol},
           {"checks", checks},
           {"all_pass", rep.all_pass}};
  write_json(fs::path(args.out_dir) / "classify_report.json", out);

  std::printf("%-28s %-12s %-10s %s\n", "check", "witness", "verdict", "status");
  for (const auto& chk : rep.checks)
    for (const auto& wr : chk.witnesses) {
      if (!wr.error.empty())
        std::printf("%-28s %-12s %-10s ERROR: %s\n", chk.id.c_str(), wr.witness.c_str(), "-",
                    wr.error.c_str());
      else
        std::printf("%-28s %-12s %-10s %s (residual %.3e)\n", chk.id.c_str(), wr.witness.c_str(),
                    to_string(wr.verdict), wr.pass ? "pass" : "FAIL", wr.residual);
    }
  std::printf("classify: %zu checks -> %s\n", rep.checks.size(),
              rep.all_pass ? "all consistent with the theorems" : "MISMATCH");
  return rep.all_pass ? 0 : 1;
}

int cmd_mesh(const GlobalArgs& args, const RunConfig& cfg) {
  const TubeSpec spec = cfg.make_spec();
  MeshOptions mo;
  mo.slices = cfg.mesh_slices;
  mo.nt = cfg.mesh_nt;
  mo.nw = cfg.mesh_nw;
  mo.ranges = cfg.grid_ranges();
  mo.fd_step = cfg.fd_step;
  mo.richardson = cfg.richardson;
  mo.channels = cfg.mesh_channels;
  mo.threads = args.threads;
  const MeshResult res = write_tube_mesh(spec, mo, fs::path(args.out_dir) / "tube.obj",
                                         fs::path(args.out_dir) / "tube_channels.csv");
  std::printf("mesh: %zu vertices, %zu triangles, %zu flagged -> %s\n", res.vertices,
              res.triangles, res.flagged, (fs::path(args.out_dir) / "tube.obj").c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tubular hypersurfaces in Minkowski 4-space: Frenet frames, L1/L2 operators "
               "of the Gauss map, and Gauss-map classification checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalArgs args;
  app.add_option("--config", args.config_path, "JSON run configuration")->required();
  app.add_option("--out", args.out_dir, "output directory (default: current)");
  app.add_option("--threads", args.threads, "worker threads for grid evaluation")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verbose", args.verbose, "chattier stdout");

  auto* frame = app.add_subcommand("frame", "frame-integrity report for the configured curve");
  auto* lk = app.add_subcommand("lk", "evaluate L1/L2 by closed form and generic pipeline");
  auto* classify = app.add_subcommand("classify", "run the theorem suite");
  auto* mesh = app.add_subcommand("mesh", "export OBJ mesh + scalar channel CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config(args.config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (frame->parsed()) return cmd_frame(args, cfg);
    if (lk->parsed()) return cmd_lk(args, cfg);
    if (classify->parsed()) return cmd_classify(args, cfg);
    if (mesh->parsed()) return cmd_mesh(args, cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
