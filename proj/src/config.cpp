#include "lktube/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lktube {

namespace {

using nlohmann::json;

// Fail-closed object reader: every key must be consumed, unknown keys are errors.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected a JSON object");
  }
  ~StrictObject() = default;

  bool has(const std::string& key) {
    if (j_.contains(key)) {
      seen_.insert(key);
      return true;
    }
    return false;
  }

  const json& at(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(path_ + ": missing required field '" + key + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  template <typename T>
  T get(const std::string& key) {
    try {
      return at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError(path_ + ": unknown field '" + it.key() + "' (fail-closed config)");
  }

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

ScalarFunction parse_curvature(const json& j, const std::string& path, std::string* label) {
  StrictObject o(j, path);
  const std::string preset = o.get<std::string>("preset");
  ScalarFunction fn;
  if (preset == "zero") {
    fn = ScalarFunction::zero();
    if (label) *label = "zero";
  } else if (preset == "constant") {
    const double v = o.get<double>("value");
    fn = ScalarFunction::constant(v);
    if (label) *label = "constant(" + std::to_string(v) + ")";
  } else if (preset == "sinusoid") {
    const double a = o.get<double>("offset");
    const double b = o.get<double>("amplitude");
    const double omega = o.get_or<double>("omega", 1.0);
    fn = ScalarFunction::sinusoid(a, b, omega);
    if (label) *label = "sinusoid(" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(omega) + ")";
  } else if (preset == "table") {
    auto s = o.get<std::vector<double>>("s");
    auto v = o.get<std::vector<double>>("values");
    try {
      fn = ScalarFunction::table(std::move(s), std::move(v));
    } catch (const std::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
    if (label) *label = "table";
  } else {
    throw ConfigError(path + ".preset: unknown preset '" + preset +
                      "' (expected zero | constant | sinusoid | table)");
  }
  o.finish();
  return fn;
}

TubeFamily parse_family(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a family name string");
  try {
    return TubeFamily::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::array<double, 2> parse_range(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path + ": expected [lo, hi]");
  std::array<double, 2> r{j[0].get<double>(), j[1].get<double>()};
  if (!(r[0] <= r[1])) throw ConfigError(path + ": lo must be <= hi");
  return r;
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  StrictObject o(root, origin);
  RunConfig cfg;

  cfg.family = parse_family(o.at("family"), origin + ".family");
  cfg.radius = o.get<double>("radius");
  if (!(cfg.radius > 0.0)) throw ConfigError(origin + ".radius: must be > 0");

  {
    StrictObject c(o.at("curvatures"), origin + ".curvatures");
    cfg.curvatures.k1 = parse_curvature(c.at("k1"), origin + ".curvatures.k1", nullptr);
    cfg.curvatures.k2 = parse_curvature(c.at("k2"), origin + ".curvatures.k2", nullptr);
    cfg.curvatures.k3 = parse_curvature(c.at("k3"), origin + ".curvatures.k3", nullptr);
    c.finish();
  }

  const auto srange = parse_range(o.at("s_range"), origin + ".s_range");
  cfg.s0 = srange[0];
  cfg.s1 = srange[1];

  if (o.has("grid")) {
    StrictObject g(o.raw().at("grid"), origin + ".grid");
    cfg.ns = g.get_or<int>("ns", cfg.ns);
    cfg.nt = g.get_or<int>("nt", cfg.nt);
    cfg.nw = g.get_or<int>("nw", cfg.nw);
    g.finish();
    if (cfg.ns < 2 || cfg.nt < 2 || cfg.nw < 2)
      throw ConfigError(origin + ".grid: sizes must be >= 2");
  }
  if (o.has("t_range")) cfg.t_range = parse_range(o.raw().at("t_range"), origin + ".t_range");
  if (o.has("w_range")) cfg.w_range = parse_range(o.raw().at("w_range"), origin + ".w_range");

  cfg.integration_step = o.get_or<double>("integration_step", cfg.integration_step);
  cfg.fd_step = o.get_or<double>("fd_step", cfg.fd_step);
  cfg.richardson = o.get_or<bool>("richardson", cfg.richardson);
  if (!(cfg.integration_step > 0.0)) throw ConfigError(origin + ".integration_step: must be > 0");
  if (!(cfg.fd_step > 0.0)) throw ConfigError(origin + ".fd_step: must be > 0");

  if (o.has("tolerances")) {
    StrictObject t(o.raw().at("tolerances"), origin + ".tolerances");
    cfg.class_tol = t.get_or<double>("class_tol", cfg.class_tol);
    cfg.reg_tol = t.get_or<double>("reg_tol", cfg.reg_tol);
    cfg.metric_tol = t.get_or<double>("metric_tol", cfg.metric_tol);
    cfg.frame_tol = t.get_or<double>("frame_tol", cfg.frame_tol);
    t.finish();
    if (cfg.class_tol <= 0 || cfg.reg_tol <= 0 || cfg.metric_tol <= 0 || cfg.frame_tol <= 0)
      throw ConfigError(origin + ".tolerances: all tolerances must be > 0");
  }

  cfg.seed = o.get_or<std::uint64_t>("seed", cfg.seed);
  if (o.has("route")) {
    const std::string r = o.get<std::string>("route");
    if (r == "closed")
      cfg.route = LkRoute::ClosedForm;
    else if (r == "numeric")
      cfg.route = LkRoute::Numeric;
    else
      throw ConfigError(origin + ".route: expected 'closed' or 'numeric'");
  }

  cfg.classify_families = {TubeFamily::timelike(),       TubeFamily::spacelike(2, 1),
                           TubeFamily::spacelike(2, -1), TubeFamily::spacelike(3, 1),
                           TubeFamily::spacelike(3, -1), TubeFamily::spacelike(4, 1),
                           TubeFamily::spacelike(4, -1)};
  if (o.has("classify")) {
    StrictObject c(o.raw().at("classify"), origin + ".classify");
    if (c.has("families")) {
      cfg.classify_families.clear();
      const json& fams = c.raw().at("families");
      if (!fams.is_array()) throw ConfigError(origin + ".classify.families: expected an array");
      for (std::size_t i = 0; i < fams.size(); ++i)
        cfg.classify_families.push_back(
            parse_family(fams[i], origin + ".classify.families[" + std::to_string(i) + "]"));
    }
    if (c.has("witness_k1")) {
      const json& ws = c.raw().at("witness_k1");
      if (!ws.is_array() || ws.empty())
        throw ConfigError(origin + ".classify.witness_k1: expected a non-empty array");
      for (std::size_t i = 0; i < ws.size(); ++i) {
        std::string label;
        cfg.witness_k1.push_back(parse_curvature(
            ws[i], origin + ".classify.witness_k1[" + std::to_string(i) + "]", &label));
        cfg.witness_labels.push_back("k1=" + label);
      }
    }
    if (c.has("fit_grid")) {
      StrictObject g(c.raw().at("fit_grid"), origin + ".classify.fit_grid");
      cfg.fit_ns = g.get_or<int>("ns", cfg.fit_ns);
      cfg.fit_nt = g.get_or<int>("nt", cfg.fit_nt);
      cfg.fit_nw = g.get_or<int>("nw", cfg.fit_nw);
      g.finish();
    }
    cfg.fit_directions = c.get_or<int>("fit_directions", cfg.fit_directions);
    cfg.fit_radii = c.get_or<std::vector<double>>("fit_radii", cfg.fit_radii);
    cfg.fit_max_iterations = c.get_or<int>("fit_max_iterations", cfg.fit_max_iterations);
    c.finish();
  }
  if (cfg.witness_k1.empty()) {
    cfg.witness_k1 = {ScalarFunction::zero(), ScalarFunction::constant(0.2),
                      ScalarFunction::sinusoid(0.3, 0.1, 1.0)};
    cfg.witness_labels = {"k1=zero", "k1=0.2", "k1=0.3+0.1sin(s)"};
  }

  if (o.has("mesh")) {
    StrictObject m(o.raw().at("mesh"), origin + ".mesh");
    cfg.mesh_slices = m.get_or<std::vector<double>>("slices", cfg.mesh_slices);
    cfg.mesh_nt = m.get_or<int>("nt", cfg.mesh_nt);
    cfg.mesh_nw = m.get_or<int>("nw", cfg.mesh_nw);
    cfg.mesh_channels = m.get_or<bool>("channels", cfg.mesh_channels);
    m.finish();
    if (cfg.mesh_slices.empty()) throw ConfigError(origin + ".mesh.slices: must be non-empty");
    if (cfg.mesh_nt < 2 || cfg.mesh_nw < 2)
      throw ConfigError(origin + ".mesh: grid sizes must be >= 2");
  }

  o.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

TubeSpec RunConfig::make_spec() const {
  // pad the curve so FD stencils near the s-range ends stay inside
  const double pad = std::max(2.0 * integration_step, 10.0 * fd_step);
  TubeSpec spec = make_tube(family, curvatures, radius, s0, s1, integration_step, pad);
  spec.reg_tol = reg_tol;
  spec.metric_tol = metric_tol;
  return spec;
}

GridRanges RunConfig::grid_ranges() const {
  GridRanges r = default_ranges(family, s0, s1);
  if (t_range) {
    r.t0 = (*t_range)[0];
    r.t1 = (*t_range)[1];
  }
  if (w_range) {
    r.w0 = (*w_range)[0];
    r.w1 = (*w_range)[1];
  }
  return r;
}

SuiteConfig RunConfig::make_suite_config() const {
  SuiteConfig sc;
  sc.families = classify_families;
  for (std::size_t i = 0; i < witness_k1.size(); ++i)
    sc.witnesses.push_back(make_witness(witness_labels[i], witness_k1[i], s0, s1));
  sc.k2 = curvatures.k2;
  sc.k3 = curvatures.k3;
  sc.radius = radius;
  sc.s0 = s0;
  sc.s1 = s1;
  sc.rk4_step = integration_step;
  sc.ns = ns;
  sc.nt = nt;
  sc.nw = nw;
  sc.fit_ns = fit_ns;
  sc.fit_nt = fit_nt;
  sc.fit_nw = fit_nw;
  sc.t_range = t_range;
  sc.w_range = w_range;
  sc.route = route;
  sc.fd = {fd_step, richardson};
  sc.class_tol = class_tol;
  sc.reg_tol = reg_tol;
  sc.metric_tol = metric_tol;
  sc.fit.seed = seed;
  sc.fit.directions = fit_directions;
  sc.fit.radii = fit_radii;
  sc.fit.max_iterations = fit_max_iterations;
  return sc;
}

}  // namespace lktube
