#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixture.hpp"
#include "lktube/config.hpp"
#include "lktube/io.hpp"
#include "lktube/mesh.hpp"

using namespace lktube;
using namespace lktube::testing;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / "lktube_test";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_sci gives 17 significant digits") {
  CHECK(format_sci(1.0) == "1.0000000000000000e+00");
  CHECK(format_sci(-0.1) == "-1.0000000000000001e-01");
}

TEST_CASE("atomic_write_file leaves no temp file and fails cleanly") {
  const fs::path d = temp_dir();
  const fs::path target = d / "out.txt";
  atomic_write_file(target, "hello\n");
  CHECK(slurp(target) == "hello\n");
  CHECK_FALSE(fs::exists(d / "out.txt.tmp"));
  CHECK_THROWS(atomic_write_file(d / "no_such_dir" / "x.txt", "y"));
}

TEST_CASE("mesh: 4x4 grid, one slice gives 16 vertices and 18 triangles") {
  const TubeSpec spec = test_spec(TubeFamily::timelike());
  MeshOptions mo;
  mo.slices = {1.0};
  mo.nt = 4;
  mo.nw = 4;
  mo.ranges = default_ranges(spec.family, 0.0, kTwoPi);
  mo.channels = false;
  const fs::path d = temp_dir();
  const MeshResult res = write_tube_mesh(spec, mo, d / "m.obj", d / "m.csv");
  CHECK(res.vertices == 16);
  CHECK(res.triangles == 18);

  std::size_t v_count = 0, f_count = 0;
  std::istringstream obj(slurp(d / "m.obj"));
  std::string line;
  while (std::getline(obj, line)) {
    if (line.rfind("v ", 0) == 0) ++v_count;
    if (line.rfind("f ", 0) == 0) ++f_count;
  }
  CHECK(v_count == 16);
  CHECK(f_count == 18);
}

TEST_CASE("mesh vertices satisfy the foliation property") {
  const TubeSpec spec = test_spec(TubeFamily::timelike());
  MeshOptions mo;
  mo.slices = {0.5, 2.0};
  mo.nt = 6;
  mo.nw = 6;
  mo.ranges = default_ranges(spec.family, 0.0, kTwoPi);
  mo.channels = false;
  const fs::path d = temp_dir();
  write_tube_mesh(spec, mo, d / "f.obj", d / "f.csv");

  std::istringstream csv(slurp(d / "f.csv"));
  std::string line;
  std::getline(csv, line);  // header
  const double r2 = spec.radius * spec.radius;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::array<double, 8> vals{};  // vertex,s,t,w,x1..x4
    for (int i = 0; i < 8; ++i) {
      std::getline(row, cell, ',');
      vals[static_cast<std::size_t>(i)] = std::stod(cell);
    }
    const Vec4 p{vals[4], vals[5], vals[6], vals[7]};
    const Vec4 beta = spec.curve->state_at(vals[1]).point;
    const Vec4 dv = p - beta;
    CHECK(std::fabs(inner(dv, dv) - r2) < 1e-10);
    ++rows;
  }
  CHECK(rows == 72);  // 2 slices x 36
}

TEST_CASE("config parsing") {
  const std::string good = R"({
    "family": "j3-1",
    "radius": 0.5,
    "curvatures": {
      "k1": {"preset": "sinusoid", "offset": 0.3, "amplitude": 0.1, "omega": 1.0},
      "k2": {"preset": "constant", "value": 0.2},
      "k3": {"preset": "zero"}
    },
    "s_range": [0.0, 6.2832],
    "grid": {"ns": 4, "nt": 5, "nw": 6},
    "tolerances": {"class_tol": 1e-6},
    "seed": 42,
    "route": "numeric"
  })";
  const RunConfig cfg = parse_config(good);
  CHECK(cfg.family == TubeFamily::spacelike(3, -1));
  CHECK(cfg.ns == 4);
  CHECK(cfg.route == LkRoute::Numeric);
  CHECK(cfg.seed == 42);
  CHECK(cfg.curvatures.k1(0.0) == doctest::Approx(0.3));

  SUBCASE("unknown keys are fail-closed errors") {
    const std::string bad = R"({"family": "timelike", "radius": 1.0, "curvaturez": {},
      "curvatures": {"k1": {"preset":"zero"}, "k2": {"preset":"zero"}, "k3": {"preset":"zero"}},
      "s_range": [0, 1]})";
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
  SUBCASE("unknown nested keys too") {
    std::string bad = good;
    bad.replace(bad.find("\"omega\""), 7, "\"Omega\"");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
  SUBCASE("bad family") {
    std::string bad = good;
    bad.replace(bad.find("j3-1"), 4, "j9+1");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
  SUBCASE("missing required field") {
    CHECK_THROWS_AS(parse_config(R"({"family": "timelike"})"), ConfigError);
  }
  SUBCASE("grid sizes below 2 are rejected") {
    std::string bad = good;
    bad.replace(bad.find("\"ns\": 4"), 7, "\"ns\": 1");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
  SUBCASE("radius must be positive") {
    std::string bad = good;
    bad.replace(bad.find("\"radius\": 0.5"), 13, "\"radius\": 0.0");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
  SUBCASE("syntax errors carry location info") {
    try {
      parse_config("{\"family\": }");
      CHECK(false);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
  }
  SUBCASE("table curvature preset") {
    const std::string tbl = R"({
      "family": "timelike",
      "radius": 1.0,
      "curvatures": {
        "k1": {"preset": "table", "s": [0.0, 1.0, 2.0, 3.0], "values": [0.1, 0.3, 0.2, 0.1]},
        "k2": {"preset": "zero"},
        "k3": {"preset": "zero"}
      },
      "s_range": [0.5, 2.5]
    })";
    const RunConfig c = parse_config(tbl);
    CHECK(c.curvatures.k1(1.0) == doctest::Approx(0.3).epsilon(1e-12));
    // the spline-backed curve integrates end to end
    const TubeSpec spec = c.make_spec();
    CHECK(std::isfinite(tube_point(spec, 1.5, 0.3, 0.2)[0]));

    std::string bad = tbl;
    bad.replace(bad.find("[0.0, 1.0, 2.0, 3.0]"), 20, "[0.0, 2.0, 1.0, 3.0]");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
}
