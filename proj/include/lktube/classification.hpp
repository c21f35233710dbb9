#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lktube/operators.hpp"

namespace lktube {

// The four Gauss map classes: L_k N = mN + nC, mN, m(N + C), or 0, with
// m, n non-zero smooth functions and C a non-zero constant vector.
enum class GaussMapClass { Harmonic, FirstKindPointwise, SecondKindPointwise, Generalized1Type };
enum class Verdict { Satisfied, Violated };
enum class LkRoute { ClosedForm, Numeric };

const char* to_string(GaussMapClass c);
const char* to_string(Verdict v);
const char* to_string(LkRoute r);

struct GridPoint {
  double s = 0, t = 0, w = 0;
};

struct GridRanges {
  double s0 = 0, s1 = 0;
  double t0 = 0, t1 = 0;
  bool t_periodic = false;
  double w0 = 0, w1 = 0;
  bool w_periodic = false;
};

// Spec defaults: trigonometric axes [0, 2pi) half-open, hyperbolic axes [-1.5, 1.5].
GridRanges default_ranges(const TubeFamily& family, double s0, double s1);

// Cartesian product of the axis samples, before singular exclusion.
std::vector<GridPoint> full_grid(const GridRanges& ranges, int ns, int nt, int nw);

// Regular grid over the ranges minus singular exclusions (regularity margin
// within reg_tol or |g-combination| within metric_tol). Excluded points are counted.
struct EvalGrid {
  std::vector<GridPoint> points;
  std::size_t excluded = 0;
};

EvalGrid build_grid(const TubeSpec& spec, const GridRanges& ranges, int ns, int nt, int nw);

// true iff the point passes both the regularity margin and the metric check
bool grid_point_regular(const TubeSpec& spec, const GridPoint& p);

struct ClassificationSample {
  GridPoint p;
  std::array<double, 4> n{};   // Gauss map, Frenet components
  std::array<double, 4> lk{};  // L_k N, Frenet components
  FrenetFrame frame;           // frame at p.s, for ambient <-> Frenet conversion
};

struct FdOptions {
  double h = 1e-5;
  bool richardson = true;
};

struct SampledField {
  std::vector<ClassificationSample> samples;
  std::size_t excluded = 0;  // grid exclusions plus per-point evaluation failures
};

SampledField sample_field(const TubeSpec& spec, int k, const EvalGrid& grid, LkRoute route,
                          const FdOptions& fd = {}, int threads = 1);

struct GaussMapClassReport {
  int k = 1;
  GaussMapClass class_tested = GaussMapClass::Harmonic;
  double residual = 0.0;  // sup over grid, Euclidean gauge on Frenet components
  Verdict verdict = Verdict::Violated;
  std::vector<double> fitted_m;  // per-point m where applicable
  std::optional<Vec4> fitted_C;
  bool m_constant = false;
  double m_value = 0.0;           // constant m when m_constant
  bool zero_function_flag = false;  // fit met the tolerance only with m, n, or C at zero
  std::size_t used_points = 0;
  std::size_t excluded_points = 0;
};

struct FitOptions {
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  int directions = 32;
  std::vector<double> radii{0.0, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0};
  int max_iterations = 10000;
  double simplex_tol = 1e-11;
};

// residual = sup ||L_k N||
GaussMapClassReport check_harmonic(const std::vector<ClassificationSample>& field, int k, double tol);

// m(p) = eps <L_k N, N> per point; also reports whether m is constant (global first kind).
GaussMapClassReport check_first_kind(const std::vector<ClassificationSample>& field, int k, double tol);

// min over constant ambient C of sum_p ||L_k N - m_p (N + C)||^2, m_p per-point optimal.
GaussMapClassReport fit_second_kind(const std::vector<ClassificationSample>& field, int k,
                                    const FitOptions& opt, double tol);

// min over unit C of sum_p ||L_k N - m_p N - n_p C||^2, (m_p, n_p) per-point least squares.
GaussMapClassReport fit_generalized(const std::vector<ClassificationSample>& field, int k,
                                    const FitOptions& opt, double tol);

// spec-facing wrappers that sample the field themselves
GaussMapClassReport check_harmonic(const TubeSpec& spec, int k, const EvalGrid& grid, double tol,
                                   LkRoute route = LkRoute::ClosedForm);
GaussMapClassReport check_first_kind(const TubeSpec& spec, int k, const EvalGrid& grid, double tol,
                                     LkRoute route = LkRoute::ClosedForm);
GaussMapClassReport fit_second_kind(const TubeSpec& spec, int k, const EvalGrid& grid,
                                    const FitOptions& opt = {}, double tol = 1e-6,
                                    LkRoute route = LkRoute::ClosedForm);
GaussMapClassReport fit_generalized(const TubeSpec& spec, int k, const EvalGrid& grid,
                                    const FitOptions& opt = {}, double tol = 1e-6,
                                    LkRoute route = LkRoute::ClosedForm);

// Frenet components C_i(s) = eps_i <C, F_i(s)> of a constant ambient vector along
// the curve, the residual of their governing ODE system (5-point differences),
// and the drift of the reconstructed ambient vector.
struct ConstantVectorTrack {
  std::vector<double> s;
  std::array<std::vector<double>, 4> components;
  Vec4 ambient;
  double ode_residual = 0.0;
  double reconstruction_drift = 0.0;
};

ConstantVectorTrack track_constant_vector(const FramedCurve& curve, const Vec4& c_ambient);

// ---------- theorem suite ----------

struct WitnessSpec {
  std::string label;
  ScalarFunction k1;
  bool k1_zero = false;  // detected by sampling when built through make_witness
};

WitnessSpec make_witness(std::string label, ScalarFunction k1, double s0, double s1);

struct SuiteConfig {
  std::vector<TubeFamily> families;  // default: all seven
  std::vector<WitnessSpec> witnesses;
  ScalarFunction k2 = ScalarFunction::constant(0.2);
  ScalarFunction k3 = ScalarFunction::constant(0.1);
  double radius = 0.5;
  double s0 = 0.0, s1 = 6.283185307179586;
  double rk4_step = 1e-3;
  int ns = 12, nt = 12, nw = 12;             // grid for harmonic / first-kind checks
  int fit_ns = 6, fit_nt = 6, fit_nw = 6;    // grid for the residual fits
  std::optional<std::array<double, 2>> t_range, w_range;  // override for all families
  LkRoute route = LkRoute::ClosedForm;
  FdOptions fd;
  double class_tol = 1e-6;
  double reg_tol = 1e-3, metric_tol = 1e-9;
  FitOptions fit;
};

SuiteConfig default_suite_config();

// Theorem verdict for a class/operator/witness combination: only first-kind L1
// and L2-harmonic are satisfiable, and only with k1 identically zero.
Verdict expected_verdict(GaussMapClass cls, int k, bool k1_zero);

// Constant m of the first-kind L1 theorems at k1 = 0.
double expected_first_kind_m(const TubeFamily& family, double radius);

struct WitnessResult {
  std::string witness;
  bool k1_zero = false;
  double residual = 0.0;
  Verdict verdict = Verdict::Violated;
  Verdict expected = Verdict::Violated;
  bool pass = false;
  std::size_t used_points = 0;
  std::size_t excluded_points = 0;
  bool m_constant = false;
  double m_value = 0.0;
  double expected_m = 0.0;
  bool has_expected_m = false;
  bool zero_function_flag = false;
  std::string error;  // set when the check aborted; counted as a failure
};

struct SuiteCheck {
  std::string id;  // "<family>/L<k>/<class>"
  std::string family;
  int k = 1;
  GaussMapClass class_tested = GaussMapClass::Harmonic;
  std::vector<WitnessResult> witnesses;
  bool pass = false;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;
  bool all_pass = false;
};

SuiteReport theorem_suite(const SuiteConfig& cfg, int threads = 1);

}  // namespace lktube
