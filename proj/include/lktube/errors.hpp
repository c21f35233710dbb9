#pragma once

#include <stdexcept>
#include <string>

namespace lktube {

// Thrown when the tube parametrization fails the regularity margin
// |1 + (-1)^{(4-j)!} r k1 mu2| > reg_tol (the tube is not immersed there).
struct SingularPoint : std::runtime_error {
  explicit SingularPoint(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when |g_combination| <= metric_tol and the metric cannot be inverted.
struct DegenerateMetric : std::runtime_error {
  explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a frame vector loses its causal character during re-orthonormalization.
struct DegenerateFrame : std::runtime_error {
  explicit DegenerateFrame(const std::string& what) : std::runtime_error(what) {}
};

struct OptimizerDidNotConverge : std::runtime_error {
  explicit OptimizerDidNotConverge(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedFamily : std::runtime_error {
  explicit UnsupportedFamily(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lktube
