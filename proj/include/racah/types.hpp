#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace racah {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kImag{0.0, 1.0};

/// Absolute/relative tolerance pair used by all residual checks.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-8;

  Tolerance() = default;
  Tolerance(double a, double r) : abs(a), rel(r) {
    if (abs <= 0.0 || rel <= 0.0)
      throw std::invalid_argument("Tolerance: abs and rel must be positive");
  }

  /// x ~ y up to max(abs, rel*scale).
  bool close(double x, double y, double scale = 1.0) const {
    return std::abs(x - y) <= std::max(abs, rel * std::abs(scale));
  }
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation would exceed a configured cost or memory cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string shape_str(const CMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace racah
