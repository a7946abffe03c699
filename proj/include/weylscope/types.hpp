#ifndef WEYLSCOPE_TYPES_HPP
#define WEYLSCOPE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>

#include <Eigen/Dense>

namespace weylscope {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Error for contract violations (bad inputs, hypothesis failures,
/// singular evaluations).  What() carries the offending quantity.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* name) {
  if (!is_finite(z)) throw Error(std::string(name) + " must be finite");
}

/// Distance from z to the half-line [t0, inf) on the real axis.
inline double dist_to_halfline(Complex z, double t0) {
  if (z.real() >= t0) return std::abs(z.imag());
  return std::abs(z - Complex(t0, 0.0));
}

} // namespace weylscope

#endif
