#ifndef WEYLSCOPE_BRANCH_HPP
#define WEYLSCOPE_BRANCH_HPP

#include "weylscope/types.hpp"

namespace weylscope::core {

/// Square root branch with Im(result) > 0 off [0, inf).  On the cut [0, inf)
/// the boundary value from the upper half-plane is returned, i.e. the
/// non-negative real root.  Maps C \ [0, inf) bijectively onto the open
/// upper half-plane.
inline Complex sqrt_upper(Complex lambda) {
  require_finite(lambda, "lambda");
  if (lambda.imag() == 0.0) {
    const double x = lambda.real();
    if (x >= 0.0) return Complex(std::sqrt(x), 0.0);
    return Complex(0.0, std::sqrt(-x));
  }
  // std::sqrt is the principal branch (Re >= 0); flip the sign in the lower
  // half-plane so the image lands in C^+.
  const Complex r = std::sqrt(lambda);
  return lambda.imag() > 0.0 ? r : -r;
}

} // namespace weylscope::core

#endif
