#ifndef WEYLSCOPE_QUADRATURE_HPP
#define WEYLSCOPE_QUADRATURE_HPP

#include "weylscope/types.hpp"

#include <functional>

namespace weylscope::core {

/// Adaptive 15-point Gauss-Kronrod quadrature of a complex integrand on
/// [a, b].  Bisects the interval with the largest |K15 - G7| error estimate
/// until the summed estimate is below rel_tol * |integral| (plus a tiny
/// absolute floor), or throws after max_intervals subdivisions.
Complex adaptive_gk15(const std::function<Complex(double)>& f, double a,
                      double b, double rel_tol, int max_intervals = 4000);

/// Exponential integral E1(x) for x > 0 (series for x <= 1, continued
/// fraction otherwise).
double expint_e1(double x);

} // namespace weylscope::core

#endif
