#ifndef WEYLSCOPE_BOUNDARY_OPERATOR_HPP
#define WEYLSCOPE_BOUNDARY_OPERATOR_HPP

#include "weylscope/types.hpp"

namespace weylscope::core {

/// Coupling matrix B together with the derived quantities every enclosure
/// theorem consumes: the semibound b = max sigma((B+B^*)/2), the norm of
/// the imaginary part, and the symmetry-class flags.
struct BoundaryOperator {
  Matrix matrix;
  double semibound_b = 0.0;  // largest eigenvalue of the Hermitian part
  double im_norm = 0.0;      // spectral norm of (B - B^*)/(2i)
  bool hermitian = false;
  bool dissipative = false;  // Im B >= 0 (numerical range in closed C^+)
  bool accumulative = false; // Im B <= 0

  Eigen::Index dim() const { return matrix.rows(); }
  double norm() const;
};

/// Derives the semibound, imaginary-part norm and flags from a square
/// complex matrix.  Throws on non-square or non-finite input.
BoundaryOperator analyze_boundary_operator(const Matrix& b);

} // namespace weylscope::core

#endif
