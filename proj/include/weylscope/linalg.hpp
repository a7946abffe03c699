#ifndef WEYLSCOPE_LINALG_HPP
#define WEYLSCOPE_LINALG_HPP

#include "weylscope/types.hpp"

namespace weylscope::core {

/// Spectral norm (largest singular value).  Full SVD up to dimension 512,
/// power iteration on A^*A above that (tol 1e-10, at most 1e4 iterations).
double spectral_norm(const Matrix& a);

/// Hermitian part (B + B^*)/2.
inline Matrix hermitian_part(const Matrix& b) { return 0.5 * (b + b.adjoint()); }

/// Skew part divided by i, (B - B^*)/(2i); Hermitian by construction.
inline Matrix imag_part(const Matrix& b) {
  return (b - b.adjoint()) / Complex(0.0, 2.0);
}

/// True when ||m - m^*|| <= tol_rel * ||m||.
bool is_hermitian(const Matrix& m, double tol_rel = 1e-10);

/// Hermitian PSD square root via eigendecomposition.  Eigenvalues in
/// [-1e-12*||m||, 0) are clamped to zero; anything below that threshold
/// throws (the matrix is genuinely not PSD, e.g. eta is not below
/// min sigma(A0) for the model at hand).
Matrix psd_sqrt(const Matrix& m);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

} // namespace weylscope::core

#endif
