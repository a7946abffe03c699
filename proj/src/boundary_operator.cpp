#include "weylscope/boundary_operator.hpp"

#include "weylscope/linalg.hpp"

namespace weylscope::core {

double BoundaryOperator::norm() const { return spectral_norm(matrix); }

BoundaryOperator analyze_boundary_operator(const Matrix& b) {
  if (b.rows() != b.cols()) throw Error("boundary operator must be square");
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      require_finite(b(i, j), "boundary operator entry");

  BoundaryOperator out;
  out.matrix = b;
  const double scale = std::max(spectral_norm(b), 1e-300);
  const double tol = 1e-10 * scale;

  const Eigen::VectorXd re_ev = hermitian_eigenvalues(hermitian_part(b));
  const Eigen::VectorXd im_ev = hermitian_eigenvalues(imag_part(b));
  out.semibound_b = re_ev(re_ev.size() - 1);
  out.im_norm = std::max(std::abs(im_ev(0)), std::abs(im_ev(im_ev.size() - 1)));
  out.hermitian = out.im_norm <= tol;
  out.dissipative = im_ev(0) >= -tol;
  out.accumulative = im_ev(im_ev.size() - 1) <= tol;
  return out;
}

} // namespace weylscope::core
