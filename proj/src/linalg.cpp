#include "weylscope/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace weylscope::core {

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= 512) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
  }
  // Power iteration on A^*A.
  const Matrix aha = a.adjoint() * a;
  Vector v = Vector::Random(a.cols());
  v.normalize();
  double s2 = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Vector w = aha * v;
    const double s2_new = w.norm();
    if (s2_new == 0.0) return 0.0;
    w /= s2_new;
    if (std::abs(s2_new - s2) <= 1e-10 * s2_new) {
      s2 = s2_new;
      break;
    }
    s2 = s2_new;
    v = w;
  }
  return std::sqrt(s2);
}

bool is_hermitian(const Matrix& m, double tol_rel) {
  if (m.rows() != m.cols()) return false;
  const double scale = spectral_norm(m);
  return spectral_norm(m - m.adjoint()) <= tol_rel * std::max(scale, 1e-300);
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("hermitian eigensolver failed");
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("psd_sqrt: matrix must be square");
  const double scale = spectral_norm(m);
  if (!is_hermitian(m)) throw Error("psd_sqrt: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw Error("psd_sqrt: eigensolver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  const double floor = -1e-12 * std::max(scale, 1e-300);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < floor)
      throw Error("psd_sqrt: not PSD -- eta is not below min sigma(A0) for this model");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  const Eigen::VectorXd root = ev.cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace weylscope::core
