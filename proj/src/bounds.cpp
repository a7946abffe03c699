#include "weylscope/bounds.hpp"

#include "weylscope/linalg.hpp"

#include <numbers>

namespace weylscope::core {

double kappa_eta(const Matrix& m_eta, const BoundaryOperator& b) {
  if (m_eta.rows() != b.dim()) throw Error("kappa_eta: dimension mismatch");
  const double norm_m = spectral_norm(m_eta);
  const double denom = 1.0 - b.semibound_b * norm_m;
  if (denom <= 0.0)
    throw Error("kappa_eta: sector hypothesis (ii) violated, b*||M(eta)|| >= 1");
  const Matrix root = psd_sqrt(m_eta);
  const Matrix inner = root * b.matrix * root;
  return spectral_norm(imag_part(inner)) / denom;
}

double mbdd_bound(double norm_m_mu, Complex lambda, Complex mu) {
  require_finite(lambda, "lambda");
  require_finite(mu, "mu");
  if (lambda.imag() == 0.0 || mu.imag() == 0.0)
    throw Error("mbdd_bound: lambda and mu must be non-real");
  const double diff = std::abs(lambda - mu);
  const double diff_conj = std::abs(lambda - std::conj(mu));
  const double im_l = std::abs(lambda.imag());
  const double im_m = std::abs(mu.imag());
  return (1.0 + diff / im_m + diff * diff_conj / (im_l * im_m)) * norm_m_mu;
}

double ray_sector_bound(double psi, double phi) {
  constexpr double pi = std::numbers::pi;
  auto admissible = [](double a) {
    return (a > -pi && a < 0.0) || (a > 0.0 && a < pi);
  };
  if (!admissible(psi) || !admissible(phi))
    throw Error("ray_sector_bound: angles must lie in (-pi,0) or (0,pi)");
  const double s_half_diff = std::abs(std::sin(0.5 * (psi - phi)));
  const double s_half_sum = std::abs(std::sin(0.5 * (psi + phi)));
  const double s_phi = std::abs(std::sin(phi));
  const double s_psi = std::abs(std::sin(psi));
  return 1.0 + 2.0 * s_half_diff / s_phi +
         4.0 * s_half_diff * s_half_sum / (s_psi * s_phi);
}

} // namespace weylscope::core
