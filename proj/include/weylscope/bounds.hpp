#ifndef WEYLSCOPE_BOUNDS_HPP
#define WEYLSCOPE_BOUNDS_HPP

#include "weylscope/boundary_operator.hpp"
#include "weylscope/types.hpp"

namespace weylscope::core {

/// Sector slope kappa_B(eta) = ||Im(M(eta)^{1/2} B M(eta)^{1/2})|| / (1 - b ||M(eta)||).
/// m_eta must be PSD (psd_sqrt is applied to it); throws when
/// b * ||M(eta)|| >= 1 (sector hypothesis (ii) violated).
double kappa_eta(const Matrix& m_eta, const BoundaryOperator& b);

/// Bound on ||M(lambda)|| from ||M(mu)|| for non-real lambda, mu:
///   (1 + |l-m|/|Im m| + |l-m||l-conj(m)| / (|Im l||Im m|)) * ||M(mu)||.
/// Refuses real arguments.
double mbdd_bound(double norm_m_mu, Complex lambda, Complex mu);

/// The ray-to-ray transfer factor multiplying ||M(r e^{i phi})||:
///   1 + 2|sin((psi-phi)/2)|/|sin phi|
///     + 4|sin((psi-phi)/2)||sin((psi+phi)/2)| / (|sin psi||sin phi|).
/// Requires psi, phi in (-pi,0) or (0,pi).
double ray_sector_bound(double psi, double phi);

} // namespace weylscope::core

#endif
