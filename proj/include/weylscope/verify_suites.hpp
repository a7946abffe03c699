#ifndef WEYLSCOPE_VERIFY_SUITES_HPP
#define WEYLSCOPE_VERIFY_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace weylscope::verify {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst-case margin/deviation seen by the suite
  std::string detail;
};

/// Conjugate symmetry M(conj l) = M(l)^* on lattice and graph models.
SuiteResult suite_symmetry(std::uint64_t seed);
/// Im M(lambda) is PSD in the upper half-plane.
SuiteResult suite_herglotz(std::uint64_t seed);
/// Schur bound and the uniform exterior-sector bound for d = 1 lattices.
SuiteResult suite_schur();
/// sqrt(|l|) ||M(l)|| stabilizes on exterior sectors for random graphs.
SuiteResult suite_decay(std::uint64_t seed);
/// Closed-form difference identity for the single-point lattice.
SuiteResult suite_identity(std::uint64_t seed);
/// B* spectra are conjugate, Hermitian B real, dissipative B lower half-plane.
SuiteResult suite_duality(std::uint64_t seed);
/// Random graph spectra respect the parabola enclosures and resolvent-free
/// half-lines derived from fitted decay estimates; star-graph sharpness.
SuiteResult suite_containment(std::uint64_t seed);

/// Star graph |E| = 3, B = 3+3i: one eigenvalue at -2i on the boundary of
/// the dist-disk of radius 2.
SuiteResult star_sharpness();
/// Kac-measure ratios approach the power-log asymptote decade by decade.
SuiteResult kac_sharpness();
/// Closed-form decay constants for the half-space and hyperplane profiles
/// and the quarter-norm-squared disk.
SuiteResult closed_form_bounds();

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

} // namespace weylscope::verify

#endif
