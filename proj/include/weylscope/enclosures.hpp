#ifndef WEYLSCOPE_ENCLOSURES_HPP
#define WEYLSCOPE_ENCLOSURES_HPP

#include "weylscope/boundary_operator.hpp"
#include "weylscope/models.hpp"
#include "weylscope/sector.hpp"
#include "weylscope/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weylscope::enclosures {

using core::BoundaryOperator;
using core::SectorSpec;
using models::WeylModel;

/// Power-law bound ||M(lambda)|| <= C / (mu - lambda)^beta for lambda < mu.
struct DecayEstimate {
  double C = 0.0;
  double beta = 0.5;        // in (0, 1]
  double mu = 0.0;          // reference shift <= min sigma(A0)
  bool fitted = false;      // false: closed form
  int sample_count = 0;     // fitted only
  double max_residual = 0.0;// fitted only: worst |log(bound/sample)|
  bool degenerate = false;  // fitted only: slope clipped

  double bound_at(double lambda) const {
    if (!(lambda < mu)) throw Error("decay bound is only valid for lambda < mu");
    return C / std::pow(mu - lambda, beta);
  }
};

/// A tagged region of the complex plane with a closed membership test.
/// margin(z) >= 0 means z is a member; the magnitude measures how deep
/// inside (or, negative, outside) the defining inequality z sits.
/// Regions tagged LeftResolventFree are exclusion zones (spectrum must stay
/// out); every other tag encloses the spectrum.
struct EnclosureRegion {
  enum class Tag {
    Sector,            // Re z >= eta, |Im z| <= kappa (Re z - eta)
    ParabolaA,         // b > 0 branch of the parabola family
    ParabolaB,         // b = 0 branch
    ParabolaC,         // b < 0 branch
    LeftResolventFree, // (-inf, threshold) on the real axis
    DistDisk,          // dist(z, sigma(A0)) <= radius
    PointDisk,         // |z - mu| <= radius
    LogRegionV,        // delta-hypersurface region V
    LogRegionW         // delta-hypersurface region W
  };

  Tag tag;

  // Parameters; which ones are meaningful depends on the tag.
  double eta = 0.0, kappa = 0.0;              // Sector
  double mu = 0.0, C = 0.0, beta = 0.5;       // parabola family / disks
  double b = 0.0, im_b_norm = 0.0, xi = 0.0;  // parabola family
  double apex = 0.0;                          // ParabolaA: mu - (Cb)^{1/beta}
  double k_slope = 0.0;                       // K_xi or K'_beta
  double threshold = 0.0;                     // LeftResolventFree
  double radius = 0.0;                        // disks
  double spectrum_base = 0.0;                 // DistDisk: sigma(A0) = [base, inf)
  double c_alpha = 0.0;                       // log regions: C_i * ||alpha||
  int dim_class = 3;                          // log regions: 2 or >= 3 (stored 3)

  bool exclusion() const { return tag == Tag::LeftResolventFree; }
  bool contains(Complex z) const { return margin(z) >= 0.0; }
  double margin(Complex z) const;
  std::string tag_name() const;
};

/// Sector enclosure of Theorem-sectorial type: apex eta, slope kappa_B(eta).
EnclosureRegion sector_enclosure(const Matrix& m_eta, double eta,
                                 const BoundaryOperator& b);

/// Parabola-family enclosure; the case is selected by the sign of the
/// semibound b.  For b > 0 a shift xi < mu - (C b)^{1/beta} is required.
EnclosureRegion parabola_enclosure(const DecayEstimate& d,
                                   const BoundaryOperator& b,
                                   std::optional<double> xi = std::nullopt);

/// Spectrum-free left half-line: (-inf, min sigma(A0)) for b <= 0, else
/// (-inf, mu - (C b)^{1/beta}), refined by bisection on b ||M(lambda)|| = 1
/// when the model is supplied.
EnclosureRegion left_resolvent_free(const WeylModel* model,
                                    const BoundaryOperator& b,
                                    const DecayEstimate& d);

enum class DistMode { ToSpectrum, ToPoint };

/// Disk enclosure of radius (C ||B||)^{1/beta} about sigma(A0) or about mu.
EnclosureRegion dist_enclosure(const DecayEstimate& d, double b_norm,
                               DistMode mode, double spectrum_base = 0.0);

/// The two log-shaped regions for delta interactions on hypersurfaces;
/// c1_alpha = C1 ||alpha||_inf and c2_alpha = C2 ||alpha||_inf must be
/// supplied (the constants are non-constructive).  dim_class is 2 or >= 3.
std::pair<EnclosureRegion, EnclosureRegion> delta_log_regions(double c1_alpha,
                                                              double c2_alpha,
                                                              int dim_class);

/// Least-squares power-law fit of norm samples on the real axis left of mu;
/// C is inflated so the bound majorizes every sample.
DecayEstimate fit_decay(const std::vector<std::pair<double, double>>& samples,
                        double mu);

/// Closed-form decay constants where the model admits them: the Schur bound
/// for lattices (beta = 1/2, C = coth((d/2) sqrt(-mu)) / 2), and the exact
/// profile constants for half-space, hyperplane and star models.  Graphs and
/// the Kac profile have no closed form and return nullopt.
std::optional<DecayEstimate> closed_form_decay(const WeylModel& model,
                                               double mu_for_lattice = -1.0);

/// Decay estimate obtained by sampling ||M(lambda)|| on the real axis left
/// of mu (log-spaced offsets in [lo_offset, hi_offset]) and fitting.
DecayEstimate fitted_decay_for_model(const WeylModel& model, double mu,
                                     double lo_offset = 1e-2,
                                     double hi_offset = 1e6, int n = 120);

struct SweepDiagnostics {
  bool attained = false;
  double worst_psi = 0.0;
  double worst_radius = 0.0;
};

/// Empirical R such that ||B|| * ||M(apex + r e^{i psi})|| < 1 for all
/// sampled r >= R inside the sector; +inf when never attained on the grid.
double sector_sweep_bound(const WeylModel& model, double b_norm,
                          const SectorSpec& spec, double r_min, double r_max,
                          int n_r, int n_psi,
                          SweepDiagnostics* diag = nullptr);

} // namespace weylscope::enclosures

#endif
