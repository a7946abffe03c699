#include "weylscope/enclosures.hpp"

#include "weylscope/bounds.hpp"
#include "weylscope/branch.hpp"
#include "weylscope/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace weylscope::enclosures {

namespace {

// Sign tolerance for classifying the semibound of B.
double b_tol(const BoundaryOperator& b) {
  return 1e-12 * (1.0 + core::spectral_norm(b.matrix));
}

} // namespace

double EnclosureRegion::margin(Complex z) const {
  switch (tag) {
    case Tag::Sector: {
      const double m1 = z.real() - eta;
      return std::min(m1, kappa * m1 - std::abs(z.imag()));
    }
    case Tag::ParabolaA: {
      const double m1 = z.real() - apex;
      if (z.real() <= xi) return m1;
      const double curve = k_slope * std::pow(z.real() - xi, 1.0 - beta);
      return std::min(m1, curve - std::abs(z.imag()));
    }
    case Tag::ParabolaB: {
      const double m1 = z.real() - mu;
      if (m1 < 0.0) return m1;
      // pow(0, 0) = 1 realizes the 0^0 = 1 convention at the apex for beta = 1.
      const double curve = k_slope * std::pow(m1, 1.0 - beta);
      return std::min(m1, curve - std::abs(z.imag()));
    }
    case Tag::ParabolaC: {
      const double m1 = z.real() - mu;
      if (m1 < 0.0) return m1;
      const double curve =
          2.0 * C * im_b_norm * m1 / (std::pow(m1, beta) - C * b);
      return std::min(m1, curve - std::abs(z.imag()));
    }
    case Tag::LeftResolventFree:
      return std::min(threshold - z.real(), -std::abs(z.imag()));
    case Tag::DistDisk:
      return radius - dist_to_halfline(z, spectrum_base);
    case Tag::PointDisk:
      return radius - std::abs(z - Complex(mu, 0.0));
    case Tag::LogRegionV: {
      const double az = std::abs(z);
      if (dim_class == 2) {
        if (az == 0.0) return -1.0;
        return c_alpha * std::pow(2.0 + az, -0.25) * std::log(2.0 + 1.0 / az) -
               1.0;
      }
      return c_alpha * std::pow(2.0 + az, -0.25) * std::log(2.0 + az) - 1.0;
    }
    case Tag::LogRegionW: {
      const double az = std::abs(z);
      const double im_root = core::sqrt_upper(z).imag();
      const double base_factor = 1.0 / std::sqrt(2.0 + im_root * im_root);
      if (dim_class == 2) {
        if (az == 0.0) return -1.0;
        return c_alpha * base_factor * std::log(2.0 + 1.0 / az) - 1.0;
      }
      return c_alpha * base_factor - 1.0;
    }
  }
  throw Error("unreachable region tag");
}

std::string EnclosureRegion::tag_name() const {
  switch (tag) {
    case Tag::Sector: return "sector";
    case Tag::ParabolaA: return "parabola_a";
    case Tag::ParabolaB: return "parabola_b";
    case Tag::ParabolaC: return "parabola_c";
    case Tag::LeftResolventFree: return "left_resolvent_free";
    case Tag::DistDisk: return "dist_disk";
    case Tag::PointDisk: return "point_disk";
    case Tag::LogRegionV: return "log_region_V";
    case Tag::LogRegionW: return "log_region_W";
  }
  return "unknown";
}

EnclosureRegion sector_enclosure(const Matrix& m_eta, double eta,
                                 const BoundaryOperator& b) {
  EnclosureRegion r;
  r.tag = EnclosureRegion::Tag::Sector;
  r.eta = eta;
  r.kappa = core::kappa_eta(m_eta, b); // validates PSD and b||M|| < 1
  return r;
}

EnclosureRegion parabola_enclosure(const DecayEstimate& d,
                                   const BoundaryOperator& b,
                                   std::optional<double> xi) {
  if (!(d.C > 0.0) || !(d.beta > 0.0 && d.beta <= 1.0))
    throw Error("parabola_enclosure: invalid decay estimate");
  EnclosureRegion r;
  r.mu = d.mu;
  r.C = d.C;
  r.beta = d.beta;
  r.b = b.semibound_b;
  r.im_b_norm = b.im_norm;
  const double tol = b_tol(b);
  if (b.semibound_b > tol) {
    r.tag = EnclosureRegion::Tag::ParabolaA;
    r.apex = d.mu - std::pow(d.C * b.semibound_b, 1.0 / d.beta);
    if (!xi.has_value())
      throw Error("parabola_enclosure: case b > 0 needs a shift xi");
    r.xi = *xi;
    if (!(r.xi < r.apex))
      throw Error("parabola_enclosure: xi must be < mu - (Cb)^{1/beta}");
    r.k_slope = 2.0 * d.C * b.im_norm /
                (1.0 - d.C * b.semibound_b / std::pow(d.mu - r.xi, d.beta));
  } else if (b.semibound_b < -tol) {
    r.tag = EnclosureRegion::Tag::ParabolaC;
  } else {
    r.tag = EnclosureRegion::Tag::ParabolaB;
    r.b = 0.0;
    r.k_slope =
        d.beta < 1.0
            ? d.C * b.im_norm /
                  (std::pow(d.beta, d.beta) *
                   std::pow(1.0 - d.beta, 1.0 - d.beta))
            : d.C * b.im_norm;
  }
  return r;
}

EnclosureRegion left_resolvent_free(const WeylModel* model,
                                    const BoundaryOperator& b,
                                    const DecayEstimate& d) {
  EnclosureRegion r;
  r.tag = EnclosureRegion::Tag::LeftResolventFree;
  const double base = model ? model->spectrum_base() : d.mu;
  if (b.semibound_b <= b_tol(b)) {
    r.threshold = base;
    return r;
  }
  const double crude =
      d.mu - std::pow(d.C * b.semibound_b, 1.0 / d.beta);
  r.threshold = crude;
  if (!model) return r;

  // Refine on b ||M(lambda)|| = 1; the norm is monotone increasing towards
  // the spectrum, so the resolvent-set condition holds left of the root.
  auto g = [&](double x) { return b.semibound_b * model->weyl_norm(x) - 1.0; };
  double lo = crude;
  double hi = base - 1e-9 * (1.0 + std::abs(base));
  if (!(lo < hi)) return r;
  if (g(hi) < 0.0) {
    r.threshold = hi;
    return r;
  }
  if (g(lo) >= 0.0) return r; // decay bound already tight here
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  r.threshold = std::max(crude, lo);
  return r;
}

EnclosureRegion dist_enclosure(const DecayEstimate& d, double b_norm,
                               DistMode mode, double spectrum_base) {
  if (b_norm < 0.0) throw Error("dist_enclosure: negative ||B||");
  EnclosureRegion r;
  r.tag = mode == DistMode::ToSpectrum ? EnclosureRegion::Tag::DistDisk
                                       : EnclosureRegion::Tag::PointDisk;
  r.mu = d.mu;
  r.C = d.C;
  r.beta = d.beta;
  r.spectrum_base = spectrum_base;
  r.radius = b_norm == 0.0 ? 0.0 : std::pow(d.C * b_norm, 1.0 / d.beta);
  return r;
}

std::pair<EnclosureRegion, EnclosureRegion> delta_log_regions(double c1_alpha,
                                                              double c2_alpha,
                                                              int dim_class) {
  if (!(c1_alpha > 0.0) || !(c2_alpha > 0.0))
    throw Error("delta_log_regions: constants must be positive");
  if (dim_class != 2 && dim_class < 3)
    throw Error("delta_log_regions: dimension class is 2 or >= 3");
  EnclosureRegion v, w;
  v.tag = EnclosureRegion::Tag::LogRegionV;
  v.c_alpha = c1_alpha;
  v.dim_class = dim_class == 2 ? 2 : 3;
  w.tag = EnclosureRegion::Tag::LogRegionW;
  w.c_alpha = c2_alpha;
  w.dim_class = v.dim_class;
  return {v, w};
}

DecayEstimate fit_decay(const std::vector<std::pair<double, double>>& samples,
                        double mu) {
  if (samples.size() < 8) throw Error("fit_decay: need at least 8 samples");
  std::vector<double> xs, ys;
  xs.reserve(samples.size());
  ys.reserve(samples.size());
  for (const auto& [lambda, norm] : samples) {
    if (!(lambda < mu)) throw Error("fit_decay: samples must satisfy lambda < mu");
    if (!(norm > 0.0)) throw Error("fit_decay: norms must be positive");
    xs.push_back(std::log(mu - lambda));
    ys.push_back(std::log(norm));
  }
  const auto [x_min, x_max] = std::minmax_element(xs.begin(), xs.end());
  if (*x_max - *x_min < std::log(1e3))
    throw Error("fit_decay: samples must span at least 3 decades of mu - lambda");

  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  DecayEstimate d;
  d.mu = mu;
  d.fitted = true;
  d.sample_count = static_cast<int>(samples.size());
  constexpr double beta_floor = 1e-3;
  const double beta_raw = -slope;
  d.degenerate = beta_raw < beta_floor;
  d.beta = std::clamp(beta_raw, beta_floor, 1.0);

  // Inflate C so the bound majorizes every sample exactly.
  double c = 0.0;
  for (const auto& [lambda, norm] : samples)
    c = std::max(c, norm * std::pow(mu - lambda, d.beta));
  d.C = c;
  double worst = 0.0;
  for (const auto& [lambda, norm] : samples)
    worst = std::max(worst, d.bound_at(lambda) / norm - 1.0);
  d.max_residual = worst;
  return d;
}

std::optional<DecayEstimate> closed_form_decay(const WeylModel& model,
                                               double mu_for_lattice) {
  DecayEstimate d;
  d.beta = 0.5;
  if (const auto* lat = model.lattice()) {
    if (!(mu_for_lattice < 0.0))
      throw Error("lattice decay constants need mu < 0");
    d.mu = mu_for_lattice;
    d.C = 0.5 / std::tanh(0.5 * lat->spacing() * std::sqrt(-mu_for_lattice));
    return d;
  }
  if (const auto* prof = model.profile()) {
    d.mu = 0.0;
    switch (prof->kind) {
      case models::ScalarProfile::Kind::HalfSpaceRobin:
        d.C = 1.0;
        return d;
      case models::ScalarProfile::Kind::HyperplaneDelta:
        d.C = 0.5;
        return d;
      case models::ScalarProfile::Kind::StarGraph:
        d.C = 1.0 / prof->star_edges;
        return d;
      case models::ScalarProfile::Kind::KacMeasure:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

DecayEstimate fitted_decay_for_model(const WeylModel& model, double mu,
                                     double lo_offset, double hi_offset,
                                     int n) {
  if (!(lo_offset > 0.0 && hi_offset > lo_offset) || n < 8)
    throw Error("fitted_decay_for_model: bad sampling parameters");
  std::vector<std::pair<double, double>> samples;
  samples.reserve(static_cast<size_t>(n));
  const double llo = std::log(lo_offset), lhi = std::log(hi_offset);
  for (int i = 0; i < n; ++i) {
    const double offset = std::exp(llo + (lhi - llo) * i / double(n - 1));
    const double lambda = mu - offset;
    samples.emplace_back(lambda, model.weyl_norm(lambda));
  }
  return fit_decay(samples, mu);
}

double sector_sweep_bound(const WeylModel& model, double b_norm,
                          const SectorSpec& spec, double r_min, double r_max,
                          int n_r, int n_psi, SweepDiagnostics* diag) {
  if (b_norm < 0.0) throw Error("sector_sweep_bound: negative ||B||");
  if (diag) *diag = SweepDiagnostics{};
  if (b_norm == 0.0) {
    if (diag) diag->attained = true;
    return 0.0;
  }
  if (!(r_min > 0.0 && r_max > r_min) || n_r < 2 || n_psi < 1)
    throw Error("sector_sweep_bound: bad grid");

  const auto points = spec.sample_rays(r_min, r_max, n_r, n_psi);
  const double log_lo = std::log(r_min), log_hi = std::log(r_max);
  auto radius_of = [&](int ir) {
    return std::exp(log_lo + (log_hi - log_lo) * ir / double(n_r - 1));
  };

  double r_needed = 0.0;
  bool attained = true;
  double worst_psi = 0.0, worst_radius = 0.0;
  for (int ip = 0; ip < n_psi; ++ip) {
    // Largest radius where the contraction condition fails on this ray.
    int last_fail = -1;
    for (int ir = 0; ir < n_r; ++ir) {
      const Complex lambda = points[static_cast<size_t>(ip) * n_r + ir];
      bool ok = false;
      try {
        ok = b_norm * model.weyl_norm(lambda) < 1.0;
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) last_fail = ir;
    }
    if (last_fail == n_r - 1) {
      attained = false;
      worst_psi = std::arg(points[static_cast<size_t>(ip) * n_r + n_r - 1] -
                           spec.apex);
      worst_radius = r_max;
      break;
    }
    const double ray_r = last_fail < 0 ? 0.0 : radius_of(last_fail + 1);
    if (ray_r > r_needed) {
      r_needed = ray_r;
      worst_psi = std::arg(points[static_cast<size_t>(ip) * n_r] - spec.apex);
      worst_radius = ray_r;
    }
  }
  if (diag) {
    diag->attained = attained;
    diag->worst_psi = worst_psi;
    diag->worst_radius = worst_radius;
  }
  return attained ? r_needed : std::numeric_limits<double>::infinity();
}

} // namespace weylscope::enclosures
