#include "weylscope/sector.hpp"

namespace weylscope::core {

namespace {
constexpr double pi = std::numbers::pi;
}

bool sector_contains(const SectorSpec& s, Complex z) {
  const Complex w = (s.kind == SectorSpec::Kind::ConjugateSector)
                        ? std::conj(z) - s.apex
                        : z - s.apex;
  if (w == Complex(0.0, 0.0)) return true; // the apex belongs to the sector
  switch (s.kind) {
    case SectorSpec::Kind::UpperSector:
    case SectorSpec::Kind::ConjugateSector: {
      const double a = std::arg(w); // in (-pi, pi]
      return a >= pi / 2 - s.half_angle_or_nu && a <= pi / 2 + s.half_angle_or_nu;
    }
    case SectorSpec::Kind::ExteriorSector: {
      double a = std::arg(w);
      if (a < 0.0) a += 2.0 * pi; // [0, 2 pi)
      return a >= s.half_angle_or_nu && a <= 2.0 * pi - s.half_angle_or_nu;
    }
  }
  return false;
}

std::vector<Complex> SectorSpec::sample_rays(double r_min, double r_max,
                                             int n_r, int n_psi) const {
  if (!(r_min > 0.0 && r_max > r_min) || n_r < 2 || n_psi < 1)
    throw Error("sample_rays: bad grid parameters");
  double psi_lo, psi_hi;
  switch (kind) {
    case Kind::UpperSector:
      psi_lo = pi / 2 - half_angle_or_nu;
      psi_hi = pi / 2 + half_angle_or_nu;
      break;
    case Kind::ConjugateSector:
      psi_lo = -pi / 2 - half_angle_or_nu;
      psi_hi = -pi / 2 + half_angle_or_nu;
      break;
    case Kind::ExteriorSector:
      psi_lo = half_angle_or_nu;
      psi_hi = 2.0 * pi - half_angle_or_nu;
      break;
  }
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(n_r) * n_psi);
  const double log_lo = std::log(r_min), log_hi = std::log(r_max);
  for (int ip = 0; ip < n_psi; ++ip) {
    const double psi =
        n_psi == 1 ? 0.5 * (psi_lo + psi_hi)
                   : psi_lo + (psi_hi - psi_lo) * ip / double(n_psi - 1);
    for (int ir = 0; ir < n_r; ++ir) {
      const double r =
          std::exp(log_lo + (log_hi - log_lo) * ir / double(n_r - 1));
      out.push_back(apex + r * Complex(std::cos(psi), std::sin(psi)));
    }
  }
  return out;
}

} // namespace weylscope::core
