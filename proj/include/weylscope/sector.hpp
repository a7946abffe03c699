#ifndef WEYLSCOPE_SECTOR_HPP
#define WEYLSCOPE_SECTOR_HPP

#include "weylscope/types.hpp"

#include <numbers>
#include <vector>

namespace weylscope::core {

/// Closed sectors used by the decay machinery:
///   UpperSector     S_{z0,theta}: arg(z - z0) in [pi/2 - theta, pi/2 + theta]
///   ConjugateSector S*_{z0,theta}: the complex conjugate of the above
///   ExteriorSector  U_{w0,nu}:    arg(z - w0) in [nu, 2 pi - nu], w0 real
struct SectorSpec {
  enum class Kind { UpperSector, ConjugateSector, ExteriorSector };

  Kind kind;
  Complex apex;              // z0 (upper/conjugate) or w0 (exterior, real)
  double half_angle_or_nu;   // theta in (0, pi/2) or nu in (0, pi)

  static SectorSpec upper(Complex z0, double theta);
  static SectorSpec conjugate(Complex z0, double theta);
  static SectorSpec exterior(double w0, double nu);

  bool contains(Complex z) const;

  /// Rays spanning the sector: for each of n_psi angles, points
  /// apex + r e^{i psi} with r log-spaced in [r_min, r_max].
  std::vector<Complex> sample_rays(double r_min, double r_max, int n_r,
                                   int n_psi) const;
};

inline SectorSpec SectorSpec::upper(Complex z0, double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2))
    throw Error("upper sector requires theta in (0, pi/2)");
  if (z0.imag() < 0.0) throw Error("upper sector requires Im(apex) >= 0");
  return {Kind::UpperSector, z0, theta};
}

inline SectorSpec SectorSpec::conjugate(Complex z0, double theta) {
  SectorSpec s = upper(z0, theta);
  s.kind = Kind::ConjugateSector;
  return s;
}

inline SectorSpec SectorSpec::exterior(double w0, double nu) {
  if (!(nu > 0.0 && nu < std::numbers::pi))
    throw Error("exterior sector requires nu in (0, pi)");
  return {Kind::ExteriorSector, Complex(w0, 0.0), nu};
}

bool sector_contains(const SectorSpec& s, Complex z);

inline bool SectorSpec::contains(Complex z) const { return sector_contains(*this, z); }

} // namespace weylscope::core

#endif
