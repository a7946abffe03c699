#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weylscope/boundary_operator.hpp"
#include "weylscope/bounds.hpp"
#include "weylscope/branch.hpp"
#include "weylscope/linalg.hpp"
#include "weylscope/sector.hpp"

#include <numbers>
#include <random>

using namespace weylscope;
using namespace weylscope::core;

namespace {

constexpr double pi = std::numbers::pi;

Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

Matrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
  Matrix q = qr.householderQ();
  return q;
}

} // namespace

TEST_CASE("sqrt_upper: pinned values") {
  CHECK(sqrt_upper(Complex(-1.0, 0.0)) == Complex(0.0, 1.0));
  CHECK(sqrt_upper(Complex(4.0, 0.0)) == Complex(2.0, 0.0));

  // Polar oracle for -2i: modulus sqrt(2), argument (3 pi/2) / 2 = 3 pi / 4.
  const Complex expect =
      std::sqrt(2.0) * Complex(std::cos(0.75 * pi), std::sin(0.75 * pi));
  const Complex got = sqrt_upper(Complex(0.0, -2.0));
  CHECK(std::abs(got - expect) < 1e-15);
  CHECK(std::abs(got * got - Complex(0.0, -2.0)) < 1e-15);
  CHECK(got.imag() > 0.0);
  CHECK(got.real() < 0.0);
}

TEST_CASE("sqrt_upper: square and branch over random samples") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const Complex l(u(rng), u(rng));
    const Complex r = sqrt_upper(l);
    CHECK(std::abs(r * r - l) <= 1e-14 * std::abs(l));
    if (!(l.imag() == 0.0 && l.real() >= 0.0)) CHECK(r.imag() > 0.0);
    if (l.imag() != 0.0) {
      const Complex lhs = sqrt_upper(std::conj(l));
      const Complex rhs = -std::conj(sqrt_upper(l));
      CHECK(std::abs(lhs - rhs) <= 1e-14 * std::abs(lhs));
    }
  }
}

TEST_CASE("analyze_boundary_operator: zero matrix") {
  const auto b = analyze_boundary_operator(Matrix::Zero(2, 2));
  CHECK(b.semibound_b == doctest::Approx(0.0));
  CHECK(b.im_norm == doctest::Approx(0.0));
  CHECK(b.hermitian);
  CHECK(b.dissipative);
  CHECK(b.accumulative);
}

TEST_CASE("analyze_boundary_operator: diag(1+2i, -3)") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = Complex(1.0, 2.0);
  m(1, 1) = Complex(-3.0, 0.0);
  const auto b = analyze_boundary_operator(m);
  // Hermitian part diag(1, -3), skew part over i diag(2, 0): computed directly.
  CHECK(b.semibound_b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.im_norm == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(b.hermitian);
  // Im B = diag(2, 0) is PSD, so the numerical range sits in the closed
  // upper half-plane.
  CHECK(b.dissipative);
  CHECK_FALSE(b.accumulative);
}

TEST_CASE("analyze_boundary_operator: nilpotent [[0,1],[0,0]]") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  const auto b = analyze_boundary_operator(m);
  CHECK(b.semibound_b == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.im_norm == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(b.hermitian);
  CHECK_FALSE(b.dissipative);
  CHECK_FALSE(b.accumulative);
}

TEST_CASE("analyze_boundary_operator: rejects non-square") {
  CHECK_THROWS_AS(analyze_boundary_operator(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("semibound matches max eigenvalue of the Hermitian part") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(rng, 4);
    const auto b = analyze_boundary_operator(m);
    const auto ev = hermitian_eigenvalues(hermitian_part(m));
    CHECK(std::abs(b.semibound_b - ev(ev.size() - 1)) <=
          1e-12 * spectral_norm(m));
  }
}

TEST_CASE("psd_sqrt: pinned values and spectral oracle") {
  CHECK(spectral_norm(psd_sqrt(Matrix::Identity(3, 3)) -
                      Matrix::Identity(3, 3)) < 1e-14);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  Matrix r = psd_sqrt(d);
  CHECK(std::abs(r(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(r(1, 1) - 3.0) < 1e-12);

  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  r = psd_sqrt(m);
  // Spectral-theorem oracle: eigenvalues 1 and 3 on (1,-1)/sqrt2, (1,1)/sqrt2.
  Matrix oracle(2, 2);
  const double s3 = std::sqrt(3.0);
  oracle << 0.5 * (s3 + 1.0), 0.5 * (s3 - 1.0), 0.5 * (s3 - 1.0),
      0.5 * (s3 + 1.0);
  CHECK(spectral_norm(r - oracle) < 1e-12);
  CHECK(spectral_norm(r * r - m) <= 1e-10 * spectral_norm(m));
}

TEST_CASE("psd_sqrt: rejects indefinite input") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK_THROWS_AS(psd_sqrt(d), Error);
}

TEST_CASE("kappa_eta: pinned values") {
  const Matrix m_eta = 0.5 * Matrix::Identity(2, 2);

  SUBCASE("B = 0 gives kappa = 0") {
    const auto b = analyze_boundary_operator(Matrix::Zero(2, 2));
    CHECK(kappa_eta(m_eta, b) == doctest::Approx(0.0));
  }
  SUBCASE("Hermitian B gives kappa = 0") {
    Matrix h(2, 2);
    h << 1.0, 2.0, 2.0, -1.0;
    const auto b = analyze_boundary_operator(h);
    REQUIRE(b.semibound_b * spectral_norm(m_eta) < 1.0);
    CHECK(kappa_eta(m_eta, b) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("diag(i, 0) against M = I/2") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(0.0, 1.0);
    const auto b = analyze_boundary_operator(m);
    CHECK(b.semibound_b == doctest::Approx(0.0));
    CHECK(kappa_eta(m_eta, b) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("hypothesis failure: b*||M|| >= 1") {
    const auto b = analyze_boundary_operator(3.0 * Matrix::Identity(2, 2));
    CHECK_THROWS_AS(kappa_eta(m_eta, b), Error);
  }
}

TEST_CASE("kappa_eta: invariant under simultaneous unitary conjugation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = random_matrix(rng, 3);
    Matrix m_eta = a * a.adjoint();          // Hermitian PSD
    m_eta /= 4.0 * spectral_norm(m_eta);     // keep b*||M|| < 1
    Matrix braw = random_matrix(rng, 3);
    const auto b = analyze_boundary_operator(braw);
    const Matrix u = random_unitary(rng, 3);
    const auto b_conj = analyze_boundary_operator(u * braw * u.adjoint());
    const double k1 = kappa_eta(m_eta, b);
    const double k2 = kappa_eta(u * m_eta * u.adjoint(), b_conj);
    CHECK(std::abs(k1 - k2) <= 1e-9 * (1.0 + k1));
  }
}

TEST_CASE("mbdd_bound: pinned values") {
  CHECK(mbdd_bound(1.5, Complex(0.0, 2.0), Complex(0.0, 2.0)) ==
        doctest::Approx(1.5));
  CHECK(mbdd_bound(1.0, Complex(0.0, 1.0), Complex(0.0, 2.0)) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(mbdd_bound(2.0, Complex(1.0, 1.0), Complex(0.0, 1.0)) ==
        doctest::Approx(4.0 + 2.0 * std::sqrt(5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(mbdd_bound(1.0, Complex(1.0, 0.0), Complex(0.0, 1.0)), Error);
}

TEST_CASE("ray_sector_bound: pinned values") {
  CHECK(ray_sector_bound(0.7, 0.7) == doctest::Approx(1.0));

  // Direct numeric substitution into the ray-transfer factor.
  const double oracle = 1.0 + 2.0 * std::sin(pi / 8) / std::sin(pi / 4) +
                        4.0 * std::sin(pi / 8) * std::sin(3.0 * pi / 8) /
                            (std::sin(pi / 2) * std::sin(pi / 4));
  CHECK(ray_sector_bound(pi / 2, pi / 4) == doctest::Approx(oracle));
  CHECK(ray_sector_bound(pi / 2, pi / 4) ==
        doctest::Approx(4.0823922).epsilon(1e-7));

  // psi = -phi: the (psi+phi)/2 factor vanishes, leaving 1 + 2.
  CHECK(ray_sector_bound(-pi / 3, pi / 3) == doctest::Approx(3.0));

  CHECK_THROWS_AS(ray_sector_bound(0.0, 0.5), Error);
  CHECK_THROWS_AS(ray_sector_bound(0.5, pi), Error);
}

TEST_CASE("sector membership") {
  const auto up = SectorSpec::upper(Complex(0.0, 1.0), pi / 4);
  CHECK(up.contains(Complex(0.0, 1.0)));        // apex
  CHECK(up.contains(Complex(0.0, 5.0)));        // straight up
  CHECK(up.contains(Complex(1.0, 2.0)));        // 45 degrees
  CHECK_FALSE(up.contains(Complex(2.0, 2.0)));  // below 45 degrees
  CHECK_FALSE(up.contains(Complex(0.0, 0.0)));

  const auto conj = SectorSpec::conjugate(Complex(0.0, 1.0), pi / 4);
  CHECK(conj.contains(Complex(0.0, -5.0)));
  CHECK_FALSE(conj.contains(Complex(0.0, 5.0)));

  const auto ext = SectorSpec::exterior(-1.0, pi / 2);
  CHECK(ext.contains(Complex(-1.0, 0.0)));      // apex
  CHECK(ext.contains(Complex(-5.0, 0.3)));
  CHECK(ext.contains(Complex(-1.0, 7.0)));      // boundary ray
  CHECK_FALSE(ext.contains(Complex(0.0, 0.5)));
  for (Complex z : ext.sample_rays(0.1, 100.0, 25, 9)) CHECK(ext.contains(z));
}
