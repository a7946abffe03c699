#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weylscope/bounds.hpp"
#include "weylscope/branch.hpp"
#include "weylscope/linalg.hpp"
#include "weylscope/models.hpp"
#include "weylscope/sector.hpp"

#include <numbers>
#include <random>

using namespace weylscope;
using namespace weylscope::core;
using namespace weylscope::models;

namespace {

constexpr double pi = std::numbers::pi;

MetricGraph single_edge(double length = 1.0) {
  return MetricGraph(2, {GraphEdge::finite(0, 1, length)});
}

MetricGraph star_infinite(int edges) {
  std::vector<GraphEdge> es;
  for (int i = 0; i < edges; ++i) es.push_back(GraphEdge::to_infinity(0));
  return MetricGraph(1, std::move(es));
}

MetricGraph random_compact_graph(std::mt19937_64& rng, int max_vertices = 8) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  std::uniform_real_distribution<double> len(0.3, 3.0);
  const int n = nv(rng);
  std::vector<GraphEdge> edges;
  // spanning path keeps every degree >= 1, then a few extra chords
  for (int v = 1; v < n; ++v) edges.push_back(GraphEdge::finite(v - 1, v, len(rng)));
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int extra = std::uniform_int_distribution<int>(0, n)(rng);
  for (int k = 0; k < extra; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back(GraphEdge::finite(a, b, len(rng)));
  }
  return MetricGraph(n, std::move(edges));
}

Complex random_offcut(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.1, 5.0),
      sign(0.0, 1.0);
  const double s = sign(rng) < 0.5 ? -1.0 : 1.0;
  return Complex(re(rng), s * im(rng));
}

} // namespace

TEST_CASE("graph invariants are enforced") {
  CHECK_THROWS_AS(MetricGraph(2, {GraphEdge::finite(0, 0, 1.0)}), Error);
  CHECK_THROWS_AS(MetricGraph(2, {GraphEdge::finite(0, 1, -1.0)}), Error);
  CHECK_THROWS_AS(MetricGraph(2, {GraphEdge::to_infinity(0)}), Error); // v1 bare
  CHECK_THROWS_AS(MetricGraph(1, {GraphEdge::finite(0, 2, 1.0)}), Error);
}

TEST_CASE("graph_weyl_inverse: single edge at lambda = -1") {
  const auto g = single_edge();
  const Matrix m = graph_weyl_inverse(g, Complex(-1.0, 0.0));
  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  const double csch1 = 1.0 / std::sinh(1.0);
  CHECK(std::abs(m(0, 0) - Complex(coth1, 0.0)) < 1e-14);
  CHECK(std::abs(m(1, 1) - Complex(coth1, 0.0)) < 1e-14);
  CHECK(std::abs(m(0, 1) - Complex(-csch1, 0.0)) < 1e-14);
  CHECK(std::abs(m(1, 0) - m(0, 1)) == 0.0);
}

TEST_CASE("graph_weyl_inverse: infinite star") {
  SUBCASE("E infinite edges give -i sqrt(lambda) E") {
    const auto g = star_infinite(4);
    const Complex l(2.0, 3.0);
    const Matrix m = graph_weyl_inverse(g, l);
    const Complex expect = Complex(0.0, -1.0) * sqrt_upper(l) * 4.0;
    CHECK(std::abs(m(0, 0) - expect) < 1e-13 * std::abs(expect));
  }
  SUBCASE("single infinite edge at lambda = -1 gives 1") {
    const auto g = star_infinite(1);
    const Matrix m = graph_weyl_inverse(g, Complex(-1.0, 0.0));
    CHECK(std::abs(m(0, 0) - Complex(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("graph_weyl: inverse consistency and norm") {
  const auto g = single_edge();
  const auto sample = graph_weyl(g, Complex(-1.0, 0.0));
  REQUIRE(sample.matrix.has_value());
  const Matrix minv = graph_weyl_inverse(g, Complex(-1.0, 0.0));
  CHECK(spectral_norm(minv * *sample.matrix - Matrix::Identity(2, 2)) < 1e-12);
  // Eigenvalues of M are tanh(1/2) and coth(1/2); the norm is coth(1/2).
  const double coth_half = 1.0 / std::tanh(0.5);
  CHECK(sample.norm == doctest::Approx(coth_half).epsilon(1e-12));
}

TEST_CASE("graph_weyl: star profile closed form i/(E sqrt(lambda))") {
  const auto g = star_infinite(3);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Complex l = random_offcut(rng);
    const auto s = graph_weyl(g, l);
    const Complex expect = Complex(0.0, 1.0) / (3.0 * sqrt_upper(l));
    CHECK(std::abs((*s.matrix)(0, 0) - expect) < 1e-13 * std::abs(expect));
  }
}

TEST_CASE("graph_weyl: sqrt(|l|)*||M|| stays bounded towards -infinity") {
  const auto g = single_edge();
  double prev = 0.0;
  for (double r : {1e2, 1e4, 1e6}) {
    const auto s = graph_weyl(g, Complex(-r, 0.0));
    const double scaled = std::sqrt(r) * s.norm;
    CHECK(scaled < 10.0);
    prev = scaled;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-3)); // 1/min degree
}

TEST_CASE("graph_weyl_inverse: Dirichlet singularity guard") {
  const auto g = single_edge();
  CHECK_THROWS_WITH_AS(static_cast<void>(graph_weyl_inverse(g, Complex(pi * pi, 0.0))),
                       doctest::Contains("Dirichlet"), Error);
  const auto pts = g.dirichlet_points(100.0);
  REQUIRE(pts.size() == 3); // pi^2, 4 pi^2, 9 pi^2
  CHECK(pts[0] == doctest::Approx(pi * pi));
  CHECK(pts[2] == doctest::Approx(9 * pi * pi));
  // Ground-energy ordering: the Dirichlet edge spectrum sits above
  // min sigma(A0) = 0.
  CHECK(pts[0] >= 0.0);
}

TEST_CASE("graph trig assembly survives huge |lambda| without overflow") {
  const auto g = single_edge(3.0);
  const auto s = graph_weyl(g, Complex(-1e8, 0.0));
  CHECK(std::isfinite(s.norm));
  CHECK(s.norm == doctest::Approx(1.0 / std::sqrt(1e8)).epsilon(1e-6));
}

TEST_CASE("lattice invariants are enforced") {
  CHECK_THROWS_AS(PointLattice({0.0, 0.5}, 1.0), Error);
  CHECK_THROWS_AS(PointLattice({1.0, 0.0}, 0.5), Error);
  CHECK_THROWS_AS(PointLattice({0.0}, 0.0), Error);
}

TEST_CASE("lattice_weyl: pinned values") {
  SUBCASE("single point at lambda = -1 gives 1/2") {
    const PointLattice p({0.0}, 1.0);
    const auto s = lattice_weyl(p, Complex(-1.0, 0.0));
    CHECK(std::abs((*s.matrix)(0, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(s.norm == doctest::Approx(0.5));
  }
  SUBCASE("two points at distance 1, lambda = -1") {
    const PointLattice p({0.0, 1.0}, 1.0);
    const auto s = lattice_weyl(p, Complex(-1.0, 0.0));
    const double off = 0.5 * std::exp(-1.0);
    CHECK(std::abs((*s.matrix)(0, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs((*s.matrix)(0, 1) - Complex(off, 0.0)) < 1e-15);
    CHECK(std::abs((*s.matrix)(1, 0) - Complex(off, 0.0)) < 1e-15);
  }
  SUBCASE("cut rejection") {
    const PointLattice p({0.0}, 1.0);
    CHECK_THROWS_AS(lattice_weyl(p, Complex(2.0, 0.0)), Error);
  }
}

TEST_CASE("lattice truncated window: tail adequacy") {
  const auto policy = WindowPolicy::truncated(1e-10);
  const auto big = PointLattice::equispaced(51, 1.0, policy);
  CHECK_NOTHROW(lattice_weyl(big, Complex(-1.0, 0.0)));
  const auto small = PointLattice::equispaced(11, 1.0, policy);
  CHECK_THROWS_WITH_AS(static_cast<void>(lattice_weyl(small, Complex(-1.0, 0.0))),
                       doctest::Contains("window too small"), Error);
}

TEST_CASE("Herglotz and conjugate symmetry for graph and lattice") {
  std::mt19937_64 rng(17);
  const auto g = random_compact_graph(rng);
  const auto p = PointLattice::equispaced(7, 0.8);
  std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.1, 5.0);
  for (int i = 0; i < 300; ++i) {
    const Complex l(re(rng), im(rng));
    for (int which = 0; which < 2; ++which) {
      Matrix m;
      if (which == 0) {
        m = *graph_weyl(g, l).matrix;
      } else {
        m = *lattice_weyl(p, l).matrix;
      }
      const double scale = spectral_norm(m);
      const auto im_eigs = hermitian_eigenvalues(imag_part(m));
      CHECK(im_eigs(0) >= -1e-10 * scale);
      Matrix m_conj = which == 0 ? *graph_weyl(g, std::conj(l)).matrix
                                 : *lattice_weyl(p, std::conj(l)).matrix;
      CHECK(spectral_norm(m_conj - m.adjoint()) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("positivity below the spectrum") {
  std::mt19937_64 rng(23);
  const auto g = random_compact_graph(rng);
  const auto p = PointLattice::equispaced(6, 1.1);
  for (double eta : {-0.5, -2.0, -10.0, -123.0}) {
    for (int which = 0; which < 2; ++which) {
      const Matrix m = which == 0 ? *graph_weyl(g, Complex(eta, 0.0)).matrix
                                  : *lattice_weyl(p, Complex(eta, 0.0)).matrix;
      CHECK(spectral_norm(m - m.adjoint()) <= 1e-10 * spectral_norm(m));
      CHECK(hermitian_eigenvalues(hermitian_part(m))(0) > 0.0);
      CHECK(spectral_norm(m.imag().cast<Complex>()) <=
            1e-10 * spectral_norm(m)); // real below the spectrum
    }
  }
}

TEST_CASE("difference identity for the single-point lattice") {
  const PointLattice p({0.0}, 1.0);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    const Complex l = random_offcut(rng);
    const Complex m = random_offcut(rng);
    const Complex sl = sqrt_upper(l), sm = sqrt_upper(m);
    const Complex lhs =
        (*lattice_weyl(p, l).matrix)(0, 0) - (*lattice_weyl(p, m).matrix)(0, 0);
    const Complex rhs = Complex(0.0, 1.0) * (sm - sl) / (2.0 * sl * sm);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("gamma field: pinned values and boundary identity") {
  const PointLattice single({0.0}, 1.0);
  Vector e1(1);
  e1(0) = 1.0;
  CHECK(std::abs(lattice_gamma_apply(single, e1, 0.0, Complex(-1.0, 0.0)) -
                 Complex(-0.5, 0.0)) < 1e-15);
  CHECK(lattice_gamma_apply(single, Vector::Zero(1), 0.7, Complex(-1.0, 0.0)) ==
        Complex(0.0, 0.0));

  // gamma(lambda) xi evaluated at x_m equals -(M(lambda) xi)_m.
  const auto p = PointLattice::equispaced(5, 0.9);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector xi(5);
  for (int i = 0; i < 5; ++i) xi(i) = Complex(u(rng), u(rng));
  const Complex l(-2.0, 1.3);
  const Matrix m = *lattice_weyl(p, l).matrix;
  const Vector mxi = m * xi;
  for (int k = 0; k < 5; ++k) {
    const Complex g =
        lattice_gamma_apply(p, xi, p.points()[static_cast<size_t>(k)], l);
    CHECK(std::abs(g + mxi(k)) < 1e-12);
  }
}

TEST_CASE("schur_bound_line: pinned values and dominance") {
  CHECK(schur_bound_line(1.0, Complex(-1.0, 0.0)) ==
        doctest::Approx(0.5 / std::tanh(0.5)).epsilon(1e-14));
  CHECK(schur_bound_line(1.0, Complex(-1.0, 0.0)) ==
        doctest::Approx(1.0819767).epsilon(1e-6));
  CHECK(schur_bound_line(1e3, Complex(-1.0, 0.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(schur_bound_line(1.0, Complex(-4.0, 0.0)) ==
        doctest::Approx(0.25 / std::tanh(1.0)).epsilon(1e-14));
  CHECK(schur_bound_line(1.0, Complex(-4.0, 0.0)) ==
        doctest::Approx(0.3282585).epsilon(1e-6));

  std::mt19937_64 rng(37);
  const auto p = PointLattice::equispaced(21, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Complex l = random_offcut(rng);
    CHECK(lattice_weyl(p, l).norm <= schur_bound_line(1.0, l) + 1e-10);
  }
}

TEST_CASE("j0_sector_constant and the uniform sector bound") {
  CHECK(j0_sector_constant(1.0, -1.0, pi / 2) ==
        doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(j0_sector_constant(1.0, -1.0, 1e-9) < 1e-4);
  CHECK(j0_sector_constant(2.0, -4.0, pi / 3) ==
        doctest::Approx(std::sqrt(4.0 * std::sin(pi / 3)) * std::sin(pi / 6))
            .epsilon(1e-14));
  CHECK(j0_sector_constant(2.0, -4.0, pi / 3) ==
        doctest::Approx(0.9306049).epsilon(1e-6));

  const double j0 = j0_sector_constant(1.0, -1.0, pi / 2);
  const auto sector = SectorSpec::exterior(-1.0, pi / 2);
  const auto p = PointLattice::equispaced(21, 1.0);
  for (Complex l : sector.sample_rays(0.05, 50.0, 12, 7)) {
    const double bound =
        1.0 / (std::tanh(j0) * 2.0 * std::sqrt(std::abs(l)));
    CHECK(lattice_weyl(p, l).norm <= bound + 1e-10);
  }
}

TEST_CASE("derivative of the lattice Weyl function: finite differences vs analytic") {
  const auto p = PointLattice::equispaced(3, 1.2);
  const Complex l(-2.0, 0.7);
  auto analytic = [&](int n, int m) {
    const double r = std::abs(p.points()[static_cast<size_t>(n)] -
                              p.points()[static_cast<size_t>(m)]);
    const Complex s = sqrt_upper(l);
    return std::exp(Complex(0.0, 1.0) * s * r) *
           (Complex(0.0, -0.25) / (s * s * s) - 0.25 * r / (s * s));
  };
  auto fd_error = [&](double h) {
    const Matrix hi = *lattice_weyl(p, l + h).matrix;
    const Matrix lo = *lattice_weyl(p, l - h).matrix;
    double worst = 0.0;
    for (int n = 0; n < 3; ++n)
      for (int m = 0; m < 3; ++m)
        worst = std::max(worst, std::abs((hi(n, m) - lo(n, m)) / (2.0 * h) -
                                         analytic(n, m)));
    return worst;
  };
  const double e1 = fd_error(1e-3);
  const double e2 = fd_error(5e-4);
  CHECK(e1 < 1e-5);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25)); // O(h^2)
}

TEST_CASE("mbdd and ray-sector bounds dominate actual model norms") {
  std::mt19937_64 rng(41);
  const auto p = PointLattice::equispaced(9, 1.0);
  const auto g = random_compact_graph(rng);
  for (int i = 0; i < 1000; ++i) {
    const Complex l = random_offcut(rng), m = random_offcut(rng);
    const double pm = lattice_weyl(p, m).norm;
    CHECK(lattice_weyl(p, l).norm <= mbdd_bound(pm, l, m) + 1e-8);
    const double gm = graph_weyl(g, m).norm;
    CHECK(graph_weyl(g, l).norm <= mbdd_bound(gm, l, m) + 1e-8);
  }
  const double phi = 3.0 * pi / 4;
  for (double psi : {pi / 2, pi / 4, 7.0 * pi / 8}) {
    const double factor = ray_sector_bound(psi, phi);
    for (double r : {0.5, 2.0, 10.0, 100.0}) {
      const Complex on_psi = r * Complex(std::cos(psi), std::sin(psi));
      const Complex on_phi = r * Complex(std::cos(phi), std::sin(phi));
      CHECK(lattice_weyl(p, on_psi).norm <=
            factor * lattice_weyl(p, on_phi).norm + 1e-8);
      CHECK(graph_weyl(g, on_psi).norm <=
            factor * graph_weyl(g, on_phi).norm + 1e-8);
    }
  }
}

TEST_CASE("scalar profiles: pinned norms") {
  CHECK(scalar_profile_norm(ScalarProfile::half_space(), Complex(-4.0, 0.0)) ==
        doctest::Approx(0.5));
  CHECK(scalar_profile_norm(ScalarProfile::hyperplane(), Complex(-1.0, 0.0)) ==
        doctest::Approx(0.5));
  CHECK(scalar_profile_norm(ScalarProfile::star(3), Complex(-9.0, 0.0)) ==
        doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(scalar_profile_norm(ScalarProfile::half_space(),
                                      Complex(1.0, 0.0)),
                  Error);
  // half-space/hyperplane distances use dist(lambda, [0, inf))
  CHECK(scalar_profile_norm(ScalarProfile::half_space(), Complex(9.0, 4.0)) ==
        doctest::Approx(0.5));
}

TEST_CASE("kac_weyl_eval: closed-form anchor and positivity") {
  // alpha = 1/2, lambda = 0: integral of 1/(t (ln t)^2) over [e, inf) is 1.
  const Complex v = kac_weyl_eval(0.5, Complex(0.0, 0.0));
  CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-8);

  for (double alpha : {0.125, 0.25, 0.375, 0.5}) {
    for (double l : {-0.5, -10.0, -1e4}) {
      const Complex w = kac_weyl_eval(alpha, Complex(l, 0.0));
      CHECK(w.real() > 0.0);
      CHECK(std::abs(w.imag()) < 1e-12 * w.real());
    }
  }
  CHECK_THROWS_AS(kac_weyl_eval(0.25, Complex(3.0, 0.0)), Error);
}

TEST_CASE("kac asymptotics approach the |l|^{2a-1} (ln|l|)^{-2} profile") {
  const double alpha = 0.25;
  double prev_ratio = 0.0, prev_change = 1e9;
  for (double ex = 4.0; ex <= 8.0; ex += 1.0) {
    const double al = std::pow(10.0, ex);
    const double ratio = kac_weyl_eval(alpha, Complex(-al, 0.0)).real() *
                         std::pow(al, 1.0 - 2.0 * alpha) *
                         std::pow(std::log(al), 2.0);
    CHECK(ratio > 0.0);
    if (prev_ratio > 0.0) {
      const double change = std::abs(ratio - prev_ratio) / prev_ratio;
      CHECK(change < prev_change + 1e-12);
      prev_change = change;
    }
    prev_ratio = ratio;
  }
  CHECK(prev_change < 0.05);
}

TEST_CASE("WeylModel dispatch") {
  const WeylModel g(single_edge());
  CHECK(g.boundary_dim() == 2);
  CHECK(g.kind_name() == "graph");
  CHECK(g.spectrum_base() == 0.0);
  CHECK(g.has_matrix());
  CHECK(g.on_cut(Complex(3.0, 0.0)));
  CHECK_FALSE(g.on_cut(Complex(-3.0, 0.0)));
  CHECK(g.singular_points(50.0).size() == 2);

  const WeylModel k(ScalarProfile::kac(0.5));
  CHECK(k.spectrum_base() == doctest::Approx(std::numbers::e));
  CHECK(k.on_cut(Complex(3.0, 0.0)));
  CHECK_FALSE(k.on_cut(Complex(2.0, 0.0)));

  const WeylModel h(ScalarProfile::half_space());
  CHECK_FALSE(h.has_matrix());
  CHECK(h.weyl(Complex(-4.0, 0.0)).norm == doctest::Approx(0.5));
  CHECK_FALSE(h.weyl(Complex(-4.0, 0.0)).matrix.has_value());

  const WeylModel s(ScalarProfile::star(3));
  const auto sample = s.weyl(Complex(-9.0, 0.0));
  REQUIRE(sample.matrix.has_value());
  CHECK(std::abs((*sample.matrix)(0, 0) - Complex(1.0 / 9.0, 0.0)) < 1e-15);
}
