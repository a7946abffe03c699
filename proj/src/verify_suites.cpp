#include "weylscope/verify_suites.hpp"

#include "weylscope/boundary_operator.hpp"
#include "weylscope/branch.hpp"
#include "weylscope/enclosures.hpp"
#include "weylscope/linalg.hpp"
#include "weylscope/models.hpp"
#include "weylscope/secular.hpp"
#include "weylscope/sector.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

namespace weylscope::verify {

using namespace weylscope::core;
using namespace weylscope::models;
using namespace weylscope::enclosures;
using namespace weylscope::solver;

namespace {

constexpr double pi = std::numbers::pi;

MetricGraph random_compact_graph(std::mt19937_64& rng, int max_vertices = 8) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  std::uniform_real_distribution<double> len(0.3, 3.0);
  const int n = nv(rng);
  std::vector<GraphEdge> edges;
  for (int v = 1; v < n; ++v)
    edges.push_back(GraphEdge::finite(v - 1, v, len(rng)));
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int extra = std::uniform_int_distribution<int>(0, n)(rng);
  for (int k = 0; k < extra; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back(GraphEdge::finite(a, b, len(rng)));
  }
  return MetricGraph(n, std::move(edges));
}

Matrix random_complex_matrix(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Complex random_upper(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-10.0, 10.0), im(0.05, 10.0);
  return Complex(re(rng), im(rng));
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

} // namespace

SuiteResult suite_symmetry(std::uint64_t seed) {
  SuiteResult res{"symmetry", true, 0.0, ""};
  std::mt19937_64 rng(seed ^ 0x53594d4dULL);
  const auto lattice = PointLattice::equispaced(21, 1.0);
  const auto graph = random_compact_graph(rng);
  for (int i = 0; i < 1000; ++i) {
    const Complex l = random_upper(rng);
    for (int which = 0; which < 2; ++which) {
      const Matrix m = which == 0 ? *lattice_weyl(lattice, l).matrix
                                  : *graph_weyl(graph, l).matrix;
      const Matrix mc = which == 0
                            ? *lattice_weyl(lattice, std::conj(l)).matrix
                            : *graph_weyl(graph, std::conj(l)).matrix;
      const double dev =
          spectral_norm(mc - m.adjoint()) / std::max(spectral_norm(m), 1e-300);
      res.worst = std::max(res.worst, dev);
    }
  }
  res.pass = res.worst < 1e-10;
  res.detail = "worst relative asymmetry " + fmt(res.worst);
  return res;
}

SuiteResult suite_herglotz(std::uint64_t seed) {
  SuiteResult res{"herglotz", true, 0.0, ""};
  std::mt19937_64 rng(seed ^ 0x4845524cULL);
  const auto lattice = PointLattice::equispaced(21, 1.0);
  const auto graph = random_compact_graph(rng);
  double worst = 0.0; // most negative scaled eigenvalue of Im M
  for (int i = 0; i < 1000; ++i) {
    const Complex l = random_upper(rng);
    for (int which = 0; which < 2; ++which) {
      const Matrix m = which == 0 ? *lattice_weyl(lattice, l).matrix
                                  : *graph_weyl(graph, l).matrix;
      const double scale = std::max(spectral_norm(m), 1e-300);
      const double min_eig = hermitian_eigenvalues(imag_part(m))(0);
      worst = std::min(worst, min_eig / scale);
    }
  }
  res.worst = worst;
  res.pass = worst >= -1e-10;
  res.detail = "min scaled eigenvalue of Im M = " + fmt(worst);
  return res;
}

SuiteResult suite_schur() {
  SuiteResult res{"schur", true, 0.0, ""};
  const auto lattice = PointLattice::equispaced(51, 1.0);
  double worst = -1e300; // max (norm - bound); must stay <= 1e-10
  // 32 x 32 grid over Re in [-50, 50], Im in [0.1, 50]
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const Complex l(-50.0 + 100.0 * i / 31.0, 0.1 + 49.9 * j / 31.0);
      const double gap =
          lattice_weyl(lattice, l).norm - schur_bound_line(1.0, l);
      worst = std::max(worst, gap);
    }
  // exterior sector samples against the uniform coth(J0) bound
  const double j0 = j0_sector_constant(1.0, -1.0, pi / 2);
  const auto sector = SectorSpec::exterior(-1.0, pi / 2);
  for (Complex l : sector.sample_rays(0.05, 100.0, 20, 13)) {
    const double bound = 1.0 / (std::tanh(j0) * 2.0 * std::sqrt(std::abs(l)));
    worst = std::max(worst, lattice_weyl(lattice, l).norm - bound);
  }
  res.worst = worst;
  res.pass = worst <= 1e-10;
  res.detail = "max (norm - bound) = " + fmt(worst);
  return res;
}

SuiteResult suite_decay(std::uint64_t seed) {
  SuiteResult res{"decay", true, 0.0, ""};
  std::mt19937_64 rng(seed ^ 0x44454341ULL);
  const auto sector = SectorSpec::exterior(-1.0, pi / 2);
  double worst_ratio = 0.0;
  for (int g = 0; g < 20; ++g) {
    const auto graph = random_compact_graph(rng);
    double sup_lo = 0.0, sup_hi = 0.0;
    for (Complex l : sector.sample_rays(9.0, 1.1e4, 45, 13)) {
      const double al = std::abs(l);
      if (al < 10.0 || al > 1e4) continue;
      const double scaled = std::sqrt(al) * graph_weyl(graph, l).norm;
      if (!std::isfinite(scaled)) {
        res.pass = false;
        res.detail = "non-finite scaled norm";
        return res;
      }
      if (al <= 1e2) sup_lo = std::max(sup_lo, scaled);
      if (al >= 1e3) sup_hi = std::max(sup_hi, scaled);
    }
    if (sup_lo == 0.0 || sup_hi == 0.0) continue;
    worst_ratio = std::max(worst_ratio, sup_hi / sup_lo);
  }
  res.worst = worst_ratio;
  res.pass = worst_ratio < 1.1;
  res.detail = "worst sup ratio [1e3,1e4] / [10,1e2] = " + fmt(worst_ratio);
  return res;
}

SuiteResult suite_identity(std::uint64_t seed) {
  SuiteResult res{"identity", true, 0.0, ""};
  std::mt19937_64 rng(seed ^ 0x4944454eULL);
  const PointLattice single({0.0}, 1.0);
  std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.1, 5.0), s(0.0, 1.0);
  auto draw = [&]() {
    return Complex(re(rng), (s(rng) < 0.5 ? -1.0 : 1.0) * im(rng));
  };
  for (int i = 0; i < 1000; ++i) {
    const Complex l = draw(), m = draw();
    const Complex sl = sqrt_upper(l), sm = sqrt_upper(m);
    const Complex lhs = (*lattice_weyl(single, l).matrix)(0, 0) -
                        (*lattice_weyl(single, m).matrix)(0, 0);
    const Complex rhs = Complex(0.0, 1.0) * (sm - sl) / (2.0 * sl * sm);
    res.worst = std::max(res.worst, std::abs(lhs - rhs));
  }
  res.pass = res.worst < 1e-12;
  res.detail = "worst identity deviation " + fmt(res.worst);
  return res;
}

SuiteResult suite_duality(std::uint64_t seed) {
  SuiteResult res{"duality", true, 0.0, ""};
  std::mt19937_64 rng(seed ^ 0x4455414cULL);
  SolverOptions opt;
  double worst_pair = 0.0, worst_imag = 0.0, worst_dissip = -1e300;
  int located = 0;

  for (int trial = 0; trial < 4; ++trial) {
    const auto graph = random_compact_graph(rng, 6);
    const int n = graph.vertex_count();
    const WeylModel model(graph);

    // positive-dominant diagonal keeps bound states inside the window
    Matrix bmat = random_complex_matrix(rng, n, 0.25);
    std::uniform_real_distribution<double> diag(1.0, 5.0);
    for (int i = 0; i < n; ++i) bmat(i, i) += diag(rng);

    const auto b = analyze_boundary_operator(bmat);
    const auto b_adj = analyze_boundary_operator(Matrix(bmat.adjoint()));
    const Complex lo(-40.0, -10.0), hi(-1e-3, 10.0);
    auto rep = find_eigenvalues(model, b, lo, hi, opt);
    auto rep_adj = find_eigenvalues(model, b_adj, lo, hi, opt);
    located += static_cast<int>(rep.eigenvalues.size());
    if (rep.eigenvalues.size() != rep_adj.eigenvalues.size()) {
      res.pass = false;
      res.detail = "B and B* located different eigenvalue counts";
      return res;
    }
    for (const auto& ev : rep.eigenvalues) {
      double best = 1e300;
      for (const auto& other : rep_adj.eigenvalues)
        best = std::min(best,
                        std::abs(std::conj(ev.lambda) - other.lambda));
      worst_pair = std::max(worst_pair, best);
    }
  }

  // Hermitian class: all eigenvalues real.
  for (int trial = 0; trial < 2; ++trial) {
    const auto graph = random_compact_graph(rng, 6);
    const int n = graph.vertex_count();
    Matrix h = random_complex_matrix(rng, n, 0.4);
    h = Matrix(0.5 * (h + h.adjoint()));
    std::uniform_real_distribution<double> diag(1.0, 4.0);
    for (int i = 0; i < n; ++i) h(i, i) += diag(rng);
    const auto rep = find_eigenvalues(WeylModel(graph),
                                      analyze_boundary_operator(h),
                                      Complex(-40.0, -5.0), Complex(-1e-3, 5.0),
                                      opt);
    located += static_cast<int>(rep.eigenvalues.size());
    for (const auto& ev : rep.eigenvalues)
      worst_imag = std::max(worst_imag, std::abs(ev.lambda.imag()));
  }

  // Dissipative class (Im B PSD): eigenvalues in the closed lower half-plane.
  for (int trial = 0; trial < 2; ++trial) {
    const auto graph = random_compact_graph(rng, 6);
    const int n = graph.vertex_count();
    Matrix h = random_complex_matrix(rng, n, 0.3);
    h = Matrix(0.5 * (h + h.adjoint()));
    std::uniform_real_distribution<double> diag(1.0, 4.0);
    for (int i = 0; i < n; ++i) h(i, i) += diag(rng);
    Matrix p = random_complex_matrix(rng, n, 0.4);
    p = Matrix(p * p.adjoint()); // PSD
    const Matrix bmat = h + Complex(0.0, 1.0) * p;
    const auto b = analyze_boundary_operator(bmat);
    const auto rep = find_eigenvalues(WeylModel(graph), b, Complex(-40.0, -8.0),
                                      Complex(-1e-3, 8.0), opt);
    located += static_cast<int>(rep.eigenvalues.size());
    for (const auto& ev : rep.eigenvalues)
      worst_dissip = std::max(worst_dissip, ev.lambda.imag());
  }

  res.worst = std::max({worst_pair, worst_imag, worst_dissip});
  res.pass = worst_pair < 1e-8 && worst_imag < 1e-8 && worst_dissip <= 1e-8 &&
             located > 0;
  res.detail = "pairs " + fmt(worst_pair) + ", hermitian |Im| " +
               fmt(worst_imag) + ", dissipative Im " + fmt(worst_dissip) +
               ", located " + fmt(located);
  return res;
}

SuiteResult suite_containment(std::uint64_t seed) {
  SuiteResult res{"containment", true, 0.0, ""};
  std::mt19937_64 rng(seed ^ 0x434f4e54ULL);
  SolverOptions opt;
  int located = 0, violations = 0;
  double worst_violation = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    const auto graph = random_compact_graph(rng);
    const int n = graph.vertex_count();
    const WeylModel model(graph);

    Matrix bmat = random_complex_matrix(rng, n, 0.3);
    const int cls = trial % 5;
    std::uniform_real_distribution<double> diag(0.5, 5.0);
    if (cls <= 2) { // semibound b > 0 dominant: produces bound states
      for (int i = 0; i < n; ++i) bmat(i, i) += diag(rng);
    } else if (cls == 3) { // b < 0
      bmat = Matrix(-bmat * bmat.adjoint()) +
             Complex(0.0, 1.0) * random_complex_matrix(rng, n, 0.2);
      bmat -= 0.5 * Matrix::Identity(n, n);
    } else { // b ~ 0: purely skew perturbation
      bmat = Matrix(bmat - bmat.adjoint()) * 0.5;
    }
    const auto b = analyze_boundary_operator(bmat);

    const auto decay = fitted_decay_for_model(model, 0.0, 1e-2, 1e6, 120);
    std::optional<double> xi;
    if (b.semibound_b > 1e-12 * (1.0 + b.norm()))
      xi = decay.mu -
           std::pow(decay.C * b.semibound_b, 1.0 / decay.beta) - 5.0;
    std::vector<EnclosureRegion> regions;
    regions.push_back(parabola_enclosure(decay, b, xi));
    regions.push_back(left_resolvent_free(&model, b, decay));

    auto rep = find_eigenvalues(model, b, Complex(-50.0, -20.0),
                                Complex(-1e-3, 20.0), opt);
    located += static_cast<int>(rep.eigenvalues.size());
    verify_containment(rep, regions);
    for (const auto& row : rep.verdicts)
      if (row.violation) {
        ++violations;
        worst_violation = std::max(
            worst_violation,
            row.region_tag == "left_resolvent_free" ? row.margin : -row.margin);
      }
  }

  res.worst = worst_violation;
  res.pass = violations == 0 && located > 0;
  res.detail = fmt(located) + " eigenvalues across 50 draws, " +
               fmt(violations) + " violations";
  return res;
}

SuiteResult star_sharpness() {
  SuiteResult res{"star_sharpness", true, 0.0, ""};
  const WeylModel model(ScalarProfile::star(3));
  Matrix bmat(1, 1);
  bmat(0, 0) = Complex(3.0, 3.0);
  const auto b = analyze_boundary_operator(bmat);
  SolverOptions opt;
  auto rep = find_eigenvalues(model, b, Complex(-1.5, -3.5),
                              Complex(1.5, -0.5), opt);
  if (rep.eigenvalues.size() != 1) {
    res.pass = false;
    res.detail = "expected exactly one eigenvalue, located " +
                 fmt(double(rep.eigenvalues.size()));
    return res;
  }
  const auto& ev = rep.eigenvalues[0];
  const double loc_err = std::abs(ev.lambda - Complex(0.0, -2.0));
  const auto decay = *closed_form_decay(model);
  const auto disk = dist_enclosure(decay, b.norm(), DistMode::ToSpectrum, 0.0);
  verify_containment(rep, {disk});
  const double margin = rep.verdicts.at(0).margin;
  res.worst = std::max({loc_err, ev.residual, std::abs(margin)});
  res.pass = loc_err < 1e-9 && ev.residual < 1e-10 && std::abs(margin) < 1e-9;
  res.detail = "eigenvalue offset " + fmt(loc_err) + ", residual " +
               fmt(ev.residual) + ", disk margin " + fmt(margin) +
               " (radius " + fmt(disk.radius) + ")";
  return res;
}

SuiteResult kac_sharpness() {
  SuiteResult res{"kac_sharpness", true, 0.0, ""};
  for (double alpha : {0.125, 0.25, 0.375}) {
    double prev_ratio = 0.0, prev_change = 1e300, final_change = 1e300;
    double prev_plain = 1e300;
    for (double ex = 4.0; ex <= 8.0; ex += 1.0) {
      const double al = std::pow(10.0, ex);
      const double m = kac_weyl_eval(alpha, Complex(-al, 0.0)).real();
      if (!(m > 0.0)) {
        res.pass = false;
        res.detail = "non-positive Weyl value";
        return res;
      }
      const double plain = m * std::pow(al, 1.0 - 2.0 * alpha);
      if (!(plain < prev_plain)) { // |M| |l|^{1-2a} must decrease to 0
        res.pass = false;
        res.detail = "power-normalized value failed to decrease";
        return res;
      }
      prev_plain = plain;
      const double ratio = plain * std::pow(std::log(al), 2.0);
      if (prev_ratio > 0.0) {
        const double change = std::abs(ratio - prev_ratio) / prev_ratio;
        if (change > prev_change + 1e-12) {
          res.pass = false;
          res.detail = "decade-to-decade change is not monotone decreasing";
          return res;
        }
        prev_change = change;
        final_change = change;
      }
      prev_ratio = ratio;
    }
    res.worst = std::max(res.worst, final_change);
    if (!(final_change < 0.05)) {
      res.pass = false;
      res.detail = "final-decade change " + fmt(final_change) + " >= 5%";
      return res;
    }
  }
  res.detail = "worst final-decade change " + fmt(res.worst);
  return res;
}

SuiteResult closed_form_bounds() {
  SuiteResult res{"closed_form_bounds", true, 0.0, ""};
  const auto hyper = *closed_form_decay(WeylModel(ScalarProfile::hyperplane()));
  const auto half = *closed_form_decay(WeylModel(ScalarProfile::half_space()));
  const bool exact = hyper.C == 0.5 && hyper.beta == 0.5 && hyper.mu == 0.0 &&
                     half.C == 1.0 && half.beta == 0.5 && half.mu == 0.0;
  const auto disk = dist_enclosure(hyper, 2.0, DistMode::ToSpectrum, 0.0);
  const double radius_err = std::abs(disk.radius - 1.0);
  res.worst = radius_err;
  res.pass = exact && radius_err == 0.0;
  res.detail = "hyperplane (C,beta,mu)=(" + fmt(hyper.C) + "," +
               fmt(hyper.beta) + "," + fmt(hyper.mu) + "), half-space C=" +
               fmt(half.C) + ", disk radius " + fmt(disk.radius);
  return res;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "symmetry", "herglotz", "schur", "decay", "containment", "duality",
      "identity"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "symmetry") return suite_symmetry(seed);
  if (name == "herglotz") return suite_herglotz(seed);
  if (name == "schur") return suite_schur();
  if (name == "decay") return suite_decay(seed);
  if (name == "containment") return suite_containment(seed);
  if (name == "duality") return suite_duality(seed);
  if (name == "identity") return suite_identity(seed);
  throw Error("unknown suite '" + name + "'");
}

} // namespace weylscope::verify
