#include "weylscope/models.hpp"

#include "weylscope/branch.hpp"
#include "weylscope/linalg.hpp"
#include "weylscope/quadrature.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weylscope::models {

using core::sqrt_upper;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double dirichlet_guard = 1e-12;

// cot(z) and 1/sin(z) for Im z >= 0, written through e^{iz} so nothing
// overflows when Im z is large.
struct TrigPair {
  Complex cot;
  Complex csc;
  double abs_sin;
};

TrigPair stable_trig(Complex z) {
  const Complex u = std::exp(Complex(0.0, 1.0) * z); // |u| = e^{-Im z} <= 1
  const Complex w = u * u;
  const Complex wm1 = w - 1.0;
  const double au = std::abs(u);
  TrigPair t;
  t.abs_sin = au > 1e-150 ? std::abs(wm1) / (2.0 * au) : 1e150;
  t.cot = Complex(0.0, 1.0) * (w + 1.0) / wm1;
  t.csc = Complex(0.0, 2.0) * u / wm1;
  return t;
}

} // namespace

// ---------------------------------------------------------------------------
// MetricGraph
// ---------------------------------------------------------------------------

MetricGraph::MetricGraph(int vertex_count, std::vector<GraphEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw Error("graph needs at least one vertex");
  if (edges_.empty()) throw Error("graph needs at least one edge");
  degrees_.assign(static_cast<size_t>(vertex_count_), 0);
  compact_ = true;
  for (const auto& e : edges_) {
    if (e.from < 0 || e.from >= vertex_count_)
      throw Error("edge references unknown vertex");
    if (e.infinite) {
      compact_ = false;
      degrees_[static_cast<size_t>(e.from)]++;
      continue;
    }
    if (e.to < 0 || e.to >= vertex_count_)
      throw Error("edge references unknown vertex");
    if (e.to == e.from) throw Error("graph must not contain loops");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw Error("finite edge length must be positive");
    degrees_[static_cast<size_t>(e.from)]++;
    degrees_[static_cast<size_t>(e.to)]++;
  }
  for (int v = 0; v < vertex_count_; ++v)
    if (degrees_[static_cast<size_t>(v)] == 0)
      throw Error("every vertex must have degree >= 1");
}

std::vector<double> MetricGraph::dirichlet_points(double up_to) const {
  std::vector<double> pts;
  for (const auto& e : edges_) {
    if (e.infinite) continue;
    for (int k = 1;; ++k) {
      const double p = std::pow(k * pi / e.length, 2.0);
      if (p > up_to) break;
      pts.push_back(p);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
                        }),
            pts.end());
  return pts;
}

Matrix graph_weyl_inverse(const MetricGraph& g, Complex lambda) {
  require_finite(lambda, "lambda");
  const Complex s = sqrt_upper(lambda);
  const int n = g.vertex_count();
  Matrix m = Matrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    if (e.infinite) {
      m(e.from, e.from) -= Complex(0.0, 1.0) * s;
      continue;
    }
    const TrigPair t = stable_trig(s * e.length);
    if (t.abs_sin < dirichlet_guard)
      throw Error("Dirichlet singularity -- M(lambda) undefined here");
    m(e.from, e.from) += s * t.cot;
    m(e.to, e.to) += s * t.cot;
    m(e.from, e.to) -= s * t.csc;
    m(e.to, e.from) -= s * t.csc;
  }
  return m;
}

WeylSample graph_weyl(const MetricGraph& g, Complex lambda) {
  const Matrix minv = graph_weyl_inverse(g, lambda);
  Eigen::JacobiSVD<Matrix> svd(minv, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || sv(0) / smin > 1e12)
    throw Error("M(lambda)^{-1} is singular -- near a Kirchhoff eigenvalue");
  Vector inv_sv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) inv_sv(i) = Complex(1.0 / sv(i), 0.0);
  WeylSample out;
  out.lambda = lambda;
  out.matrix = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
  out.norm = 1.0 / smin;
  return out;
}

// ---------------------------------------------------------------------------
// PointLattice
// ---------------------------------------------------------------------------

PointLattice::PointLattice(std::vector<double> points, double spacing_d,
                           WindowPolicy window)
    : points_(std::move(points)), spacing_d_(spacing_d), window_(window) {
  if (points_.empty()) throw Error("lattice window must be non-empty");
  if (!(spacing_d_ > 0.0)) throw Error("lattice spacing d must be positive");
  for (double x : points_)
    if (!std::isfinite(x)) throw Error("lattice point must be finite");
  for (size_t i = 1; i < points_.size(); ++i)
    if (points_[i] - points_[i - 1] < spacing_d_ - 1e-12)
      throw Error("lattice gaps must be >= spacing d");
  if (window_.truncated_infinite && !(window_.tail_tol > 0.0))
    throw Error("truncated window needs tail_tol > 0");
}

PointLattice PointLattice::equispaced(int m, double d, WindowPolicy window) {
  if (m < 1) throw Error("lattice window must be non-empty");
  std::vector<double> pts(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) pts[static_cast<size_t>(i)] = i * d;
  return PointLattice(std::move(pts), d, window);
}

double PointLattice::truncation_tail(Complex lambda) const {
  const Complex s = sqrt_upper(lambda);
  const double im = s.imag();
  if (!(im > 0.0)) return std::numeric_limits<double>::infinity();
  const int m = size();
  const int hops = m - (m - 1) / 2; // centre to first omitted point
  const double q = std::exp(-im * spacing_d_);
  const double tail_sum = std::pow(q, hops) / (1.0 - q);
  return tail_sum / std::abs(s); // 2 * tail_sum * 1/(2 sqrt|lambda|)
}

WeylSample lattice_weyl(const PointLattice& p, Complex lambda) {
  require_finite(lambda, "lambda");
  const Complex s = sqrt_upper(lambda);
  if (!(s.imag() > 0.0))
    throw Error("lattice_weyl: lambda lies on the cut [0, inf)");
  if (p.window().truncated_infinite &&
      p.truncation_tail(lambda) > p.window().tail_tol)
    throw Error("lattice window too small for tail_tol at this lambda");
  const int m = p.size();
  const Complex pref = Complex(0.0, 1.0) / (2.0 * s);
  Matrix mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex v =
          pref * std::exp(Complex(0.0, 1.0) * s *
                          std::abs(p.points()[static_cast<size_t>(i)] -
                                   p.points()[static_cast<size_t>(j)]));
      mat(i, j) = v;
      mat(j, i) = v;
    }
  WeylSample out;
  out.lambda = lambda;
  out.norm = core::spectral_norm(mat);
  out.matrix = std::move(mat);
  return out;
}

Complex lattice_gamma_apply(const PointLattice& p, const Vector& xi, double x,
                            Complex lambda) {
  if (xi.size() != p.size()) throw Error("gamma: boundary vector size mismatch");
  const Complex s = sqrt_upper(lambda);
  if (!(s.imag() > 0.0))
    throw Error("lattice_gamma_apply: lambda lies on the cut [0, inf)");
  Complex acc(0.0, 0.0);
  for (int n = 0; n < p.size(); ++n)
    acc += std::exp(Complex(0.0, 1.0) * s *
                    std::abs(p.points()[static_cast<size_t>(n)] - x)) *
           xi(n);
  return Complex(0.0, -1.0) / (2.0 * s) * acc;
}

double schur_bound_line(double d, Complex lambda) {
  if (!(d > 0.0)) throw Error("schur_bound_line: d must be positive");
  const Complex s = sqrt_upper(lambda);
  if (!(s.imag() > 0.0))
    throw Error("schur_bound_line: lambda lies on the cut [0, inf)");
  return 1.0 / (std::tanh(0.5 * d * s.imag()) * 2.0 * std::abs(s));
}

double j0_sector_constant(double d, double w0, double nu) {
  if (!(d > 0.0)) throw Error("j0: d must be positive");
  if (!(w0 < 0.0)) throw Error("j0: w0 must be negative");
  if (!(nu > 0.0 && nu < pi)) throw Error("j0: nu must be in (0, pi)");
  return 0.5 * d * std::sqrt(-w0 * std::sin(nu)) * std::sin(0.5 * nu);
}

// ---------------------------------------------------------------------------
// Scalar profiles
// ---------------------------------------------------------------------------

ScalarProfile ScalarProfile::star(int edges) {
  if (edges < 1) throw Error("star profile needs at least one edge");
  return {Kind::StarGraph, edges, 0.0};
}

ScalarProfile ScalarProfile::kac(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw Error("kac profile needs alpha in (0, 1/2]");
  return {Kind::KacMeasure, 0, alpha};
}

double ScalarProfile::spectrum_base() const {
  return kind == Kind::KacMeasure ? std::numbers::e : 0.0;
}

double scalar_profile_norm(const ScalarProfile& s, Complex lambda) {
  require_finite(lambda, "lambda");
  const double base = s.spectrum_base();
  const double dist = dist_to_halfline(lambda, base);
  if (dist <= 0.0) throw Error("lambda lies on the profile's cut");
  switch (s.kind) {
    case ScalarProfile::Kind::HalfSpaceRobin:
      return 1.0 / std::sqrt(dist);
    case ScalarProfile::Kind::HyperplaneDelta:
      return 0.5 / std::sqrt(dist);
    case ScalarProfile::Kind::StarGraph:
      return 1.0 / (s.star_edges * std::sqrt(std::abs(lambda)));
    case ScalarProfile::Kind::KacMeasure:
      return std::abs(kac_weyl_eval(s.alpha, lambda));
  }
  throw Error("unreachable profile kind");
}

Complex scalar_profile_value(const ScalarProfile& s, Complex lambda) {
  switch (s.kind) {
    case ScalarProfile::Kind::StarGraph: {
      const Complex root = sqrt_upper(lambda);
      if (root == Complex(0.0, 0.0)) throw Error("star profile undefined at 0");
      return Complex(0.0, 1.0) / (double(s.star_edges) * root);
    }
    case ScalarProfile::Kind::KacMeasure:
      return kac_weyl_eval(s.alpha, lambda);
    default:
      throw Error("profile has no scalar Weyl value, only a norm");
  }
}

Complex kac_weyl_eval(double alpha, Complex lambda) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw Error("kac_weyl_eval: alpha must be in (0, 1/2]");
  require_finite(lambda, "lambda");
  if (dist_to_halfline(lambda, std::numbers::e) <= 0.0)
    throw Error("kac_weyl_eval: lambda lies on the cut [e, inf)");

  // Substitute t = e^u: integrand e^{2 alpha u} / ((e^u - lambda) u^2) on
  // [1, U].  U is chosen so the neglected lambda-dependence of the tail is
  // below 1e-12 relative; the pure power-log tail is added analytically.
  const double abs_l = std::abs(lambda);
  const double upper =
      std::min(600.0, std::max({std::log(std::max(abs_l, 1.0)) + 30.0,
                                std::log(1e6), 40.0}));
  const auto integrand = [&](double u) -> Complex {
    const double eu = std::exp(u);
    return std::exp(2.0 * alpha * u) / ((eu - lambda) * (u * u));
  };
  const Complex body = core::adaptive_gk15(integrand, 1.0, upper, 1e-10);

  // Tail: integral_U^inf e^{-(1-2 alpha) u} u^{-2} du.
  const double a = 1.0 - 2.0 * alpha;
  double tail;
  if (a == 0.0) {
    tail = 1.0 / upper;
  } else {
    tail = std::exp(-a * upper) / upper - a * core::expint_e1(a * upper);
  }
  return body + tail;
}

// ---------------------------------------------------------------------------
// WeylModel
// ---------------------------------------------------------------------------

WeylModel::WeylModel(MetricGraph g)
    : body_(std::move(g)),
      boundary_dim_(std::get<MetricGraph>(body_).vertex_count()),
      spectrum_base_(0.0) {}

WeylModel::WeylModel(PointLattice p)
    : body_(std::move(p)),
      boundary_dim_(std::get<PointLattice>(body_).size()),
      spectrum_base_(0.0) {}

WeylModel::WeylModel(ScalarProfile s)
    : body_(s), boundary_dim_(1), spectrum_base_(s.spectrum_base()) {}

bool WeylModel::has_matrix() const {
  if (const auto* s = profile()) return s->has_matrix();
  return true;
}

bool WeylModel::on_cut(Complex lambda, double margin) const {
  return lambda.real() >= spectrum_base_ - margin &&
         std::abs(lambda.imag()) <= margin;
}

WeylSample WeylModel::weyl(Complex lambda) const {
  if (const auto* g = graph()) return graph_weyl(*g, lambda);
  if (const auto* p = lattice()) return lattice_weyl(*p, lambda);
  const auto& s = *profile();
  WeylSample out;
  out.lambda = lambda;
  if (s.has_matrix()) {
    Matrix m(1, 1);
    m(0, 0) = scalar_profile_value(s, lambda);
    out.norm = std::abs(m(0, 0));
    out.matrix = std::move(m);
  } else {
    out.norm = scalar_profile_norm(s, lambda);
  }
  return out;
}

double WeylModel::weyl_norm(Complex lambda) const {
  if (const auto* s = profile()) return scalar_profile_norm(*s, lambda);
  return weyl(lambda).norm;
}

std::vector<double> WeylModel::singular_points(double up_to) const {
  if (const auto* g = graph()) return g->dirichlet_points(up_to);
  return {};
}

std::string WeylModel::kind_name() const {
  if (graph()) return "graph";
  if (lattice()) return "lattice";
  switch (profile()->kind) {
    case ScalarProfile::Kind::HalfSpaceRobin: return "half_space";
    case ScalarProfile::Kind::HyperplaneDelta: return "hyperplane_delta";
    case ScalarProfile::Kind::StarGraph: return "star";
    case ScalarProfile::Kind::KacMeasure: return "kac";
  }
  return "unknown";
}

} // namespace weylscope::models
