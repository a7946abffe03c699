#ifndef WEYLSCOPE_MODELS_HPP
#define WEYLSCOPE_MODELS_HPP

#include "weylscope/types.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace weylscope::models {

/// One evaluation of the Weyl function.  For norm-only profiles the matrix
/// is absent; otherwise norm equals the spectral norm of the matrix.
struct WeylSample {
  Complex lambda;
  std::optional<Matrix> matrix;
  double norm = 0.0;
};

// ---------------------------------------------------------------------------
// Metric graphs
// ---------------------------------------------------------------------------

struct GraphEdge {
  int from = 0;          // vertex index (0-based)
  int to = -1;           // vertex index, or -1 for an infinite edge
  double length = 0.0;   // > 0; ignored for infinite edges
  bool infinite = false;

  static GraphEdge finite(int a, int b, double len) { return {a, b, len, false}; }
  static GraphEdge to_infinity(int a) { return {a, -1, 0.0, true}; }
};

/// Finite metric graph without loops; infinite edges are rays attached to a
/// vertex.  Vertex couplings live on C^{|V|}.
class MetricGraph {
public:
  MetricGraph(int vertex_count, std::vector<GraphEdge> edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int degree(int v) const { return degrees_[static_cast<size_t>(v)]; }
  bool compact() const { return compact_; }

  /// Dirichlet edge eigenvalues (k pi / L(e))^2 up to the given bound,
  /// ascending and deduplicated.  These are the poles of M(lambda).
  std::vector<double> dirichlet_points(double up_to) const;

private:
  int vertex_count_;
  std::vector<GraphEdge> edges_;
  std::vector<int> degrees_;
  bool compact_;
};

/// Assembles M(lambda)^{-1} from the edge Dirichlet-to-Neumann data:
/// diagonal sqrt(l) * sum cot(sqrt(l) L(e)) - i sqrt(l) * #infinite edges,
/// off-diagonal -sqrt(l)/sin(sqrt(l) L(e)) summed over parallel edges.
/// Throws near Dirichlet singularities (|sin(sqrt(l) L(e))| < 1e-12).
Matrix graph_weyl_inverse(const MetricGraph& g, Complex lambda);

/// M(lambda) itself, by inversion; throws when the inverse is singular or
/// has condition number above 1e12 (proximity to a Kirchhoff eigenvalue).
WeylSample graph_weyl(const MetricGraph& g, Complex lambda);

// ---------------------------------------------------------------------------
// Point-interaction lattices on the real line
// ---------------------------------------------------------------------------

struct WindowPolicy {
  bool truncated_infinite = false;
  double tail_tol = 1e-10;

  static WindowPolicy exact() { return {false, 0.0}; }
  static WindowPolicy truncated(double tol) { return {true, tol}; }
};

/// Strictly increasing finite window x_1 < ... < x_m of interaction points
/// with global spacing infimum d > 0.
class PointLattice {
public:
  PointLattice(std::vector<double> points, double spacing_d,
               WindowPolicy window = WindowPolicy::exact());

  const std::vector<double>& points() const { return points_; }
  double spacing() const { return spacing_d_; }
  const WindowPolicy& window() const { return window_; }
  int size() const { return static_cast<int>(points_.size()); }

  /// Equally spaced lattice {0, d, ..., (m-1) d}.
  static PointLattice equispaced(int m, double d,
                                 WindowPolicy window = WindowPolicy::exact());

  /// Schur-series tail of the omitted points beyond the window as seen from
  /// its centre: 2 * sum_{k > floor((m-1)/2)} e^{-Im sqrt(lambda) d k},
  /// scaled by the kernel prefactor 1/(2 sqrt|lambda|).
  double truncation_tail(Complex lambda) const;

private:
  std::vector<double> points_;
  double spacing_d_;
  WindowPolicy window_;
};

/// M(lambda) with entries (i / (2 sqrt(l))) e^{i sqrt(l) |x_n - x_m|};
/// requires lambda off [0, inf).  For a truncated-infinite window the
/// Schur tail of the omitted points must be below tail_tol, otherwise an
/// error asks for a larger window.
WeylSample lattice_weyl(const PointLattice& p, Complex lambda);

/// gamma-field applied to a boundary vector, evaluated at x:
/// (-i / (2 sqrt(l))) sum_n e^{i sqrt(l) |x_n - x|} xi_n.
Complex lattice_gamma_apply(const PointLattice& p, const Vector& xi, double x,
                            Complex lambda);

/// Schur-test norm bound coth((d/2) Im sqrt(l)) / (2 sqrt|l|).
double schur_bound_line(double d, Complex lambda);

/// J_0(w_0, nu) = (d/2) sqrt(|w_0| sin nu) sin(nu/2): the infimum of
/// (d/2) Im sqrt(lambda) over the exterior sector U_{w0,nu}.
double j0_sector_constant(double d, double w0, double nu);

// ---------------------------------------------------------------------------
// Closed-form scalar profiles
// ---------------------------------------------------------------------------

struct ScalarProfile {
  enum class Kind { HalfSpaceRobin, HyperplaneDelta, StarGraph, KacMeasure };

  Kind kind;
  int star_edges = 0;  // StarGraph: number of infinite edges, >= 1
  double alpha = 0.0;  // KacMeasure: alpha in (0, 1/2]

  static ScalarProfile half_space() { return {Kind::HalfSpaceRobin, 0, 0.0}; }
  static ScalarProfile hyperplane() { return {Kind::HyperplaneDelta, 0, 0.0}; }
  static ScalarProfile star(int edges);
  static ScalarProfile kac(double alpha);

  /// Left endpoint of the reference spectrum ([0,inf), or [e,inf) for Kac).
  double spectrum_base() const;
  /// True when the profile has an actual scalar M(lambda), not just a norm.
  bool has_matrix() const {
    return kind == Kind::StarGraph || kind == Kind::KacMeasure;
  }
};

/// ||M(lambda)|| for the profile; throws on the respective cut.
double scalar_profile_norm(const ScalarProfile& s, Complex lambda);

/// Scalar M(lambda) for profiles that have one (star graph: i/(n sqrt(l));
/// Kac measure: the Stieltjes integral).
Complex scalar_profile_value(const ScalarProfile& s, Complex lambda);

/// Stieltjes transform of the Kac measure,
///   integral_e^inf (t - lambda)^{-1} t^{2 alpha - 1} (ln t)^{-2} dt,
/// to relative accuracy 1e-8 (adaptive Gauss-Kronrod plus analytic tail).
Complex kac_weyl_eval(double alpha, Complex lambda);

// ---------------------------------------------------------------------------
// Tagged model union
// ---------------------------------------------------------------------------

class WeylModel {
public:
  explicit WeylModel(MetricGraph g);
  explicit WeylModel(PointLattice p);
  explicit WeylModel(ScalarProfile s);

  int boundary_dim() const { return boundary_dim_; }
  /// Left endpoint of sigma(A0); the excluded half-line is [base, inf).
  double spectrum_base() const { return spectrum_base_; }
  bool has_matrix() const;

  const MetricGraph* graph() const { return std::get_if<MetricGraph>(&body_); }
  const PointLattice* lattice() const { return std::get_if<PointLattice>(&body_); }
  const ScalarProfile* profile() const { return std::get_if<ScalarProfile>(&body_); }

  /// True when lambda is on (or within margin of) the excluded half-line.
  bool on_cut(Complex lambda, double margin = 0.0) const;

  WeylSample weyl(Complex lambda) const;
  double weyl_norm(Complex lambda) const;

  /// Poles of M on the positive axis within [0, up_to] (graphs only).
  std::vector<double> singular_points(double up_to) const;

  std::string kind_name() const;

private:
  std::variant<MetricGraph, PointLattice, ScalarProfile> body_;
  int boundary_dim_;
  double spectrum_base_;
};

} // namespace weylscope::models

#endif
