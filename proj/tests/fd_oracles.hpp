// Test-only finite-difference oracles, independent of the secular-function
// path under test.  The line and graph Laplacians are discretized with the
// standard second-order stencil; delta couplings enter through the vertex
// row (2 f0 - f-1 - f+1)/h^2 - (b/h) f0.

#ifndef WEYLSCOPE_TESTS_FD_ORACLES_HPP
#define WEYLSCOPE_TESTS_FD_ORACLES_HPP

#include "weylscope/models.hpp"
#include "weylscope/types.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <vector>

namespace weylscope::testsupport {

// Smallest eigenvalue of the real symmetric tridiagonal FD matrix for
// -u'' - (alpha) delta(x) on [-L, L] with Dirichlet ends, via Sturm bisection.
inline double fd_line_delta_ground_state(double alpha, double h, double L) {
  const int n_half = static_cast<int>(std::lround(L / h));
  const int n = 2 * n_half - 1; // interior nodes including x = 0
  const int mid = n_half - 1;
  std::vector<double> diag(static_cast<size_t>(n), 2.0 / (h * h));
  diag[static_cast<size_t>(mid)] -= alpha / h;
  const double off = -1.0 / (h * h);

  // Sturm count of eigenvalues below x.
  auto count_below = [&](double x) {
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
      const double denom = (q == 0.0) ? 1e-300 : q;
      q = diag[static_cast<size_t>(i)] - x - off * off / denom;
      if (q < 0.0) ++count;
    }
    return count;
  };

  double lo = -alpha * alpha, hi = 0.0;
  while (count_below(lo) > 0) lo *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid_x = 0.5 * (lo + hi);
    (count_below(mid_x) >= 1 ? hi : lo) = mid_x;
  }
  return 0.5 * (lo + hi);
}

/// Richardson-extrapolated ground state (h and h/2, second-order stencil).
inline double fd_line_delta_richardson(double alpha, double h, double L) {
  const double e_h = fd_line_delta_ground_state(alpha, h, L);
  const double e_h2 = fd_line_delta_ground_state(alpha, 0.5 * h, L);
  return (4.0 * e_h2 - e_h) / 3.0;
}

// Complex tridiagonal inverse iteration (Thomas solves) for the FD matrix of
// a single complex delta coupling; returns the eigenvalue nearest the shift.
inline Complex fd_line_delta_complex(Complex alpha, double h, double L,
                                     Complex shift) {
  const int n_half = static_cast<int>(std::lround(L / h));
  const int n = 2 * n_half - 1;
  const int mid = n_half - 1;
  std::vector<Complex> diag(static_cast<size_t>(n), Complex(2.0 / (h * h), 0));
  diag[static_cast<size_t>(mid)] -= alpha / h;
  const Complex off(-1.0 / (h * h), 0.0);

  std::vector<Complex> v(static_cast<size_t>(n), Complex(1.0, 0.3));
  std::vector<Complex> c(static_cast<size_t>(n)), dvec(static_cast<size_t>(n));
  for (int iter = 0; iter < 80; ++iter) {
    // Thomas solve (T - shift) y = v
    c[0] = off / (diag[0] - shift);
    dvec[0] = v[0] / (diag[0] - shift);
    for (int i = 1; i < n; ++i) {
      const Complex denom = diag[static_cast<size_t>(i)] - shift -
                            off * c[static_cast<size_t>(i - 1)];
      c[static_cast<size_t>(i)] = off / denom;
      dvec[static_cast<size_t>(i)] =
          (v[static_cast<size_t>(i)] - off * dvec[static_cast<size_t>(i - 1)]) /
          denom;
    }
    v[static_cast<size_t>(n - 1)] = dvec[static_cast<size_t>(n - 1)];
    for (int i = n - 2; i >= 0; --i)
      v[static_cast<size_t>(i)] = dvec[static_cast<size_t>(i)] -
                                  c[static_cast<size_t>(i)] *
                                      v[static_cast<size_t>(i + 1)];
    double norm = 0.0;
    for (const Complex& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (Complex& x : v) x /= norm;
  }
  // Rayleigh quotient with the tridiagonal application.
  Complex num(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    Complex tv = diag[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    if (i > 0) tv += off * v[static_cast<size_t>(i - 1)];
    if (i + 1 < n) tv += off * v[static_cast<size_t>(i + 1)];
    num += std::conj(v[static_cast<size_t>(i)]) * tv;
  }
  return num; // v is normalized
}

/// FD discretization of a compact metric graph with diagonal delta couplings
/// B = diag(b_v); inverse iteration via SparseLU at the given shift.
inline Complex fd_graph_eigenvalue(const models::MetricGraph& g,
                                   const std::vector<Complex>& b_diag,
                                   double h, Complex shift) {
  using Trip = Eigen::Triplet<Complex>;
  const int nv = g.vertex_count();

  // Unknowns: vertices first, then interior nodes per edge.
  int total = nv;
  std::vector<int> edge_offset, edge_nodes;
  std::vector<double> edge_h;
  for (const auto& e : g.edges()) {
    const int n_e = std::max(2, static_cast<int>(std::lround(e.length / h)));
    edge_offset.push_back(total);
    edge_nodes.push_back(n_e - 1); // interior nodes
    edge_h.push_back(e.length / n_e);
    total += n_e - 1;
  }

  std::vector<Trip> trips;
  std::vector<double> vertex_mass(static_cast<size_t>(nv), 0.0);
  std::vector<Complex> vertex_row(static_cast<size_t>(nv), Complex(0.0, 0.0));

  for (size_t ei = 0; ei < g.edges().size(); ++ei) {
    const auto& e = g.edges()[ei];
    const int m = edge_nodes[ei];
    const double he = edge_h[ei];
    const int off = edge_offset[ei];
    const double w = 1.0 / (he * he);
    auto node = [&](int k) { // k in 0..m+1; 0 and m+1 are the vertices
      if (k == 0) return e.from;
      if (k == m + 1) return e.to;
      return off + k - 1;
    };
    for (int k = 1; k <= m; ++k) {
      trips.emplace_back(node(k), node(k), Complex(2.0 * w, 0.0));
      trips.emplace_back(node(k), node(k - 1), Complex(-w, 0.0));
      trips.emplace_back(node(k), node(k + 1), Complex(-w, 0.0));
    }
    // vertex coupling rows accumulate (f_v - f_first)/h_e and mass h_e/2
    for (const int v : {e.from, e.to}) {
      const int first = v == e.from ? node(1) : node(m);
      vertex_mass[static_cast<size_t>(v)] += 0.5 * he;
      vertex_row[static_cast<size_t>(v)] += Complex(1.0 / he, 0.0);
      trips.emplace_back(v, first, Complex(-1.0 / he, 0.0));
    }
  }
  for (int v = 0; v < nv; ++v)
    trips.emplace_back(v, v, vertex_row[static_cast<size_t>(v)] -
                                 b_diag[static_cast<size_t>(v)]);

  // Vertex rows pick up 1/mass so the problem is a standard eigenproblem.
  std::vector<Trip> scaled;
  scaled.reserve(trips.size());
  for (const auto& t : trips) {
    double f = 1.0;
    if (t.row() < nv) f = 1.0 / vertex_mass[static_cast<size_t>(t.row())];
    scaled.emplace_back(t.row(), t.col(), t.value() * f);
  }
  Eigen::SparseMatrix<Complex> a(total, total);
  a.setFromTriplets(scaled.begin(), scaled.end());

  Eigen::SparseMatrix<Complex> shifted = a;
  for (int i = 0; i < total; ++i) shifted.coeffRef(i, i) -= shift;
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu(shifted);
  if (lu.info() != Eigen::Success)
    throw Error("fd_graph_eigenvalue: factorization failed");

  Vector v = Vector::Constant(total, Complex(1.0, 0.2));
  v.normalize();
  for (int iter = 0; iter < 60; ++iter) {
    v = lu.solve(v);
    v.normalize();
  }
  return v.dot(a * v); // Rayleigh quotient; v is normalized
}

} // namespace weylscope::testsupport

#endif
