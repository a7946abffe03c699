#include "weylscope/quadrature.hpp"

#include <algorithm>
#include <vector>

namespace weylscope::core {

namespace {

// 15-point Kronrod abscissae on [-1,1] (non-negative half) and weights,
// with the embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr double kron_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b;
  Complex value;
  double err;
};

Panel eval_panel(const std::function<Complex(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex k15(0.0, 0.0), g7(0.0, 0.0);
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kron_x[i];
    const Complex fv = (i == 7) ? f(mid) : f(mid - dx) + f(mid + dx);
    k15 += kron_w[i] * fv;
    if (i % 2 == 1) g7 += gauss_w[i / 2] * fv; // odd indices carry the G7 rule
  }
  k15 *= half;
  g7 *= half;
  return {a, b, k15, std::abs(k15 - g7)};
}

} // namespace

Complex adaptive_gk15(const std::function<Complex(double)>& f, double a,
                      double b, double rel_tol, int max_intervals) {
  if (!(b > a)) throw Error("adaptive_gk15: empty interval");
  std::vector<Panel> panels;
  panels.push_back(eval_panel(f, a, b));
  for (int it = 0; it < max_intervals; ++it) {
    Complex total(0.0, 0.0);
    double err = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    if (err <= rel_tol * std::abs(total) + 1e-300) return total;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    panels[worst] = eval_panel(f, p.a, mid);
    panels.push_back(eval_panel(f, mid, p.b));
  }
  throw Error("adaptive_gk15: quadrature budget exhausted");
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw Error("expint_e1: requires x > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    constexpr double euler_gamma = 0.5772156649015328606;
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 40; ++k) {
      term *= -x / k;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return -euler_gamma - std::log(x) + sum;
  }
  // Modified Lentz continued fraction: E1(x) = e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + ...))))
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

} // namespace weylscope::core
