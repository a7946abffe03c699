#include "weylscope/secular.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace weylscope::solver {

namespace {

constexpr double contour_floor = 1e-12;
constexpr double phase_step_limit = std::numbers::pi / 2;

struct Box {
  double re_lo, re_hi, im_lo, im_hi;
  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  double diam() const { return std::hypot(width(), height()); }
  Complex center() const {
    return Complex(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi));
  }
  std::vector<Complex> corners() const {
    return {Complex(re_lo, im_lo), Complex(re_hi, im_lo),
            Complex(re_hi, im_hi), Complex(re_lo, im_hi)};
  }
};

} // namespace

SecularFunction::SecularFunction(const WeylModel& model, BoundaryOperator b)
    : model_(&model), b_(std::move(b)) {
  if (!model.has_matrix())
    throw Error("secular function needs a matrix-valued model");
  if (b_.dim() != model.boundary_dim())
    throw Error("boundary operator dimension does not match the model");
}

Complex SecularFunction::operator()(Complex lambda) const {
  const std::pair<double, double> key{lambda.real(), lambda.imag()};
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const auto sample = model_->weyl(lambda);
  const Matrix a =
      Matrix::Identity(b_.dim(), b_.dim()) - b_.matrix * (*sample.matrix);
  const Complex det = Eigen::PartialPivLU<Matrix>(a).determinant();
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(key, det);
    ++evals_;
  }
  return det;
}

int winding_count(const SecularFunction& d, std::vector<Complex> contour,
                  int max_samples) {
  if (contour.size() < 3) throw Error("winding_count: degenerate contour");
  if (contour.front() != contour.back()) contour.push_back(contour.front());

  struct Node {
    Complex z;
    double phase;
  };
  auto eval = [&](Complex z) -> Node {
    const Complex v = d(z);
    if (std::abs(v) < contour_floor)
      throw Error("winding_count: |D| below 1e-12 on the contour");
    return {z, std::arg(v)};
  };

  int samples = 0;
  double total = 0.0;
  auto wrap = [](double a) {
    while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    while (a < -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
  };

  // Walk each edge, bisecting until consecutive phases differ by < pi/2.
  std::function<double(const Node&, const Node&, int)> walk =
      [&](const Node& a, const Node& b, int depth) -> double {
    const double step = wrap(b.phase - a.phase);
    if (std::abs(step) < phase_step_limit) return step;
    if (depth > 48 || samples > max_samples)
      throw BudgetExhausted("winding_count: phase refinement budget exhausted");
    ++samples;
    const Node mid = eval(0.5 * (a.z + b.z));
    return walk(a, mid, depth + 1) + walk(mid, b, depth + 1);
  };

  Node prev = eval(contour[0]);
  const Node first = prev;
  for (size_t i = 1; i + 1 < contour.size(); ++i) {
    const Node next = eval(contour[i]);
    total += walk(prev, next, 0);
    prev = next;
  }
  total += walk(prev, first, 0);

  const double turns = total / (2.0 * std::numbers::pi);
  const long long rounded = std::llround(turns);
  if (std::abs(turns - double(rounded)) > 0.25)
    throw Error("winding_count: phase total is not close to an integer");
  return static_cast<int>(rounded);
}

namespace {

// Clip a rectangle against the forbidden strip
// {Re z > base - margin, |Im z| < margin}; emits up to three sub-boxes.
std::vector<Box> clip_against_cut(const Box& b, double base, double margin,
                                  std::vector<std::string>* warnings) {
  const double strip_left = base - margin;
  if (b.re_hi <= strip_left || b.im_lo >= margin || b.im_hi <= -margin)
    return {b};
  std::vector<Box> out;
  if (b.re_lo < strip_left)
    out.push_back({b.re_lo, strip_left, b.im_lo, b.im_hi});
  if (b.im_hi > margin)
    out.push_back({std::max(b.re_lo, strip_left), b.re_hi,
                   std::max(b.im_lo, margin), b.im_hi});
  if (b.im_lo < -margin)
    out.push_back({std::max(b.re_lo, strip_left), b.re_hi, b.im_lo,
                   std::min(b.im_hi, -margin)});
  if (warnings)
    warnings->push_back("search rectangle clipped to keep clearance from the "
                        "essential spectrum");
  std::erase_if(out, [](const Box& x) {
    return !(x.width() > 0.0) || !(x.height() > 0.0);
  });
  return out;
}

struct WindingOutcome {
  bool ok = false;
  int winding = 0;
  std::string error;
};

WindingOutcome try_winding(const SecularFunction& d, const Box& box,
                           int max_samples) {
  WindingOutcome out;
  try {
    out.winding = winding_count(d, box.corners(), max_samples);
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

// Split fractions tried in turn when a child contour runs through a zero.
constexpr double split_fractions[3] = {0.5, 0.53173, 0.46351};

std::array<Box, 4> quadrisect(const Box& b, double f) {
  const double rm = b.re_lo + f * b.width();
  const double im = b.im_lo + f * b.height();
  return {Box{b.re_lo, rm, b.im_lo, im}, Box{rm, b.re_hi, b.im_lo, im},
          Box{b.re_lo, rm, im, b.im_hi}, Box{rm, b.re_hi, im, b.im_hi}};
}

struct NewtonResult {
  bool converged = false;
  Complex lambda;
  double residual = 0.0;
};

NewtonResult newton_polish(const SecularFunction& d, Complex start,
                           double scale, double target) {
  NewtonResult res;
  Complex z = start;
  Complex prev_z = start;
  Complex prev_f;
  bool have_prev = false;
  for (int it = 0; it < 60; ++it) {
    const Complex f = d(z);
    if (!is_finite(f)) return res;
    if (std::abs(f) <= target) {
      res.converged = true;
      res.lambda = z;
      res.residual = std::abs(f);
      return res;
    }
    const double h = 1e-6 * (1.0 + std::abs(z));
    Complex deriv = (d(z + h) - d(z - h)) / (2.0 * h);
    if (std::abs(deriv) < 1e-300) {
      // secant fallback on derivative underflow
      if (!have_prev || f == prev_f) return res;
      deriv = (f - prev_f) / (z - prev_z);
    }
    prev_z = z;
    prev_f = f;
    have_prev = true;
    const Complex step = f / deriv;
    if (!is_finite(step) || std::abs(step) > 64.0 * scale) return res;
    z -= step;
  }
  return res;
}

} // namespace

SpectrumReport find_eigenvalues(const WeylModel& model,
                                const BoundaryOperator& b, Complex rect_lo,
                                Complex rect_hi, const SolverOptions& opt) {
  if (!(rect_lo.real() < rect_hi.real() && rect_lo.imag() < rect_hi.imag()))
    throw Error("find_eigenvalues: empty rectangle");
  SpectrumReport report;
  report.rect_lo = rect_lo;
  report.rect_hi = rect_hi;
  report.tol = opt.tol;
  report.seed = opt.seed;

  const SecularFunction d(model, b);
  const Box whole{rect_lo.real(), rect_hi.real(), rect_lo.imag(),
                  rect_hi.imag()};
  std::vector<Box> wave = clip_against_cut(whole, model.spectrum_base(),
                                           opt.cut_margin, &report.warnings);
  if (wave.size() == 1 && wave[0].re_lo == whole.re_lo &&
      wave[0].re_hi == whole.re_hi && wave[0].im_lo == whole.im_lo)
    report.warnings.clear();

  std::vector<Eigenvalue> found;
  const auto near_box = [](const Box& box, Complex z) {
    const double gr = box.width(), gi = box.height();
    return z.real() >= box.re_lo - gr && z.real() <= box.re_hi + gr &&
           z.imag() >= box.im_lo - gi && z.imag() <= box.im_hi + gi;
  };

#ifdef _OPENMP
  const int n_threads = std::max(1, opt.threads);
#endif

  while (!wave.empty()) {
    if (report.boxes_processed > opt.max_boxes)
      throw BudgetExhausted("find_eigenvalues: box budget exhausted");

    // Winding numbers for the whole wave; boxes are independent.
    std::vector<WindingOutcome> outcome(wave.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_threads) if (n_threads > 1)
#endif
    for (size_t i = 0; i < wave.size(); ++i)
      outcome[i] = try_winding(d, wave[i], opt.max_contour_samples);

    std::vector<Box> next;
    for (size_t i = 0; i < wave.size(); ++i) {
      const Box& box = wave[i];
      ++report.boxes_processed;
      WindingOutcome w = outcome[i];

      // A zero sitting on the contour: retry with shifted split points by
      // perturbing the box a whisker outward (children overlap slightly;
      // duplicates are merged at the end).
      if (!w.ok) {
        Box grown = box;
        for (int attempt = 0; attempt < 3 && !w.ok; ++attempt) {
          const double dr = box.width() * 0.013 * (attempt + 1);
          const double di = box.height() * 0.013 * (attempt + 1);
          grown = Box{box.re_lo - dr, box.re_hi + dr, box.im_lo - di,
                      box.im_hi + di};
          w = try_winding(d, grown, opt.max_contour_samples);
        }
        if (!w.ok) {
          report.warnings.push_back("winding failed near box centre " +
                                    std::to_string(box.center().real()) + "," +
                                    std::to_string(box.center().imag()) + ": " +
                                    w.error);
          continue;
        }
      }
      if (w.winding == 0) continue;
      if (w.winding < 0) {
        // zeros-minus-poles went negative: a pole of D dominates here
        if (box.diam() < 1e-5) {
          report.warnings.push_back(
              "indeterminate at Dirichlet point near " +
              std::to_string(box.center().real()));
          continue;
        }
        for (const Box& c : quadrisect(box, split_fractions[0]))
          next.push_back(c);
        continue;
      }

      // Polish as soon as the box is small enough for Newton to be local;
      // a polished zero that stays near its box is isolated by the winding.
      const double scale = 1.0 + std::abs(box.center());
      if (box.diam() < 0.05 * scale) {
        const NewtonResult nr =
            newton_polish(d, box.center(), std::max(box.diam(), opt.tol), opt.tol);
        if (nr.converged && near_box(box, nr.lambda)) {
          found.push_back({nr.lambda, w.winding, nr.residual});
          continue;
        }
        if (box.diam() < 10.0 * std::max(opt.tol, 1e-13)) {
          const Complex c = box.center();
          found.push_back({c, w.winding, std::abs(d(c))});
          report.warnings.push_back("eigenvalue accepted from box centre "
                                    "without Newton convergence");
          continue;
        }
      }
      for (const Box& c : quadrisect(box, split_fractions[0]))
        next.push_back(c);
    }
    wave = std::move(next);
  }

  // Merge duplicates from overlapping retry boxes.
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b2) {
    return std::make_pair(a.lambda.real(), a.lambda.imag()) <
           std::make_pair(b2.lambda.real(), b2.lambda.imag());
  });
  for (const auto& ev : found) {
    bool merged = false;
    for (auto& kept : report.eigenvalues) {
      if (std::abs(kept.lambda - ev.lambda) <=
          std::max(20.0 * opt.tol, 1e-9 * (1.0 + std::abs(ev.lambda)))) {
        if (ev.residual < kept.residual) {
          kept.lambda = ev.lambda;
          kept.residual = ev.residual;
        }
        kept.multiplicity = std::max(kept.multiplicity, ev.multiplicity);
        merged = true;
        break;
      }
    }
    if (!merged) report.eigenvalues.push_back(ev);
  }
  report.evaluations = d.evaluations();
  return report;
}

Complex krein_resolvent_kernel(const models::PointLattice& p,
                               const BoundaryOperator& b, Complex lambda,
                               double x, double y) {
  const auto sample = models::lattice_weyl(p, lambda);
  const Matrix& m = *sample.matrix;
  const Matrix a = Matrix::Identity(m.rows(), m.cols()) - b.matrix * m;
  {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0))
      throw Error("krein kernel: I - B M(lambda) is singular -- lambda is an "
                  "eigenvalue");
  }
  const Matrix k = Eigen::PartialPivLU<Matrix>(a).solve(b.matrix);

  const Complex s = core::sqrt_upper(lambda);
  const auto g0 = [&](double u, double v) {
    return Complex(0.0, 1.0) / (2.0 * s) *
           std::exp(Complex(0.0, 1.0) * s * std::abs(u - v));
  };
  Complex acc = g0(x, y);
  const auto& pts = p.points();
  for (int n = 0; n < p.size(); ++n)
    for (int mdx = 0; mdx < p.size(); ++mdx)
      acc += g0(x, pts[static_cast<size_t>(n)]) * k(n, mdx) *
             g0(pts[static_cast<size_t>(mdx)], y);
  return acc;
}

std::vector<ContainmentRow> verify_containment(
    SpectrumReport& report,
    const std::vector<enclosures::EnclosureRegion>& regions) {
  report.verdicts.clear();
  report.containment_pass = true;
  for (size_t i = 0; i < report.eigenvalues.size(); ++i) {
    const Complex ev = report.eigenvalues[i].lambda;
    const double tol = 1e-8 * (1.0 + std::abs(ev));
    for (const auto& region : regions) {
      ContainmentRow row;
      row.eigenvalue_index = static_cast<int>(i);
      row.region_tag = region.tag_name();
      row.margin = region.margin(ev);
      row.member = row.margin >= 0.0;
      row.violation = region.exclusion() ? row.margin > tol : row.margin < -tol;
      if (row.violation) report.containment_pass = false;
      report.verdicts.push_back(row);
    }
  }
  return report.verdicts;
}

} // namespace weylscope::solver
