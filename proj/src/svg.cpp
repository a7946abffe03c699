#include "weylscope/svg.hpp"

#include "weylscope/branch.hpp"
#include "weylscope/io.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace weylscope::io {

using enclosures::EnclosureRegion;
using Polyline = std::vector<Complex>;

namespace {

struct Viewport {
  double x0, x1, y0, y1;
  double step() const { return 1e-3 * std::max(x1 - x0, y1 - y0); }
  bool inside(Complex z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
};

// y = f(x) curve plus its mirror image, sampled over [x_lo, x_hi].
template <typename F>
void mirrored_curve(std::vector<Polyline>& out, const Viewport& vp, double x_lo,
                    double x_hi, F&& f) {
  x_lo = std::max(x_lo, vp.x0);
  x_hi = std::min(x_hi, vp.x1);
  if (!(x_hi > x_lo)) return;
  const int n = std::max(2, static_cast<int>((x_hi - x_lo) / vp.step()));
  Polyline up, down;
  for (int i = 0; i <= n; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / double(n);
    const double y = f(x);
    if (!std::isfinite(y)) continue;
    up.emplace_back(x, y);
    down.emplace_back(x, -y);
  }
  out.push_back(std::move(up));
  out.push_back(std::move(down));
}

void circle(std::vector<Polyline>& out, const Viewport& vp, Complex center,
            double radius, double from = 0.0,
            double to = 2.0 * std::numbers::pi) {
  if (!(radius > 0.0)) return;
  const int n =
      std::max(16, static_cast<int>(radius * (to - from) / vp.step()));
  Polyline c;
  for (int i = 0; i <= n; ++i) {
    const double t = from + (to - from) * i / double(n);
    c.push_back(center + radius * Complex(std::cos(t), std::sin(t)));
  }
  out.push_back(std::move(c));
}

// Roots of g on [lo, hi] by scan plus bisection.
template <typename G>
std::vector<double> scan_roots(G&& g, double lo, double hi, int n) {
  std::vector<double> roots;
  double prev_x = lo, prev_v = g(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / double(n);
    const double v = g(x);
    if ((prev_v <= 0.0) != (v <= 0.0)) {
      double a = prev_x, b = x;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        ((g(m) <= 0.0) == (prev_v <= 0.0) ? a : b) = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

std::vector<Polyline> region_boundary(const EnclosureRegion& r,
                                      const Viewport& vp) {
  std::vector<Polyline> out;
  using Tag = EnclosureRegion::Tag;
  switch (r.tag) {
    case Tag::Sector:
      if (r.kappa == 0.0) {
        out.push_back({Complex(std::max(r.eta, vp.x0), 0.0), Complex(vp.x1, 0.0)});
      } else {
        mirrored_curve(out, vp, r.eta, vp.x1,
                       [&](double x) { return r.kappa * (x - r.eta); });
      }
      break;
    case Tag::ParabolaA:
      mirrored_curve(out, vp, r.apex, vp.x1, [&](double x) {
        return r.k_slope * std::pow(x - r.xi, 1.0 - r.beta);
      });
      break;
    case Tag::ParabolaB:
      mirrored_curve(out, vp, r.mu, vp.x1, [&](double x) {
        return r.k_slope * std::pow(x - r.mu, 1.0 - r.beta);
      });
      break;
    case Tag::ParabolaC:
      mirrored_curve(out, vp, r.mu, vp.x1, [&](double x) {
        const double t = x - r.mu;
        return 2.0 * r.C * r.im_b_norm * t / (std::pow(t, r.beta) - r.C * r.b);
      });
      break;
    case Tag::LeftResolventFree:
      if (r.threshold > vp.x0)
        out.push_back(
            {Complex(vp.x0, 0.0), Complex(std::min(r.threshold, vp.x1), 0.0)});
      break;
    case Tag::DistDisk:
      // Stadium around [base, inf): left semicircle plus two horizontal rays.
      circle(out, vp, Complex(r.spectrum_base, 0.0), r.radius,
             0.5 * std::numbers::pi, 1.5 * std::numbers::pi);
      if (r.radius > 0.0) {
        out.push_back({Complex(r.spectrum_base, r.radius), Complex(vp.x1, r.radius)});
        out.push_back(
            {Complex(r.spectrum_base, -r.radius), Complex(vp.x1, -r.radius)});
      }
      break;
    case Tag::PointDisk:
      circle(out, vp, Complex(r.mu, 0.0), r.radius);
      break;
    case Tag::LogRegionV: {
      const double rmax =
          std::hypot(std::max(std::abs(vp.x0), std::abs(vp.x1)),
                     std::max(std::abs(vp.y0), std::abs(vp.y1)));
      auto indicator = [&](double rad) {
        return r.margin(Complex(0.0, rad)); // depends on |z| only
      };
      for (double root : scan_roots(indicator, 1e-12, rmax, 4000))
        circle(out, vp, Complex(0.0, 0.0), root);
      break;
    }
    case Tag::LogRegionW: {
      if (r.dim_class != 2) {
        // (|z| - x)/2 = K: parabola y^2 = 4 K (x + K).
        const double k = r.c_alpha * r.c_alpha - 2.0;
        if (k > 0.0)
          mirrored_curve(out, vp, -k, vp.x1, [&](double x) {
            return 2.0 * std::sqrt(k * (x + k));
          });
        break;
      }
      // n = 2: trace the implicit boundary along vertical lines.
      const int n = std::max(2, static_cast<int>((vp.x1 - vp.x0) / vp.step()));
      Polyline up;
      const double y_hi = std::max(std::abs(vp.y0), std::abs(vp.y1));
      for (int i = 0; i <= n; ++i) {
        const double x = vp.x0 + (vp.x1 - vp.x0) * i / double(n);
        auto g = [&](double y) { return r.margin(Complex(x, y)); };
        if (g(0.0) < 0.0) continue;
        double a = 0.0, b = y_hi;
        if (g(b) > 0.0) {
          up.emplace_back(x, b);
          continue;
        }
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          (g(m) >= 0.0 ? a : b) = m;
        }
        up.emplace_back(x, 0.5 * (a + b));
      }
      Polyline down;
      for (const Complex& z : up) down.emplace_back(z.real(), -z.imag());
      out.push_back(std::move(up));
      out.push_back(std::move(down));
      break;
    }
  }
  return out;
}

constexpr const char* palette[] = {"#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2",
                                   "#b8860b", "#3c3c3c"};

} // namespace

void write_regions_svg(std::ostream& os,
                       const std::vector<EnclosureRegion>& regions,
                       Complex viewport_lo, Complex viewport_hi,
                       double width_px) {
  const Viewport vp{viewport_lo.real(), viewport_hi.real(), viewport_lo.imag(),
                    viewport_hi.imag()};
  if (!(vp.x1 > vp.x0 && vp.y1 > vp.y0))
    throw Error("svg: viewport must be a non-degenerate rectangle");
  const double sx = width_px / (vp.x1 - vp.x0);
  const double height_px = sx * (vp.y1 - vp.y0);
  auto px = [&](Complex z) { return (z.real() - vp.x0) * sx; };
  auto py = [&](Complex z) { return (vp.y1 - z.imag()) * sx; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- weylscope regions; math coordinates map y-up:\n"
     << "     x_svg = (Re z - " << format_double(vp.x0) << ") * "
     << format_double(sx) << "\n"
     << "     y_svg = (" << format_double(vp.y1) << " - Im z) * "
     << format_double(sx) << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px
     << "\" height=\"" << height_px << "\" viewBox=\"0 0 " << width_px << " "
     << height_px << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  if (vp.y0 < 0.0 && vp.y1 > 0.0)
    os << "  <line x1=\"0\" y1=\"" << py(Complex(0, 0)) << "\" x2=\"" << width_px
       << "\" y2=\"" << py(Complex(0, 0))
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  if (vp.x0 < 0.0 && vp.x1 > 0.0)
    os << "  <line x1=\"" << px(Complex(0, 0)) << "\" y1=\"0\" x2=\""
       << px(Complex(0, 0)) << "\" y2=\"" << height_px
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

  int color = 0;
  for (const auto& region : regions) {
    const auto curves = region_boundary(region, vp);
    os << "  <g stroke=\"" << palette[color % 6]
       << "\" fill=\"none\" stroke-width=\"1.5\" data-tag=\""
       << region.tag_name() << "\">\n";
    for (const auto& curve : curves) {
      bool open = false;
      std::string d;
      for (const Complex& z : curve) {
        if (!vp.inside(z)) {
          open = false;
          continue;
        }
        d += open ? " L " : (open = true, d.empty() ? "M " : " M ");
        d += format_double(px(z));
        d += ' ';
        d += format_double(py(z));
      }
      if (!d.empty()) os << "    <path d=\"" << d << "\"/>\n";
    }
    os << "  </g>\n";
    ++color;
  }
  os << "</svg>\n";
}

} // namespace weylscope::io
