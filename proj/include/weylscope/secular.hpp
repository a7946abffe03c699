#ifndef WEYLSCOPE_SECULAR_HPP
#define WEYLSCOPE_SECULAR_HPP

#include "weylscope/boundary_operator.hpp"
#include "weylscope/enclosures.hpp"
#include "weylscope/models.hpp"
#include "weylscope/types.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace weylscope::solver {

using core::BoundaryOperator;
using models::WeylModel;

/// Thrown when a subdivision or refinement budget runs out (CLI exit 3).
class BudgetExhausted : public Error {
public:
  using Error::Error;
};

/// lambda -> det(I - B M(lambda)), evaluated off the cut and away from the
/// model's declared singular points.  Evaluations are memoized; the cache is
/// guarded so grids and boxes may be evaluated concurrently.
class SecularFunction {
public:
  SecularFunction(const WeylModel& model, BoundaryOperator b);

  Complex operator()(Complex lambda) const;

  const WeylModel& model() const { return *model_; }
  const BoundaryOperator& boundary() const { return b_; }
  long evaluations() const { return evals_; }

private:
  const WeylModel* model_;
  BoundaryOperator b_;
  mutable std::map<std::pair<double, double>, Complex> cache_;
  mutable std::mutex cache_mutex_;
  mutable long evals_ = 0;
};

/// Total phase change of D along the closed polyline divided by 2 pi,
/// computed with adaptive refinement (consecutive samples must differ in
/// phase by < pi/2).  Equals #zeros - #poles inside.  Throws when |D| drops
/// below 1e-12 on the contour or the refinement budget is exhausted.
int winding_count(const SecularFunction& d, std::vector<Complex> contour,
                  int max_samples = 20000);

struct Eigenvalue {
  Complex lambda;
  int multiplicity = 1;   // isolating-box winding number
  double residual = 0.0;  // |D(lambda)|
};

struct ContainmentRow {
  int eigenvalue_index = 0;
  std::string region_tag;
  bool member = false;
  double margin = 0.0;
  bool violation = false;
};

struct SpectrumReport {
  std::vector<Eigenvalue> eigenvalues;
  std::vector<std::string> warnings;
  Complex rect_lo, rect_hi;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int boxes_processed = 0;
  long evaluations = 0;
  std::vector<ContainmentRow> verdicts;
  bool containment_pass = true;
};

struct SolverOptions {
  double tol = 1e-11;            // Newton residual target (absolute)
  double cut_margin = 1e-4;      // clearance kept from [base, inf)
  int max_boxes = 200000;
  int max_contour_samples = 20000;
  int threads = 1;
  std::uint64_t seed = 0;        // recorded in the report
};

/// Locates the zeros of det(I - B M(lambda)) inside the rectangle by
/// recursive quadrisection on winding numbers, then polishes each isolated
/// zero with a Newton iteration (central-difference derivative, secant
/// fallback).  The rectangle is clipped to keep cut_margin clearance from
/// the essential spectrum.
SpectrumReport find_eigenvalues(const WeylModel& model,
                                const BoundaryOperator& b, Complex rect_lo,
                                Complex rect_hi, const SolverOptions& opt = {});

/// Krein-formula kernel of (A_[B] - lambda)^{-1} for a point lattice:
/// G0(x,y) + sum_{n,m} G0(x, x_n) [(I - B M)^{-1} B]_{nm} G0(x_m, y)
/// with G0(x,y) = (i / (2 sqrt(lambda))) e^{i sqrt(lambda) |x - y|}.
Complex krein_resolvent_kernel(const models::PointLattice& p,
                               const BoundaryOperator& b, Complex lambda,
                               double x, double y);

/// Checks every located eigenvalue against every region (containment for
/// enclosures, avoidance for resolvent-free zones) at tolerance
/// 1e-8 (1 + |lambda|); fills report.verdicts and containment_pass.
std::vector<ContainmentRow> verify_containment(
    SpectrumReport& report,
    const std::vector<enclosures::EnclosureRegion>& regions);

} // namespace weylscope::solver

#endif
