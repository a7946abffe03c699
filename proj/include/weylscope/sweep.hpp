#ifndef WEYLSCOPE_SWEEP_HPP
#define WEYLSCOPE_SWEEP_HPP

#include "weylscope/models.hpp"
#include "weylscope/types.hpp"

#include <vector>

namespace weylscope {

/// One grid point of a norm sweep.  Points on the model's cut are marked
/// rather than evaluated; evaluation failures (Dirichlet or Kirchhoff
/// proximity) are marked singular.
struct SweepPoint {
  enum class Status { Ok, Cut, Singular };
  Complex lambda;
  double norm = 0.0; // NaN unless Ok
  Status status = Status::Ok;
};

/// Serial reference sweep of ||M(lambda)|| over a list of grid points.
std::vector<SweepPoint> sweep_norms_serial(const models::WeylModel& model,
                                           const std::vector<Complex>& grid);

/// OpenMP sweep over the same grid; writes by index, so the result is
/// identical to the serial reference for any thread count.
std::vector<SweepPoint> sweep_norms_parallel(const models::WeylModel& model,
                                             const std::vector<Complex>& grid,
                                             int threads);

/// Dispatch: threads <= 1 runs the serial reference.
std::vector<SweepPoint> sweep_norms(const models::WeylModel& model,
                                    const std::vector<Complex>& grid,
                                    int threads = 1);

} // namespace weylscope

#endif
