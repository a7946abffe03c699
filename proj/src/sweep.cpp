#include "weylscope/sweep.hpp"

#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace weylscope {

namespace {

SweepPoint eval_point(const models::WeylModel& model, Complex lambda) {
  SweepPoint p;
  p.lambda = lambda;
  if (model.on_cut(lambda)) {
    p.status = SweepPoint::Status::Cut;
    p.norm = std::numeric_limits<double>::quiet_NaN();
    return p;
  }
  try {
    p.norm = model.weyl_norm(lambda);
  } catch (const Error&) {
    p.status = SweepPoint::Status::Singular;
    p.norm = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

} // namespace

std::vector<SweepPoint> sweep_norms_serial(const models::WeylModel& model,
                                           const std::vector<Complex>& grid) {
  std::vector<SweepPoint> out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_point(model, grid[i]);
  return out;
}

std::vector<SweepPoint> sweep_norms_parallel(const models::WeylModel& model,
                                             const std::vector<Complex>& grid,
                                             int threads) {
  std::vector<SweepPoint> out(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(std::max(1, threads))
#endif
  for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_point(model, grid[i]);
  return out;
}

std::vector<SweepPoint> sweep_norms(const models::WeylModel& model,
                                    const std::vector<Complex>& grid,
                                    int threads) {
  if (threads <= 1) return sweep_norms_serial(model, grid);
  return sweep_norms_parallel(model, grid, threads);
}

} // namespace weylscope
