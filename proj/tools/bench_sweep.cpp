// Benchmark: serial reference sweep vs the OpenMP kernel on representative
// models.  Checks that both paths produce identical output before timing.

#include "weylscope/models.hpp"
#include "weylscope/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace weylscope;
using namespace weylscope::models;

namespace {

std::vector<Complex> make_grid(int n_re, int n_im) {
  std::vector<Complex> grid;
  grid.reserve(static_cast<size_t>(n_re) * n_im);
  for (int i = 0; i < n_re; ++i)
    for (int j = 0; j < n_im; ++j)
      grid.emplace_back(-60.0 + 110.0 * i / double(n_re - 1),
                        0.05 + 30.0 * j / double(n_im - 1));
  return grid;
}

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench(const char* name, const WeylModel& model,
           const std::vector<Complex>& grid, int threads) {
  std::vector<SweepPoint> serial, parallel;
  const double t_serial =
      time_ms([&] { serial = sweep_norms_serial(model, grid); });
  const double t_parallel =
      time_ms([&] { parallel = sweep_norms_parallel(model, grid, threads); });

  for (size_t i = 0; i < grid.size(); ++i) {
    const bool same_status = serial[i].status == parallel[i].status;
    const bool same_norm =
        serial[i].status != SweepPoint::Status::Ok ||
        serial[i].norm == parallel[i].norm;
    if (!same_status || !same_norm) {
      std::printf("MISMATCH at %zu: serial/parallel disagree\n", i);
      std::exit(1);
    }
  }
  std::printf("%-24s %6zu pts   serial %9.1f ms   omp(%d) %9.1f ms   speedup %5.2fx\n",
              name, grid.size(), t_serial, threads, t_parallel,
              t_serial / t_parallel);
}

} // namespace

int main(int argc, char** argv) {
  int threads = 4;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (argc > 1) threads = std::max(1, std::atoi(argv[1]));

  const auto grid = make_grid(80, 40);

  const WeylModel lattice(PointLattice::equispaced(51, 1.0));
  bench("lattice m=51", lattice, grid, threads);

  std::vector<GraphEdge> edges;
  for (int v = 1; v < 8; ++v)
    edges.push_back(GraphEdge::finite(v - 1, v, 0.4 + 0.25 * v));
  edges.push_back(GraphEdge::finite(0, 7, 1.7));
  edges.push_back(GraphEdge::finite(2, 5, 0.9));
  const WeylModel graph(MetricGraph(8, std::move(edges)));
  bench("graph |V|=8", graph, grid, threads);

  const WeylModel kac(ScalarProfile::kac(0.25));
  std::vector<Complex> kac_grid;
  for (int i = 0; i < 400; ++i) kac_grid.emplace_back(-1.0 - i * 5.0, 0.0);
  bench("kac alpha=1/4", kac, kac_grid, threads);
  return 0;
}
