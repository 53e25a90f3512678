// Benchmark: OpenMP-parallel minimizer against its serial reference twin.
// For each configuration both paths run with the same seed; the tool reports
// wall times and verifies the results agree bitwise (identical per-restart
// streams merged in restart order).  Exit 0 iff every pair matches.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdisp/minimize.hpp"

using namespace qdisp;

namespace {

double run_ms(MinimizationResult (*f)(const Irrep&, const RMatrixRep&,
                                      const Decomposition&,
                                      const OptimizerConfig&),
              const Irrep& rep, const RMatrixRep& rm, const Decomposition& dec,
              const OptimizerConfig& cfg, MinimizationResult* out) {
  const auto t0 = std::chrono::steady_clock::now();
  *out = f(rep, rm, dec, cfg);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool bitwise_equal(const MinimizationResult& a, const MinimizationResult& b) {
  if (a.best_value != b.best_value) return false;
  if (a.formula_gap != b.formula_gap) return false;
  if (a.restarts_converged != b.restarts_converged) return false;
  if (a.per_restart.size() != b.per_restart.size()) return false;
  for (size_t i = 0; i < a.per_restart.size(); ++i) {
    if (a.per_restart[i].final_value != b.per_restart[i].final_value ||
        a.per_restart[i].iterations != b.per_restart[i].iterations ||
        a.per_restart[i].converged != b.per_restart[i].converged)
      return false;
  }
  if (a.best_states.size() != b.best_states.size()) return false;
  for (size_t i = 0; i < a.best_states.size(); ++i)
    if ((a.best_states[i].v - b.best_states[i].v).norm() != 0.0) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int restarts = 64;
  if (argc > 1) restarts = std::atoi(argv[1]);
  if (restarts < 1) {
    std::fprintf(stderr, "usage: %s [restarts >= 1]\n", argv[0]);
    return 1;
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("minimizer benchmark: %d restarts, %d thread(s)\n", restarts,
              threads);
  std::printf("%-18s %6s %12s %12s %9s %7s\n", "config", "dim", "serial(ms)",
              "parallel(ms)", "speedup", "match");

  struct Cfg {
    std::string algebra;
    int n;
    double q;
  };
  const std::vector<Cfg> grid = {{"sl2", 2, 2.0}, {"sl2", 4, 0.9},
                                 {"sl2", 6, 1.1}, {"sln", 4, 2.0},
                                 {"sln", 6, 0.9}};

  bool all_match = true;
  for (const Cfg& c : grid) {
    const DeformationParameter dp = DeformationParameter::quantum_q(c.q);
    const Irrep rep = (c.algebra == "sl2") ? build_sl2_irrep(c.n, dp)
                                           : build_sln_fundamental(c.n, dp);
    const RMatrixRep rm = build_r(rep);
    const Decomposition dec = decompose_tensor_square_ladder(rm);
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.rng_seed = 1;

    MinimizationResult rs, rp;
    const double ms_s = run_ms(&minimize_delta_serial, rep, rm, dec, cfg, &rs);
    const double ms_p = run_ms(&minimize_delta, rep, rm, dec, cfg, &rp);
    const bool match = bitwise_equal(rs, rp);
    all_match = all_match && match;

    char label[32];
    std::snprintf(label, sizeof(label), "%s n=%d q=%g", c.algebra.c_str(), c.n,
                  c.q);
    std::printf("%-18s %6d %12.1f %12.1f %8.2fx %7s\n", label, rep.dim, ms_s,
                ms_p, ms_s / (ms_p > 0.0 ? ms_p : 1.0),
                match ? "yes" : "NO");
  }
  std::printf(all_match ? "all serial/parallel pairs agree bitwise\n"
                        : "MISMATCH between serial and parallel results\n");
  return all_match ? 0 : 1;
}
