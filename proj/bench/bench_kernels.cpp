// Serial vs OpenMP timings for the deterministic kernels.  Every pair is
// checked bit-identical before it is timed; a mismatch aborts the run.

#include <omp.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "tauberlab/experiment.hpp"
#include "tauberlab/oscillatory.hpp"
#include "tauberlab/parallel.hpp"
#include "tauberlab/rng.hpp"
#include "tauberlab/semigroup.hpp"
#include "tauberlab/zeta.hpp"

using namespace tauberlab;

namespace {

double best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    body();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, bool match) {
  if (!match) {
    std::fprintf(stderr, "%s: serial and parallel results differ\n", name);
    std::exit(1);
  }
  std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name,
              serial_s, parallel_s, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
  if (!(scale > 0.0)) {
    std::fprintf(stderr, "usage: %s [scale > 0]\n", argv[0]);
    return 2;
  }
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    const std::size_t n = static_cast<std::size_t>(5e7 * scale);
    auto term = [](std::size_t i) {
      const double k = static_cast<double>(i + 1);
      return 1.0 / (k * k);
    };
    double vs = 0.0, vp = 0.0;
    const double ts = best_of(3, [&] { vs = blocked_sum(n, term, ExecMode::serial); });
    const double tp = best_of(3, [&] { vp = blocked_sum(n, term, ExecMode::parallel); });
    report("blocked_sum", ts, tp, vs == vp);
  }

  GeneratorSpec gen;
  const double x_max = 1e6 * scale;
  const ElementTable table = build_elements(build_primes(gen, x_max), x_max);
  {
    std::vector<CorrectedValue> vs, vp;
    const double ts = best_of(3, [&] {
      vs = zeta_line_batch(table, 1.1, 1.0, 32, 1.0, 1.0, ExecMode::serial);
    });
    const double tp = best_of(3, [&] {
      vp = zeta_line_batch(table, 1.1, 1.0, 32, 1.0, 1.0, ExecMode::parallel);
    });
    bool match = vs.size() == vp.size();
    for (std::size_t j = 0; match && j < vs.size(); ++j)
      match = vs[j].value == vp[j].value && vs[j].cert == vp[j].cert;
    report("zeta_line_batch", ts, tp, match);
  }

  {
    std::vector<PiecewiseFunction> fs;
    const int nf = static_cast<int>(400 * scale);
    for (int i = 0; i < nf; ++i) {
      Rng rng = stream(7, "bench.rl." + std::to_string(i));
      fs.push_back(random_step_function(rng, 50, 1.0));
    }
    std::vector<double> xs;
    for (double x = 0.5; x <= 16384.0; x *= 2.0) xs.push_back(x);
    std::vector<BoundReport> rs, rp;
    const double ts = best_of(3, [&] { rs = verify_rl(fs, xs, 2.0, ExecMode::serial); });
    const double tp = best_of(3, [&] { rp = verify_rl(fs, xs, 2.0, ExecMode::parallel); });
    bool match = rs.size() == rp.size();
    for (std::size_t j = 0; match && j < rs.size(); ++j)
      match = rs[j].lhs == rp[j].lhs && rs[j].rhs == rp[j].rhs;
    report("verify_rl", ts, tp, match);
  }
  return 0;
}
