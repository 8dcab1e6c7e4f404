#pragma once
// Shared experiment plumbing: the table-backed psi signal, random test-input
// generators, and the command implementations behind the CLI (kept here so
// tests can drive them in-process).

#include <cstdint>
#include <string>
#include <vector>

#include "tauberlab/piecewise.hpp"
#include "tauberlab/rng.hpp"
#include "tauberlab/semigroup.hpp"
#include "tauberlab/signals.hpp"

namespace tauberlab {

// f(t) = psi(e^t) e^{-t} - 1 on [0, log x_max], with boundary data from the
// tail-corrected zeta: g(z) = -zeta'/zeta(1+z)/(1+z) - 1/z and, for a density
// with A > 0, g(0) = -1 - EulerGamma-analogue taken from the H(s) limit.
BoundedSignal make_semigroup_signal(const ElementTable& table,
                                    const DensityFit& fit);

// Step function on [0, 1]: up to max_pieces pieces, values uniform in
// [-vmax, vmax], node gaps at least 1e-4.
PiecewiseFunction random_step_function(Rng& rng, int max_pieces, double vmax);

// Continuous piecewise-linear function on [0, 1] with up to max_nodes nodes.
PiecewiseFunction random_linear_function(Rng& rng, int max_nodes, double vmax);

struct RunOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int threads = 0;          // 0: leave the OpenMP default
  double tolerance = 1e-9;
  std::string config_text;  // JSON object; empty means {}
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 invariant violation, 2 usage/schema error
  std::string message;
  std::vector<std::string> files;
};

// Commands: pvar, rl-check, tauber, semigroup-build, zeta-scan, pnt, mertens,
// identities.  Writes <out>/<command>.csv and <out>/<command>_summary.json.
RunOutcome run_command(const std::string& command, const RunOptions& opt);

}  // namespace tauberlab
