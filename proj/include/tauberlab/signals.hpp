#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tauberlab/piecewise.hpp"
#include "tauberlab/quad128.hpp"

namespace tauberlab {

// A bounded, locally integrable signal f on [0, inf) together with whatever
// closed-form structure is known about its Laplace transform g.  Fields beyond
// `eval` and `sup_bound` are optional; a default-constructed std::function
// marks "not available".
struct BoundedSignal {
  std::string id;
  std::function<cplx(double)> eval;     // f(t), t >= 0
  std::function<c128(f128)> eval_q;     // f at 113-bit, for contour cross-checks
  double sup_bound = 0.0;               // certified sup |f|
  std::function<cplx(cplx)> closed_g;   // g(z), Re z > 0, when known
  std::function<c128(c128)> closed_g_q; // g at 113-bit, when known
  std::function<cplx(double)> g_tilde;  // boundary values g(it), when known
  std::function<double(double)> exact_integral;  // int_0^T f dt, when known
  bool has_g0 = false;
  cplx g0 = 0.0;                        // lim_{sigma -> 0+} g(sigma), when it exists
  bool hypothesis_ok = true;            // satisfies the convergence hypotheses
  // eval is valid on [0, t_max]; infinite for the closed-form catalogue
  double t_max = std::numeric_limits<double>::infinity();
};

// Closed-form study signals: zero, one, exp_decay, exp_linear, cos_decay,
// sin_t.  `one` and `sin_t` are deliberate hypothesis-violation fixtures
// (pole of g at 0, boundary poles at t = +-1 respectively).
const std::vector<BoundedSignal>& signal_catalogue();
const BoundedSignal& signal_by_id(const std::string& id);

}  // namespace tauberlab
