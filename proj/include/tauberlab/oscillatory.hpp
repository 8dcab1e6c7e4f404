#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tauberlab/parallel.hpp"
#include "tauberlab/piecewise.hpp"

namespace tauberlab {

// phi1(w) = (e^w - 1)/w and phi2(w) = (e^w (w - 1) + 1)/w^2, the entire
// functions appearing in the per-piece antiderivatives of f(t) e^{st}.
// Both switch to a truncated power series for |w| < 0.05 where the closed
// forms lose digits to cancellation.
cplx phi1(cplx w);
cplx phi2(cplx w);

// Exact value of \int_0^1 f(t) e^{-2 pi i x t} dt, one closed-form term per
// piece. Requires f.domain() == [0, 1] and x > 0.
cplx oscillatory_integral(const PiecewiseFunction& f, double x);

// V_p(f) (1/x)^{1/p} + sup|f| / x.
double riemann_lebesgue_bound(const PiecewiseFunction& f, double x, double p);

struct BoundReport {
  std::size_t f_id = 0;
  double x = 0.0;
  double p = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool violation = false;
};

// One report per (f, x) pair. Complex functions are checked component-wise
// (the inequality is stated for real functions); the report keeps whichever
// component has the larger ratio.
std::vector<BoundReport> verify_rl(const std::vector<PiecewiseFunction>& fs,
                                   const std::vector<double>& xs, double p,
                                   ExecMode mode = ExecMode::parallel);

// Columns: f_id,x,p,lhs,rhs,ratio.
void write_bound_reports_csv(const std::vector<BoundReport>& reports,
                             const std::string& path);

}  // namespace tauberlab
