#pragma once
// Exponent formulas, prime-counting and Mertens error profiles, the psi-bump
// pointwise bound, and the psi -> pi chaining inequalities, all evaluated
// against an element table.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tauberlab/rational.hpp"
#include "tauberlab/semigroup.hpp"

namespace tauberlab {

// min((gamma - 2)/6, 1/198); rejects gamma <= 2.
double delta_pnt(double gamma);
Rational delta_pnt(const Rational& gamma);

// (gamma - 3/2)^2 / 72; rejects gamma <= 3/2.
double delta_mertens(double gamma);
Rational delta_mertens(const Rational& gamma);

struct ExponentFit {
  double exponent = 0.0;  // regression slope; -delta in error = x/log^{1+delta}x
  double r_squared = 0.0;
};

// Regresses log(error * log x / x) on log log x.  Requires >= 5 samples, all
// errors strictly positive (split signs before calling).
ExponentFit exponent_fit(const std::vector<double>& x_grid,
                         const std::vector<double>& errors);

struct ErrorProfile {
  std::vector<double> x_grid;
  std::vector<double> raw_error;
  std::vector<double> normalized;  // raw_error * log^{power}(x) / x
  double delta_used = 0.0;
  ExponentFit fit{};
  bool applicable = true;     // false when the density constant is ~0
  bool delta_flagged = false; // gamma outside the theorem range: delta = 0
};

// raw_error(x) = pi(x) - x/log x, normalized with power 1 + delta_pnt(gamma).
ErrorProfile pnt_profile(const ElementTable& table, double gamma);

// raw_error(x) = M(x), normalized with power delta_mertens(gamma).
ErrorProfile mertens_profile(const ElementTable& table, double gamma);

enum class PsiMode { step, linear };

// Samples of psi(e^t) on a nondecreasing t-grid.  step: right-continuous,
// constant between nodes (jumps at the nodes).  linear: interpolated; a
// repeated t value encodes a jump.  Data are valid through t_end.
struct PsiData {
  std::vector<double> t;
  std::vector<double> v;
  PsiMode mode = PsiMode::step;
  double t_end = 0.0;

  void validate() const;  // throws on non-monotone data
};

PsiData psi_data_from_table(const ElementTable& table);

double psi_data_eval(const PsiData& data, double t);

// Exact integral of (psi(e^t) e^{-t} - 1) dt over [a, b] within the data
// horizon; piecewise closed forms, no quadrature.
double psi_excess_integral(const PsiData& data, double a, double b);

struct BumpResult {
  double delta = 0.0;       // max(delta_up, delta_down)
  double delta_up = 0.0;    // surplus side: psi(e^{t0}) vs (1+delta) e^{t0}
  double delta_down = 0.0;  // deficit side
  double delta_weak = 0.0;  // same scan with the cruder delta^2/6 threshold
};

// Largest delta whose bump inequality is consistent with the measured
// integrals near t0.  The surplus threshold is the exact extremal value
// (1+delta)(1 - e^{-delta/3}) - delta/3 (~ (5/18) delta^2); the delta^2/6
// simplification is reported separately as delta_weak.  I_tail, when given,
// supplies tail integrals T -> int_T^{t_end}; the integrand is then evaluated
// as differences of it instead of from the data.
BumpResult psi_bump_inversion(const PsiData& data, double t0,
                              const std::function<double(double)>& I_tail = {});

double psi_bump_width(const PsiData& data, double t0,
                      const std::function<double(double)>& I_tail = {});

struct ChainStep {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

struct ChainReport {
  double x = 0.0;
  double lhs = 0.0;       // pi(x) log x - psi(x)
  double rhs = 0.0;       // fitted_C * x log log x / log x
  double fitted_C = 0.0;
  bool all_hold = false;
  bool flagged_small_x = false;  // log^2 x cutoff below 1
  std::vector<ChainStep> steps;
};

// Verifies, record-for-record on the table, the chain
//   psi(x) >= psi(x) - psi(y) >= (pi(x) - pi(y)) log y
//          >= (pi(x) - N(y)) log x - 2 pi(x) log log x,   y = x / log^2 x,
// and reports pi(x) log x - psi(x) against C x log log x / log x.
ChainReport psi_to_pi_check(const ElementTable& table, double x);

}  // namespace tauberlab
