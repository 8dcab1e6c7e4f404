#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "tauberlab/quad128.hpp"
#include "tauberlab/signals.hpp"

namespace tauberlab {

struct TauberParams {
  double p = 1.0;
  double k = 0.25;
  double R = 1.0;
  double T = 1.0;
  void validate() const;  // p >= 1, 0 < k < 1/(2p), R > 0, T > 0
};

struct LaplaceResult {
  cplx value = 0.0;
  double quad_error = 0.0;
  double tail_bound = 0.0;  // certified bound on the discarded [T_max, inf) piece
};

// int_0^inf f(t) e^{-zt} dt, composite quadrature on [0, T_max] plus a
// certified tail bound sup|f| e^{-T_max Re z} / Re z.  Throws when Re z <= 0
// or when the tail bound alone already exceeds tol.
LaplaceResult laplace(const BoundedSignal& f, cplx z, double T_max, double dt,
                      double tol = 1e-8);

// g_T(z) = int_0^T f(t) e^{-zt} dt; entire in z, no sign restriction.
cplx finite_laplace(const BoundedSignal& f, cplx z, double T, double dt);

// Same transform at 113-bit via f.eval_q; required once Re z is negative
// enough that the integrand outgrows the result by many digits.
c128 finite_laplace_q(const BoundedSignal& f, c128 z, f128 T);

// lhs = 1/z + z/R^2, rhs = 2 Re z / R^2; equal on |z| = R.
std::pair<cplx, double> circle_kernel_identity(cplx z, double R);

enum class ContourPath { right_half_circle, imaginary_segment, left_half_circle };

// (1/2 pi i) int_path g(z) e^{T(z-sigma)} (1/(z-sigma) + z/R^2) dz with the
// circle centred at 0 (z = R e^{it}) and the segment z = it traversed from
// +iR to -iR.  right_half_circle + imaginary_segment encircles the pole, so
// their sum reproduces g(sigma); for entire g the two half circles alone
// close the contour.
cplx mollified_contour_integral(const std::function<c128(c128)>& g, double sigma,
                                double R, double T, ContourPath path);

struct TailCheck {
  cplx z = 0.0;
  double T = 0.0;
  double lhs = 0.0;  // |g_T(z) - g(z)|
  double rhs = 0.0;  // sup|f| e^{-T Re z} / Re z
  double ratio = 0.0;
  bool ok = false;   // lhs <= rhs (1 + 1e-6)
};

TailCheck tail_bound_check(const BoundedSignal& f, cplx z, double T);

// sup and p-variation of the boundary function over [T^{-k}, R] (pos) and
// [-R, -T^{-k}] (neg), sampled into a piecewise-linear function.
struct BoundaryStats {
  double sup_pos = 0.0;
  double sup_neg = 0.0;
  double vp_pos = 0.0;
  double vp_neg = 0.0;
};

BoundaryStats boundary_stats(const BoundedSignal& f, const TauberParams& params,
                             std::size_t samples = 2048);

// implied_constant * ( sup_f/R + T^{-k}
//   + T^{-(1/p-2k)} (sup_pos^p + (vp_pos/T^k)^p)^{1/p} + sup_pos/T^{1-k}
//   + T^{-(1/p-2k)} (sup_neg^p + (vp_neg/T^k)^p)^{1/p} + sup_neg/T^{1-k} ).
double theorem3_bound(const TauberParams& params, double sup_pos, double sup_neg,
                      double vp_pos, double vp_neg, double sup_f,
                      double implied_constant);

struct TauberReport {
  double T = 0.0;
  double lhs = 0.0;   // |int_0^T f - g(0)|
  double rhs = 0.0;   // structural bound at implied constant 1
  double ratio = 0.0;
};

struct TauberStudyResult {
  std::vector<TauberReport> reports;
  double fitted_constant = 0.0;  // max over the grid of lhs / rhs
  bool lhs_decreasing = true;    // lhs non-increasing along the T grid
};

TauberStudyResult tauber_convergence_study(
    const BoundedSignal& f, double p, double k,
    const std::function<double(double)>& R_of_T, const std::vector<double>& T_grid);

}  // namespace tauberlab
