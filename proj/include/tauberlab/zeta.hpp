#pragma once
// Three-way zeta evaluation over an element table (partial sum, Euler product,
// Stieltjes transform with analytic tail) plus the boundary-line diagnostics:
// growth and derivative bounds, Fejer positivity, lower bounds, moduli of
// continuity, and the H(s) = -zeta'/zeta - 1/(s-1) probe near s = 1.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauberlab/parallel.hpp"
#include "tauberlab/semigroup.hpp"

namespace tauberlab {

using cplx = std::complex<double>;

enum class ZetaMethod { partial_sum, euler_product, stieltjes };

const char* zeta_method_name(ZetaMethod m);

struct ZetaEvaluation {
  cplx s{};
  cplx value{};
  ZetaMethod method = ZetaMethod::partial_sum;
  double truncation = 0.0;     // cut point the evaluation was truncated at
  double tail_estimate = 0.0;  // estimated modulus of the dropped mass
  bool tail_known = false;     // true when tail_estimate is certified
};

// Sum of norm^{-s} over the table.  With a density fit attached and Re s > 1
// the dropped tail is estimated as A*X^{1-sigma}/(sigma-1) plus the envelope
// correction; without one the tail is reported unknown.
ZetaEvaluation zeta_partial(const ElementTable& table, cplx s,
                            std::optional<DensityFit> fit = std::nullopt);

// Product over the first K prime norms, accumulated in log space.  Exact for
// an explicit generator with K covering the whole list.
ZetaEvaluation zeta_euler(const PrimeSystem& primes, cplx s, int K);

// s * int_1^X N(x) x^{-s-1} dx + s*A*X^{1-s}/(s-1).  The step-function
// integral telescopes to sum_{norm<=X} norm^{-s} - N(X) X^{-s}, which is how
// it is evaluated; the certificate uses the table's measured envelope.
ZetaEvaluation zeta_stieltjes(const ElementTable& table, cplx s, double X,
                              double A);

// Truncated derivative sums: -sum log*norm^{-s} (order 1),
// +sum log^2*norm^{-s} (order 2).
cplx zeta_derivatives(const ElementTable& table, cplx s, int order);

// Tail-corrected evaluation of zeta and its first two derivatives assuming
// |N(x) - A x| <= envelope for all x >= 1.  cert bounds |value - true| and is
// rigorous whenever the envelope really is global (classical: envelope 1).
struct CorrectedValue {
  cplx value{};
  double cert = 0.0;
};

// order 0 -> zeta, 1 -> zeta', 2 -> zeta''.  Requires Re s > 0, s != 1.
CorrectedValue zeta_corrected(const ElementTable& table, cplx s, double A,
                              double envelope, int order);

// Corrected zeta(sigma + i j t) for j = 0..n in one table pass; the phase
// factor is advanced by one complex multiply per j, so the cost is a single
// exp/sincos per record.
std::vector<CorrectedValue> zeta_line_batch(const ElementTable& table,
                                            double sigma, double t, int n,
                                            double A, double envelope,
                                            ExecMode mode = ExecMode::parallel);

// 1 + 2*sum_{j=1}^n (1 - j/n) cos(jx); always >= 0, equal to
// (1/n)(sin(nx/2)/sin(x/2))^2 away from multiples of 2*pi.
double fejer_kernel(int n, double x);

enum class LemmaId {
  growth,
  dprime_1,
  dprime_2_log,
  ddprime,
  ddprime_log,
  line_growth,
  vallee_poussin,
  inv_lower,
  continuity_zeta,
  continuity_zeta_prime,
  ratio_hoelder,
  continuity_inv,
  H_near_1,
};

const char* lemma_name(LemmaId id);
LemmaId lemma_from_name(const std::string& name);
std::vector<LemmaId> all_lemmas();

// Exponent the structural bound is evaluated with when the caller has no
// better (measured) value; chosen inside each lemma's stated range.
double default_gamma(LemmaId id);

struct LemmaPoint {
  double a = 0.0;  // sigma, t, or t1 depending on the lemma
  double b = 0.0;  // t, 0, or t2/d depending on the lemma
  double lhs = 0.0;
  double rhs = 0.0;
  bool tail_flagged = false;  // truncation uncertainty above 10% of |zeta|
};

struct LemmaGrid {
  std::vector<std::pair<double, double>> points;
};

// Grid inside the lemma's stated ranges; level 1 doubles the density per axis
// (same endpoints) for the refinement-drift check.
LemmaGrid default_grid(LemmaId id, int level = 0);

struct LemmaDiagnostic {
  LemmaId lemma_id = LemmaId::growth;
  double gamma_used = 0.0;
  std::vector<LemmaPoint> points;
  double fitted_constant = 0.0;  // max over the grid of lhs/rhs
  bool any_tail_flagged = false;
  bool applicable = true;  // false when the table fails the hypothesis
  bool holds = true;       // inequality-style diagnostics only
  bool blowup = false;     // H_near_1 only: difference quotient diverges
  std::string note;
};

// Evaluates lhs and the structural rhs of one boundary lemma over the grid.
LemmaDiagnostic lemma_diagnostic(const ElementTable& table,
                                 const DensityFit& fit, LemmaId id,
                                 double gamma, const LemmaGrid& grid);

// log zeta(sigma) + sum_{j=1}^n 2(1 - j/n) log|zeta(sigma + i j t)| >= 0 up
// to the propagated truncation certificates.  Passing the table's density fit
// avoids recomputing the envelope per call.
LemmaDiagnostic positivity_inequality(const ElementTable& table, double sigma,
                                      double t, int n,
                                      std::optional<DensityFit> fit = std::nullopt);

// Difference-quotient scan of H(s) = -zeta'/zeta(s) - 1/(s-1) on
// s = 1 + 2^{-j}, j = 1..10+level; blowup reports a divergence trend.
LemmaDiagnostic H_near_1(const ElementTable& table, const DensityFit& fit,
                         int level = 0);

}  // namespace tauberlab
