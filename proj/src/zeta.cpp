#include "tauberlab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>

#include "tauberlab/fit.hpp"

namespace tauberlab {

namespace {

constexpr double kPoleGuard = 1e-9;

void require_above_line(cplx s, const char* who) {
  if (!(s.real() > 1.0))
    throw std::invalid_argument(std::string(who) + ": requires Re s > 1");
}

cplx norm_power(double log_norm, double sigma, double t) {
  // norm^{-s} = e^{-sigma L} (cos(tL) - i sin(tL))
  return std::polar(std::exp(-sigma * log_norm), -t * log_norm);
}

struct TailTerms {
  cplx main{};
  double cert = 0.0;
};

// Analytic tail of sum_{norm > X} log^k(norm) norm^{-s} under
// N(x) = A x + r(x), |r| <= E for all x >= X:
//   I0 = X^{1-s}/(s-1), I1 = -I0', I2 = -I1'.
TailTerms tail_correction(cplx s, double X, double N_X, double A, double E,
                          int order) {
  const double sigma = s.real();
  const double LX = std::log(X);
  const cplx sm1 = s - 1.0;
  const cplx X1ms = std::polar(std::pow(X, 1.0 - sigma), -s.imag() * LX);
  const cplx Xms = X1ms / X;
  const cplx I0 = X1ms / sm1;
  const double Xmsig = std::pow(X, -sigma);
  const double smod = std::abs(s);
  if (order == 0)
    return {-N_X * Xms + s * A * I0, smod * E * Xmsig / sigma};
  const cplx I1 = X1ms * (LX / sm1 + 1.0 / (sm1 * sm1));
  const double J1 = Xmsig * (LX / sigma + 1.0 / (sigma * sigma));
  if (order == 1)
    return {N_X * LX * Xms + A * (I0 - s * I1), E * (Xmsig / sigma + smod * J1)};
  const cplx I2 =
      X1ms * (LX * LX / sm1 + 2.0 * LX / (sm1 * sm1) + 2.0 / (sm1 * sm1 * sm1));
  const double J2 = Xmsig * (LX * LX / sigma + 2.0 * LX / (sigma * sigma) +
                             2.0 / (sigma * sigma * sigma));
  return {-N_X * LX * LX * Xms + A * (s * I2 - 2.0 * I1),
          E * (2.0 * J1 + smod * J2)};
}

}  // namespace

const char* zeta_method_name(ZetaMethod m) {
  switch (m) {
    case ZetaMethod::partial_sum:
      return "partial_sum";
    case ZetaMethod::euler_product:
      return "euler_product";
    case ZetaMethod::stieltjes:
      return "stieltjes";
  }
  return "unknown";
}

ZetaEvaluation zeta_partial(const ElementTable& table, cplx s,
                            std::optional<DensityFit> fit) {
  ZetaEvaluation out;
  out.s = s;
  out.method = ZetaMethod::partial_sum;
  out.truncation = table.x_max;
  const double sigma = s.real(), t = s.imag();
  out.value = blocked_sum_complex(table.size(), [&](std::size_t i) {
    return norm_power(table.log_norm[i], sigma, t);
  });
  if (fit && sigma > 1.0) {
    const double X = table.x_max;
    out.tail_estimate = fit->A * std::pow(X, 1.0 - sigma) / (sigma - 1.0) +
                        std::abs(s) * fit->envelope_abs *
                            std::pow(X, -sigma) / sigma;
    out.tail_known = true;
  }
  return out;
}

ZetaEvaluation zeta_euler(const PrimeSystem& primes, cplx s, int K) {
  require_above_line(s, "zeta_euler");
  if (K < 0 || static_cast<std::size_t>(K) > primes.norms.size())
    throw std::invalid_argument("zeta_euler: K outside [0, #primes]");
  ZetaEvaluation out;
  out.s = s;
  out.method = ZetaMethod::euler_product;
  const double sigma = s.real(), t = s.imag();
  const cplx log_prod =
      blocked_sum_complex(static_cast<std::size_t>(K), [&](std::size_t j) {
        return -std::log(1.0 - norm_power(std::log(primes.norms[j]), sigma, t));
      });
  out.value = std::exp(log_prod);
  out.truncation = K > 0 ? primes.norms[static_cast<std::size_t>(K) - 1] : 0.0;
  if (primes.kind == GeneratorKind::explicit_list &&
      static_cast<std::size_t>(K) == primes.norms.size()) {
    out.tail_estimate = 0.0;  // finite generator list: the product is exact
    out.tail_known = true;
  } else if (K > 0) {
    const double Q = out.truncation;
    const double log_tail = std::pow(Q, 1.0 - sigma) / ((sigma - 1.0) * std::log(Q));
    out.tail_estimate = std::abs(out.value) * std::expm1(log_tail);
    out.tail_known = false;  // prime-density heuristic, not a certificate
  }
  return out;
}

ZetaEvaluation zeta_stieltjes(const ElementTable& table, cplx s, double X,
                              double A) {
  require_above_line(s, "zeta_stieltjes");
  if (!(X >= 1.0) || X > table.x_max * (1.0 + 1e-12))
    throw std::invalid_argument("zeta_stieltjes: X must lie in [1, x_max]");
  ZetaEvaluation out;
  out.s = s;
  out.method = ZetaMethod::stieltjes;
  out.truncation = X;
  const double sigma = s.real(), t = s.imag();
  const std::size_t nX = static_cast<std::size_t>(
      std::upper_bound(table.norm.begin(), table.norm.end(), X) -
      table.norm.begin());
  const cplx partial = blocked_sum_complex(nX, [&](std::size_t i) {
    return norm_power(table.log_norm[i], sigma, t);
  });
  const cplx Xms = std::polar(std::pow(X, -sigma), -t * std::log(X));
  const cplx X1ms = Xms * X;
  out.value = partial - static_cast<double>(nX) * Xms + s * A * X1ms / (s - 1.0);

  double env = std::abs(static_cast<double>(table.size()) - A * table.x_max);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double ax = A * table.norm[i];
    env = std::max(env, std::abs(static_cast<double>(i) - ax));
    env = std::max(env, std::abs(static_cast<double>(i + 1) - ax));
  }
  out.tail_estimate = std::abs(s) * env * std::pow(X, -sigma) / sigma;
  out.tail_known = true;
  return out;
}

cplx zeta_derivatives(const ElementTable& table, cplx s, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("zeta_derivatives: order must be 1 or 2");
  const double sigma = s.real(), t = s.imag();
  return blocked_sum_complex(table.size(), [&](std::size_t i) {
    const double L = table.log_norm[i];
    const cplx e = norm_power(L, sigma, t);
    return order == 1 ? -L * e : L * L * e;
  });
}

CorrectedValue zeta_corrected(const ElementTable& table, cplx s, double A,
                              double envelope, int order) {
  if (!(s.real() > 0.0))
    throw std::invalid_argument("zeta_corrected: requires Re s > 0");
  if (std::abs(s - 1.0) < kPoleGuard)
    throw std::invalid_argument("zeta_corrected: s within 1e-9 of the pole");
  if (order < 0 || order > 2)
    throw std::invalid_argument("zeta_corrected: order must be 0, 1, or 2");
  if (!(A >= 0.0) || !(envelope >= 0.0))
    throw std::invalid_argument("zeta_corrected: A and envelope must be >= 0");
  const double sigma = s.real(), t = s.imag();
  const cplx partial = blocked_sum_complex(table.size(), [&](std::size_t i) {
    const double L = table.log_norm[i];
    const cplx e = norm_power(L, sigma, t);
    if (order == 0) return e;
    if (order == 1) return -L * e;
    return L * L * e;
  });
  const TailTerms tt = tail_correction(s, table.x_max,
                                       static_cast<double>(table.size()), A,
                                       envelope, order);
  return {partial + tt.main, tt.cert};
}

std::vector<CorrectedValue> zeta_line_batch(const ElementTable& table,
                                            double sigma, double t, int n,
                                            double A, double envelope,
                                            ExecMode mode) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("zeta_line_batch: requires sigma > 0");
  if (n < 0) throw std::invalid_argument("zeta_line_batch: n must be >= 0");
  if (!(A >= 0.0) || !(envelope >= 0.0))
    throw std::invalid_argument("zeta_line_batch: A and envelope must be >= 0");
  const std::size_t m = table.size();
  const std::size_t nblocks = (m + kSumBlock - 1) / kSumBlock;
  const std::size_t nj = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<double>> pre(nj, std::vector<double>(nblocks, 0.0));
  std::vector<std::vector<double>> pim(nj, std::vector<double>(nblocks, 0.0));
  const bool par = (mode == ExecMode::parallel);
#pragma omp parallel for schedule(static) if (par)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = lo + kSumBlock < m ? lo + kSumBlock : m;
    std::vector<cplx> acc(nj, cplx{0.0, 0.0});
    for (std::size_t i = lo; i < hi; ++i) {
      const double L = table.log_norm[i];
      const cplx z = std::polar(1.0, -t * L);
      cplx zj{std::exp(-sigma * L), 0.0};
      for (std::size_t j = 0; j < nj; ++j) {
        acc[j] += zj;
        zj *= z;
      }
    }
    for (std::size_t j = 0; j < nj; ++j) {
      pre[j][static_cast<std::size_t>(b)] = acc[j].real();
      pim[j][static_cast<std::size_t>(b)] = acc[j].imag();
    }
  }
  std::vector<CorrectedValue> out(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    const cplx s{sigma, static_cast<double>(j) * t};
    if (std::abs(s - 1.0) < kPoleGuard)
      throw std::invalid_argument("zeta_line_batch: sigma + i j t hits the pole");
    const cplx partial{pairwise_fold(pre[j]), pairwise_fold(pim[j])};
    const TailTerms tt = tail_correction(s, table.x_max,
                                         static_cast<double>(m), A, envelope, 0);
    out[j] = {partial + tt.main, tt.cert};
  }
  return out;
}

double fejer_kernel(int n, double x) {
  if (n < 1) throw std::invalid_argument("fejer_kernel: n must be >= 1");
  double s = 1.0;
  for (int j = 1; j <= n; ++j)
    s += 2.0 * (1.0 - static_cast<double>(j) / n) * std::cos(j * x);
  return s;
}

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::growth: return "growth";
    case LemmaId::dprime_1: return "dprime_1";
    case LemmaId::dprime_2_log: return "dprime_2_log";
    case LemmaId::ddprime: return "ddprime";
    case LemmaId::ddprime_log: return "ddprime_log";
    case LemmaId::line_growth: return "line_growth";
    case LemmaId::vallee_poussin: return "vallee_poussin";
    case LemmaId::inv_lower: return "inv_lower";
    case LemmaId::continuity_zeta: return "continuity_zeta";
    case LemmaId::continuity_zeta_prime: return "continuity_zeta_prime";
    case LemmaId::ratio_hoelder: return "ratio_hoelder";
    case LemmaId::continuity_inv: return "continuity_inv";
    case LemmaId::H_near_1: return "H_near_1";
  }
  return "unknown";
}

std::vector<LemmaId> all_lemmas() {
  return {LemmaId::growth,          LemmaId::dprime_1,
          LemmaId::dprime_2_log,    LemmaId::ddprime,
          LemmaId::ddprime_log,     LemmaId::line_growth,
          LemmaId::vallee_poussin,  LemmaId::inv_lower,
          LemmaId::continuity_zeta, LemmaId::continuity_zeta_prime,
          LemmaId::ratio_hoelder,   LemmaId::continuity_inv,
          LemmaId::H_near_1};
}

LemmaId lemma_from_name(const std::string& name) {
  for (LemmaId id : all_lemmas())
    if (name == lemma_name(id)) return id;
  std::string known;
  for (LemmaId id : all_lemmas()) {
    if (!known.empty()) known += ", ";
    known += lemma_name(id);
  }
  throw std::invalid_argument("unknown lemma '" + name + "'; known: " + known);
}

double default_gamma(LemmaId id) {
  switch (id) {
    case LemmaId::growth: return 1.8;
    case LemmaId::dprime_1: return 1.8;
    case LemmaId::dprime_2_log: return 2.0;
    case LemmaId::ddprime: return 2.5;
    case LemmaId::ddprime_log: return 3.0;
    case LemmaId::line_growth: return 1.8;
    case LemmaId::vallee_poussin: return 1.8;
    case LemmaId::inv_lower: return 1.8;
    case LemmaId::continuity_zeta: return 1.8;
    case LemmaId::continuity_zeta_prime: return 2.5;
    case LemmaId::ratio_hoelder: return 2.5;
    case LemmaId::continuity_inv: return 1.8;
    case LemmaId::H_near_1: return 2.5;
  }
  return 2.5;
}

namespace {

std::vector<double> geom_pts(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

LemmaGrid cross(const std::vector<double>& as, const std::vector<double>& bs) {
  LemmaGrid g;
  for (double a : as)
    for (double b : bs) g.points.emplace_back(a, b);
  return g;
}

}  // namespace

LemmaGrid default_grid(LemmaId id, int level) {
  if (level < 0 || level > 4)
    throw std::invalid_argument("default_grid: level must be in [0, 4]");
  const int k = 1 << level;
  switch (id) {
    case LemmaId::growth: {
      std::vector<double> sig;
      for (double h : geom_pts(std::pow(2.0, -10), 0.5, 8 * k))
        sig.push_back(1.0 + h);
      return cross(sig, {0.0, 1.0, 10.0});
    }
    case LemmaId::dprime_1:
    case LemmaId::dprime_2_log:
    case LemmaId::ddprime:
    case LemmaId::ddprime_log: {
      std::vector<double> sig;
      for (double h : geom_pts(std::pow(2.0, -8), 0.5, 6 * k))
        sig.push_back(1.0 + h);
      return cross(sig, geom_pts(2.0, 30.0, 5 * k));
    }
    case LemmaId::line_growth:
      return cross(geom_pts(2.0, 1000.0, 12 * k), {0.0});
    case LemmaId::vallee_poussin: {
      std::vector<double> sig;
      for (double h : geom_pts(std::pow(2.0, -6), 0.5, 5 * k))
        sig.push_back(1.0 + h);
      return cross(sig, geom_pts(2.0, 50.0, 5 * k));
    }
    case LemmaId::inv_lower:
      return cross(geom_pts(2.0, 30.0, 10 * k), {0.0});
    case LemmaId::continuity_zeta:
    case LemmaId::continuity_zeta_prime:
    case LemmaId::continuity_inv:
      return cross(geom_pts(2.0, 20.0, 4 * k), geom_pts(1.0 / 32, 1.0, 6 * k));
    case LemmaId::ratio_hoelder:
      return cross(geom_pts(2.0, 20.0, 4 * k), geom_pts(1.0 / 16, 1.0, 5 * k));
    case LemmaId::H_near_1: {
      LemmaGrid g;
      for (int j = 1; j <= 10 + level; ++j)
        g.points.emplace_back(1.0 + std::pow(2.0, -j), 0.0);
      return g;
    }
  }
  throw std::invalid_argument("default_grid: unknown lemma");
}

namespace {

// Memoizing corrected evaluator on the line sigma = 1 (keyed by t and order);
// the continuity lemmas revisit endpoints across pair distances.
class LineEval {
 public:
  LineEval(const ElementTable& table, double A, double E)
      : table_(table), A_(A), E_(E) {}

  CorrectedValue at(double t, int order) {
    const auto key = std::make_pair(t, order);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const CorrectedValue v = zeta_corrected(table_, {1.0, t}, A_, E_, order);
    cache_.emplace(key, v);
    return v;
  }

 private:
  const ElementTable& table_;
  double A_, E_;
  std::map<std::pair<double, int>, CorrectedValue> cache_;
};

bool tail_big(const CorrectedValue& v) {
  return v.cert > 0.1 * std::abs(v.value);
}

}  // namespace

LemmaDiagnostic lemma_diagnostic(const ElementTable& table,
                                 const DensityFit& fit, LemmaId id,
                                 double gamma, const LemmaGrid& grid) {
  LemmaDiagnostic d;
  d.lemma_id = id;
  d.gamma_used = gamma;
  if (id == LemmaId::H_near_1) return H_near_1(table, fit);
  if (!(gamma > 1.0))
    throw std::invalid_argument("lemma_diagnostic: gamma must be > 1");
  const bool needs_delta = id == LemmaId::vallee_poussin ||
                           id == LemmaId::inv_lower ||
                           id == LemmaId::continuity_inv;
  if (needs_delta && !(gamma > 1.7))
    throw std::invalid_argument(
        "lemma_diagnostic: this lemma needs gamma - 3/2 >= 0.2");
  if (fit.zero_density) {
    d.applicable = false;
    d.note = "density constant below threshold; boundary lemmas not probed";
    return d;
  }

  const double A = fit.A, E = fit.envelope_abs;
  const double delta = gamma - 1.5;
  LineEval line(table, A, E);
  d.points.reserve(grid.points.size());

  for (const auto& [a, b] : grid.points) {
    LemmaPoint pt;
    pt.a = a;
    pt.b = b;
    switch (id) {
      case LemmaId::growth: {
        const cplx s{a, b};
        const CorrectedValue v = zeta_corrected(table, s, A, E, 0);
        pt.lhs = std::abs(v.value);
        pt.rhs = 1.0 + 1.0 / std::abs(s - 1.0) + std::abs(b);
        pt.tail_flagged = tail_big(v);
        break;
      }
      case LemmaId::dprime_1:
      case LemmaId::dprime_2_log: {
        const CorrectedValue v = zeta_corrected(table, {a, b}, A, E, 1);
        pt.lhs = std::abs(v.value);
        pt.rhs = id == LemmaId::dprime_1
                     ? 1.0 + std::abs(b) * std::pow(a - 1.0, gamma - 2.0)
                     : 1.0 + std::abs(b) * std::abs(std::log(a - 1.0));
        pt.tail_flagged = tail_big(v);
        break;
      }
      case LemmaId::ddprime:
      case LemmaId::ddprime_log: {
        const CorrectedValue v = zeta_corrected(table, {a, b}, A, E, 2);
        pt.lhs = std::abs(v.value);
        pt.rhs = id == LemmaId::ddprime
                     ? 1.0 + std::abs(b) * std::pow(a - 1.0, gamma - 3.0)
                     : 1.0 + std::abs(b) * std::abs(std::log(a - 1.0));
        pt.tail_flagged = tail_big(v);
        break;
      }
      case LemmaId::line_growth: {
        const CorrectedValue v = line.at(a, 0);
        pt.lhs = std::abs(v.value);
        pt.rhs = gamma == 2.0 ? std::sqrt(a * std::log(a))
                              : std::pow(a, 1.0 / gamma);
        pt.tail_flagged = tail_big(v);
        break;
      }
      case LemmaId::vallee_poussin: {
        const int n = std::max(3, static_cast<int>(std::ceil(2.0 / delta)) + 1);
        const CorrectedValue v = zeta_corrected(table, {a, b}, A, E, 0);
        pt.lhs = std::pow(a - 1.0, 0.5 + 2.0 / (n - 1)) *
                 std::pow(1.0 + n * std::pow(b, 1.0 / gamma),
                          -static_cast<double>(n));
        pt.rhs = std::abs(v.value);
        pt.tail_flagged = tail_big(v);
        break;
      }
      case LemmaId::inv_lower: {
        const CorrectedValue v = line.at(a, 0);
        pt.lhs = std::pow(a, -8.0 / (delta * delta));
        pt.rhs = std::abs(v.value);
        pt.tail_flagged = tail_big(v);
        break;
      }
      case LemmaId::continuity_zeta:
      case LemmaId::continuity_inv: {
        const CorrectedValue v1 = line.at(a, 0);
        const CorrectedValue v2 = line.at(a + b, 0);
        if (id == LemmaId::continuity_zeta) {
          pt.lhs = std::abs(v1.value - v2.value);
          pt.rhs = std::pow(b, gamma - 1.0) * std::pow(a, 2.0 - gamma);
        } else {
          pt.lhs = std::abs(1.0 / v1.value - 1.0 / v2.value);
          pt.rhs = std::pow(b, gamma - 1.0) * std::pow(a, 17.0 / (delta * delta));
        }
        pt.tail_flagged = tail_big(v1) || tail_big(v2);
        break;
      }
      case LemmaId::continuity_zeta_prime: {
        const CorrectedValue v1 = line.at(a, 1);
        const CorrectedValue v2 = line.at(a + b, 1);
        pt.lhs = std::abs(v1.value - v2.value);
        pt.rhs = std::pow(b, gamma - 2.0) * std::pow(a, 3.0 - gamma);
        pt.tail_flagged = tail_big(v1) || tail_big(v2);
        break;
      }
      case LemmaId::ratio_hoelder: {
        // local Hoelder-(gamma-2) quotient of zeta'/zeta on [a, a+1],
        // probed at both ends of the window for pair distance b
        double best = 0.0;
        bool flagged = false;
        for (double u : {a, a + 1.0 - b}) {
          const CorrectedValue z0u = line.at(u, 0);
          const CorrectedValue z1u = line.at(u, 1);
          const CorrectedValue z0v = line.at(u + b, 0);
          const CorrectedValue z1v = line.at(u + b, 1);
          const cplx ru = z1u.value / z0u.value;
          const cplx rv = z1v.value / z0v.value;
          best = std::max(best, std::abs(rv - ru) / std::pow(b, gamma - 2.0));
          flagged = flagged || tail_big(z0u) || tail_big(z0v);
        }
        pt.lhs = best;
        pt.rhs = std::pow(a, 66.0);
        pt.tail_flagged = flagged;
        break;
      }
      case LemmaId::H_near_1:
        break;  // handled above
    }
    d.any_tail_flagged = d.any_tail_flagged || pt.tail_flagged;
    if (pt.rhs > 0.0)
      d.fitted_constant = std::max(d.fitted_constant, pt.lhs / pt.rhs);
    d.points.push_back(pt);
  }
  return d;
}

LemmaDiagnostic positivity_inequality(const ElementTable& table, double sigma,
                                      double t, int n,
                                      std::optional<DensityFit> fit) {
  if (!(sigma > 1.0))
    throw std::invalid_argument("positivity_inequality: requires sigma > 1");
  if (n < 1)
    throw std::invalid_argument("positivity_inequality: n must be >= 1");

  double A = 0.0, E = 0.0;
  if (fit) {
    A = fit->A;
    E = fit->envelope_abs;
  } else if (table.x_max >= 1e3) {
    const DensityFit f = fit_density(table, std::nullopt);
    A = f.A;
    E = f.envelope_abs;
  } else {
    E = static_cast<double>(table.size());  // crude: |N - 0*x| <= #records
  }

  const auto vals = zeta_line_batch(table, sigma, t, n, A, E);
  double S = 0.0, tol = 1e-9;
  bool flagged = false;
  for (int j = 0; j <= n; ++j) {
    const double w = j == 0 ? 1.0 : 2.0 * (1.0 - static_cast<double>(j) / n);
    const double m = std::abs(vals[static_cast<std::size_t>(j)].value);
    const double c = vals[static_cast<std::size_t>(j)].cert;
    if (c > 0.1 * m) flagged = true;
    if (m <= 2.0 * c) {
      tol += w * 10.0;  // modulus lost in the truncation noise
      flagged = true;
      continue;
    }
    S += w * std::log(m);
    tol += w * c / (m - c);
  }

  LemmaDiagnostic d;
  d.lemma_id = LemmaId::vallee_poussin;
  d.points.push_back({sigma, t, S, tol, flagged});
  d.fitted_constant = S / tol;
  d.any_tail_flagged = flagged;
  d.holds = S >= -tol;
  d.note = "weighted log-modulus positivity at n = " + std::to_string(n);
  return d;
}

LemmaDiagnostic H_near_1(const ElementTable& table, const DensityFit& fit,
                         int level) {
  if (level < 0 || level > 4)
    throw std::invalid_argument("H_near_1: level must be in [0, 4]");
  LemmaDiagnostic d;
  d.lemma_id = LemmaId::H_near_1;
  d.gamma_used = fit.gamma;

  if (fit.zero_density) {
    d.applicable = false;
    d.note = "density constant below threshold; hypothesis gamma > 2 void";
  } else if (!fit.ill_conditioned && !(fit.gamma > 2.0)) {
    d.applicable = false;
    d.note = "measured gamma <= 2; hypothesis of the boundedness claim fails";
  }

  const double A = fit.zero_density ? 0.0 : fit.A;
  const double E = fit.envelope_abs;
  const int jmax = 10 + level;
  std::vector<double> h(static_cast<std::size_t>(jmax) + 1);
  std::vector<double> H(static_cast<std::size_t>(jmax) + 1);
  bool flagged = false;
  for (int j = 1; j <= jmax; ++j) {
    h[static_cast<std::size_t>(j)] = std::pow(2.0, -j);
    const cplx s{1.0 + h[static_cast<std::size_t>(j)], 0.0};
    const CorrectedValue z0 = zeta_corrected(table, s, A, E, 0);
    const CorrectedValue z1 = zeta_corrected(table, s, A, E, 1);
    const cplx ratio = z1.value / z0.value;
    H[static_cast<std::size_t>(j)] =
        -ratio.real() - 1.0 / h[static_cast<std::size_t>(j)];
    // the two ~1/h terms cancel: propagate the ratio's uncertainty into H
    const double err_ratio = std::abs(ratio) * (z1.cert / std::abs(z1.value) +
                                                z0.cert / std::abs(z0.value));
    if (err_ratio > 0.1 * std::max(std::abs(H[static_cast<std::size_t>(j)]), 0.05))
      flagged = true;
  }

  const double H_ext = 2.0 * H[static_cast<std::size_t>(jmax)] -
                       H[static_cast<std::size_t>(jmax) - 1];
  std::vector<double> log_h, log_q;
  for (int j = 1; j <= jmax; ++j) {
    const double q = (H[static_cast<std::size_t>(j)] - H_ext) /
                     h[static_cast<std::size_t>(j)];
    LemmaPoint pt;
    pt.a = 1.0 + h[static_cast<std::size_t>(j)];
    pt.lhs = std::abs(q);
    pt.rhs = 1.0;
    pt.tail_flagged = flagged;
    d.points.push_back(pt);
    d.fitted_constant = std::max(d.fitted_constant, std::abs(q));
    if (std::abs(q) > 1e-13) {
      log_h.push_back(std::log(h[static_cast<std::size_t>(j)]));
      log_q.push_back(std::log(std::abs(q)));
    }
  }
  d.any_tail_flagged = flagged;
  if (log_h.size() >= 3) {
    const LinearFit lf = fit_linear(log_h, log_q);
    d.blowup = lf.slope <= -0.5;  // |quotient| grows as s -> 1: divergence
  }
  if (d.note.empty())
    d.note = d.blowup ? "difference quotient diverges toward s = 1"
                      : "difference quotient bounded toward s = 1";
  return d;
}

}  // namespace tauberlab
