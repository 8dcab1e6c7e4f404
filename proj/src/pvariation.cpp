#include "tauberlab/pvariation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tauberlab {

namespace {

void require_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_variation: p must be >= 1");
}

}  // namespace

VariationResult p_variation(const PiecewiseFunction& f, double p) {
  require_p(p);
  f.validate();
  const std::vector<cplx>& w = f.values;
  const std::size_t n = w.size();

  VariationResult res;
  res.p = p;
  if (n < 2) {
    res.witness.assign(n, 0);
    return res;
  }

  std::vector<double> best(n, 0.0);
  // prev[j] = index of the predecessor realizing best[j]; j itself when the
  // optimal chain ending at j is the singleton.
  std::vector<std::size_t> prev(n);
  for (std::size_t j = 0; j < n; ++j) prev[j] = j;

  for (std::size_t j = 1; j < n; ++j) {
    double bj = 0.0;
    std::size_t pj = j;
    for (std::size_t i = 0; i < j; ++i) {
      const double cand = best[i] + std::pow(std::abs(w[j] - w[i]), p);
      // Strict improvement only: ties keep the first maximizer (shorter witness).
      if (cand > bj) {
        bj = cand;
        pj = i;
      }
    }
    best[j] = bj;
    prev[j] = pj;
  }

  std::size_t arg = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (best[j] > best[arg]) arg = j;

  res.value = std::pow(best[arg], 1.0 / p);
  std::vector<std::size_t> chain;
  std::size_t cur = arg;
  chain.push_back(cur);
  while (prev[cur] != cur) {
    cur = prev[cur];
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());
  res.witness = std::move(chain);
  return res;
}

double p_variation_bruteforce(const PiecewiseFunction& f, double p) {
  require_p(p);
  f.validate();
  const std::vector<cplx>& w = f.values;
  const std::size_t n = w.size();
  if (n > 20) throw std::invalid_argument("p_variation_bruteforce: more than 20 values");
  if (n < 2) return 0.0;

  double best = 0.0;
  const unsigned long mask_end = 1ul << n;
  for (unsigned long mask = 0; mask < mask_end; ++mask) {
    double sum = 0.0;
    bool have_prev = false;
    cplx prev;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1ul << i))) continue;
      if (have_prev) sum += std::pow(std::abs(w[i] - prev), p);
      prev = w[i];
      have_prev = true;
    }
    best = std::max(best, sum);
  }
  return std::pow(best, 1.0 / p);
}

double witness_power_sum(const std::vector<cplx>& values,
                         const std::vector<std::size_t>& witness, double p) {
  double sum = 0.0;
  for (std::size_t k = 1; k < witness.size(); ++k) {
    if (witness[k] <= witness[k - 1] || witness[k] >= values.size())
      throw std::invalid_argument("witness_power_sum: witness not increasing/in range");
    sum += std::pow(std::abs(values[witness[k]] - values[witness[k - 1]]), p);
  }
  return sum;
}

HolderBound holder_variation_bound(double L, double alpha) {
  if (!(L >= 0.0)) throw std::invalid_argument("holder_variation_bound: L must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_variation_bound: alpha outside (0, 1]");
  return {1.0 / alpha, L};
}

double product_variation_bound(double sup_g, double sup_fprime, double sup_f,
                               double vp_g, double p) {
  if (sup_g < 0.0 || sup_fprime < 0.0 || sup_f < 0.0 || vp_g < 0.0)
    throw std::invalid_argument("product_variation_bound: negative input");
  require_p(p);
  return 2.0 * std::pow(std::pow(sup_g * sup_fprime, p) + std::pow(sup_f * vp_g, p),
                        1.0 / p);
}

}  // namespace tauberlab
