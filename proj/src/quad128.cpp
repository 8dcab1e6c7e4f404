#include "tauberlab/quad128.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "tauberlab/quadrature.hpp"

namespace tauberlab {

namespace {

void legendre_pair_q(int n, f128 x, f128& pn, f128& pnm1) {
  f128 p0 = 1, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const f128 p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

struct NodeTableQ {
  std::vector<f128> x, w;
};

// Double-precision roots are accurate seeds; three Newton steps reach full quad
// precision with quadratic convergence to spare.
NodeTableQ compute_gl_q(int n) {
  const std::vector<double>& seed = gl_nodes(n);
  NodeTableQ t;
  t.x.resize(n);
  t.w.resize(n);
  for (int i = 0; i < n; ++i) {
    f128 x = static_cast<f128>(seed[i]);
    f128 pn = 0, pnm1 = 0;
    for (int it = 0; it < 3; ++it) {
      legendre_pair_q(n, x, pn, pnm1);
      const f128 dpn = n * (x * pn - pnm1) / (x * x - 1);
      x -= pn / dpn;
    }
    legendre_pair_q(n, x, pn, pnm1);
    const f128 dpn = n * (x * pn - pnm1) / (x * x - 1);
    t.x[i] = x;
    t.w[i] = 2 / ((1 - x * x) * dpn * dpn);
  }
  return t;
}

const NodeTableQ& table_for_q(int order) {
  if (order < 2 || order > 64) throw std::invalid_argument("gl_q: order out of [2,64]");
  static std::map<int, NodeTableQ> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gl_q(order)).first;
  return it->second;
}

c128 composite_q(const std::function<c128(f128)>& f, const std::vector<f128>& brk,
                 int subdiv, int order, std::size_t& evals) {
  const NodeTableQ& t = table_for_q(order);
  c128 total;
  for (std::size_t c = 0; c + 1 < brk.size(); ++c) {
    const f128 w = (brk[c + 1] - brk[c]) / subdiv;
    for (int s = 0; s < subdiv; ++s) {
      const f128 lo = brk[c] + s * w;
      const f128 mid = lo + w / 2;
      c128 acc;
      for (int i = 0; i < order; ++i) acc = acc + t.w[i] * f(mid + (w / 2) * t.x[i]);
      total = total + (w / 2) * acc;
    }
  }
  evals += (brk.size() - 1) * static_cast<std::size_t>(subdiv) * static_cast<std::size_t>(order);
  return total;
}

}  // namespace

const std::vector<f128>& gl_nodes_q(int order) { return table_for_q(order).x; }
const std::vector<f128>& gl_weights_q(int order) { return table_for_q(order).w; }

Quad128Result integrate_path_q(const std::function<c128(f128)>& f, f128 a, f128 b,
                               double tol, int panels0, int order, int max_doublings,
                               const std::vector<f128>* base_breakpoints) {
  Quad128Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::vector<f128> brk;
  if (base_breakpoints != nullptr && base_breakpoints->size() >= 2) {
    brk = *base_breakpoints;
  } else {
    const int cells = panels0 < 1 ? 1 : panels0;
    brk.reserve(cells + 1);
    for (int i = 0; i <= cells; ++i) brk.push_back(a + (b - a) * i / cells);
  }
  int subdiv = 1;
  c128 prev = composite_q(f, brk, subdiv, order, res.evaluations);
  for (int d = 0; d < max_doublings; ++d) {
    subdiv *= 2;
    const c128 cur = composite_q(f, brk, subdiv, order, res.evaluations);
    const double change = static_cast<double>(abs_q(cur - prev));
    res.value = cur;
    res.error_estimate = change;
    if (change < tol) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  return res;
}

}  // namespace tauberlab
