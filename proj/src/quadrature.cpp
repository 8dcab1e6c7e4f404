#include "tauberlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tauberlab {

namespace {

// Legendre P_n and P_{n-1} at x via the three-term recurrence.
void legendre_pair(int n, double x, double& pn, double& pnm1) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    pn = p0;
    pnm1 = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

struct NodeTable {
  std::vector<double> x, w;
};

NodeTable compute_gl(int n) {
  NodeTable t;
  t.x.resize(n);
  t.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Standard initial guess for the i-th root of P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pn = 0.0, pnm1 = 0.0;
    for (int it = 0; it < 64; ++it) {
      legendre_pair(n, x, pn, pnm1);
      const double dpn = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, pn, pnm1);
    const double dpn = n * (x * pn - pnm1) / (x * x - 1.0);
    t.x[i] = x;
    t.w[i] = 2.0 / ((1.0 - x * x) * dpn * dpn);
  }
  return t;
}

const NodeTable& table_for(int order) {
  if (order < 2 || order > 64) throw std::invalid_argument("gl: order out of [2,64]");
  static std::map<int, NodeTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
  return it->second;
}

template <class T, class F>
T composite(const F& f, double a, double b, int panels, int order, std::size_t& evals) {
  const NodeTable& t = table_for(order);
  const double h = (b - a) / panels;
  T total{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    T acc{};
    for (int i = 0; i < order; ++i) acc += t.w[i] * f(mid + 0.5 * h * t.x[i]);
    total += acc * (0.5 * h);
  }
  evals += static_cast<std::size_t>(panels) * static_cast<std::size_t>(order);
  return total;
}

template <class T, class R, class F>
R integrate_impl(const F& f, double a, double b, double tol, int panels0, int order,
                 int max_doublings) {
  if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
  R res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  int panels = std::max(1, panels0);
  T prev = composite<T>(f, a, b, panels, order, res.evaluations);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    const T cur = composite<T>(f, a, b, panels, order, res.evaluations);
    const double change = std::abs(cur - prev);
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

}  // namespace

const std::vector<double>& gl_nodes(int order) { return table_for(order).x; }
const std::vector<double>& gl_weights(int order) { return table_for(order).w; }

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol, int panels0, int order, int max_doublings) {
  return integrate_impl<double, QuadResult>(f, a, b, tol, panels0, order, max_doublings);
}

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                        double b, double tol, int panels0, int order, int max_doublings) {
  return integrate_impl<std::complex<double>, QuadResultC>(f, a, b, tol, panels0, order,
                                                           max_doublings);
}

double integrate_cells(const std::function<double(double)>& f,
                       const std::vector<double>& brk, int order) {
  if (brk.size() < 2) throw std::invalid_argument("integrate_cells: need >= 2 breakpoints");
  const NodeTable& t = table_for(order);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < brk.size(); ++c) {
    const double lo = brk[c], hi = brk[c + 1];
    if (!(hi >= lo)) throw std::invalid_argument("integrate_cells: breakpoints not sorted");
    const double h = hi - lo, mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += t.w[i] * f(mid + 0.5 * h * t.x[i]);
    total += acc * 0.5 * h;
  }
  return total;
}

std::vector<double> graded_breakpoints(double a, double b, double t_star, int levels,
                                       double ratio) {
  if (!(b > a)) throw std::invalid_argument("graded_breakpoints: empty interval");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("graded_breakpoints: ratio outside (0,1)");
  const double c = std::clamp(t_star, a, b);
  std::vector<double> brk{a, b};
  double left = c - a, right = b - c;
  double scale = 1.0;
  for (int l = 0; l < levels; ++l) {
    scale *= ratio;
    if (left * scale > 0.0) brk.push_back(c - left * scale);
    if (right * scale > 0.0) brk.push_back(c + right * scale);
  }
  if (c > a && c < b) brk.push_back(c);
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
  return brk;
}

}  // namespace tauberlab
