#include "tauberlab/signals.hpp"

#include <cmath>
#include <stdexcept>

namespace tauberlab {

namespace {

const c128 kOneQ{1, 0};

std::vector<BoundedSignal> build_catalogue() {
  std::vector<BoundedSignal> cat;

  {
    BoundedSignal s;
    s.id = "zero";
    s.eval = [](double) { return cplx(0.0); };
    s.eval_q = [](f128) { return c128{0, 0}; };
    s.sup_bound = 0.0;
    s.closed_g = [](cplx) { return cplx(0.0); };
    s.closed_g_q = [](c128) { return c128{0, 0}; };
    s.g_tilde = [](double) { return cplx(0.0); };
    s.exact_integral = [](double) { return 0.0; };
    s.has_g0 = true;
    s.g0 = 0.0;
    s.hypothesis_ok = true;
    cat.push_back(std::move(s));
  }
  {
    // g(z) = 1/z has no continuous extension to 0; int_0^T f diverges.
    BoundedSignal s;
    s.id = "one";
    s.eval = [](double) { return cplx(1.0); };
    s.eval_q = [](f128) { return c128{1, 0}; };
    s.sup_bound = 1.0;
    s.closed_g = [](cplx z) { return 1.0 / z; };
    s.closed_g_q = [](c128 z) { return kOneQ / z; };
    s.exact_integral = [](double T) { return T; };
    s.has_g0 = false;
    s.hypothesis_ok = false;
    cat.push_back(std::move(s));
  }
  {
    BoundedSignal s;
    s.id = "exp_decay";
    s.eval = [](double t) { return cplx(std::exp(-t)); };
    s.eval_q = [](f128 t) { return c128{expq(-t), 0}; };
    s.sup_bound = 1.0;
    s.closed_g = [](cplx z) { return 1.0 / (1.0 + z); };
    s.closed_g_q = [](c128 z) { return kOneQ / (kOneQ + z); };
    s.g_tilde = [](double t) { return 1.0 / cplx(1.0, t); };
    s.exact_integral = [](double T) { return 1.0 - std::exp(-T); };
    s.has_g0 = true;
    s.g0 = 1.0;
    s.hypothesis_ok = true;
    cat.push_back(std::move(s));
  }
  {
    // int_0^T f = T e^{-T}, so the convergence error is known exactly.
    BoundedSignal s;
    s.id = "exp_linear";
    s.eval = [](double t) { return cplx(std::exp(-t) * (1.0 - t)); };
    s.eval_q = [](f128 t) { return c128{expq(-t) * (1 - t), 0}; };
    s.sup_bound = 1.0;
    s.closed_g = [](cplx z) { return z / ((1.0 + z) * (1.0 + z)); };
    s.closed_g_q = [](c128 z) {
      const c128 w = kOneQ + z;
      return z / (w * w);
    };
    s.g_tilde = [](double t) {
      const cplx it(0.0, t);
      return it / ((1.0 + it) * (1.0 + it));
    };
    s.exact_integral = [](double T) { return T * std::exp(-T); };
    s.has_g0 = true;
    s.g0 = 0.0;
    s.hypothesis_ok = true;
    cat.push_back(std::move(s));
  }
  {
    BoundedSignal s;
    s.id = "cos_decay";
    s.eval = [](double t) { return cplx(std::exp(-t) * std::cos(t)); };
    s.eval_q = [](f128 t) { return c128{expq(-t) * cosq(t), 0}; };
    s.sup_bound = 1.0;
    s.closed_g = [](cplx z) {
      const cplx w = 1.0 + z;
      return w / (w * w + 1.0);
    };
    s.closed_g_q = [](c128 z) {
      const c128 w = kOneQ + z;
      return w / (w * w + kOneQ);
    };
    s.g_tilde = [](double t) {
      const cplx w(1.0, t);
      return w / (w * w + 1.0);
    };
    s.exact_integral = [](double T) {
      return 0.5 * (1.0 + std::exp(-T) * (std::sin(T) - std::cos(T)));
    };
    s.has_g0 = true;
    s.g0 = 0.5;
    s.hypothesis_ok = true;
    cat.push_back(std::move(s));
  }
  {
    // Boundary function 1/(1 - t^2) leaves L^1: int_0^T f = 1 - cos T keeps
    // oscillating even though g extends continuously to 0 with g(0) = 1.
    BoundedSignal s;
    s.id = "sin_t";
    s.eval = [](double t) { return cplx(std::sin(t)); };
    s.eval_q = [](f128 t) { return c128{sinq(t), 0}; };
    s.sup_bound = 1.0;
    s.closed_g = [](cplx z) { return 1.0 / (1.0 + z * z); };
    s.closed_g_q = [](c128 z) { return kOneQ / (kOneQ + z * z); };
    s.g_tilde = [](double t) { return cplx(1.0 / (1.0 - t * t)); };
    s.exact_integral = [](double T) { return 1.0 - std::cos(T); };
    s.has_g0 = true;
    s.g0 = 1.0;
    s.hypothesis_ok = false;
    cat.push_back(std::move(s));
  }
  return cat;
}

}  // namespace

const std::vector<BoundedSignal>& signal_catalogue() {
  static const std::vector<BoundedSignal> cat = build_catalogue();
  return cat;
}

const BoundedSignal& signal_by_id(const std::string& id) {
  for (const BoundedSignal& s : signal_catalogue())
    if (s.id == id) return s;
  std::string known;
  for (const BoundedSignal& s : signal_catalogue()) {
    if (!known.empty()) known += ", ";
    known += s.id;
  }
  throw std::invalid_argument("signal_by_id: unknown id '" + id + "' (known: " + known + ")");
}

}  // namespace tauberlab
