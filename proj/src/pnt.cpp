#include "tauberlab/pnt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tauberlab/fit.hpp"

namespace tauberlab {

double delta_pnt(double gamma) {
  if (!(gamma > 2.0))
    throw std::invalid_argument("delta_pnt: requires gamma > 2");
  return std::min((gamma - 2.0) / 6.0, 1.0 / 198.0);
}

Rational delta_pnt(const Rational& gamma) {
  if (!(gamma > Rational(2)))
    throw std::invalid_argument("delta_pnt: requires gamma > 2");
  return rat_min((gamma - Rational(2)) / Rational(6), Rational(1, 198));
}

double delta_mertens(double gamma) {
  if (!(gamma > 1.5))
    throw std::invalid_argument("delta_mertens: requires gamma > 3/2");
  const double d = gamma - 1.5;
  return d * d / 72.0;
}

Rational delta_mertens(const Rational& gamma) {
  if (!(gamma > Rational(3, 2)))
    throw std::invalid_argument("delta_mertens: requires gamma > 3/2");
  const Rational d = gamma - Rational(3, 2);
  return d * d / Rational(72);
}

ExponentFit exponent_fit(const std::vector<double>& x_grid,
                         const std::vector<double>& errors) {
  if (x_grid.size() != errors.size())
    throw std::invalid_argument("exponent_fit: grid and errors differ in length");
  if (x_grid.size() < 5)
    throw std::invalid_argument("exponent_fit: needs at least 5 samples");
  std::vector<double> u, y;
  u.reserve(x_grid.size());
  y.reserve(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > std::exp(1.0)))
      throw std::invalid_argument("exponent_fit: x must exceed e (log log > 0)");
    if (!(errors[i] > 0.0))
      throw std::invalid_argument("exponent_fit: errors must be positive");
    const double lx = std::log(x_grid[i]);
    u.push_back(std::log(lx));
    y.push_back(std::log(errors[i] * lx / x_grid[i]));
  }
  const LinearFit lf = fit_linear(u, y);
  return {lf.slope, lf.r_squared};
}

namespace {

std::vector<double> profile_grid(double x_max, int count = 40) {
  const double lo = 16.0;
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    xs.push_back(lo * std::pow(x_max / lo, static_cast<double>(i) / (count - 1)));
  return xs;
}

// Positive/negative excursions regressed separately; the fit of the side with
// the larger total mass is reported.
ExponentFit sign_split_fit(const std::vector<double>& xs,
                           const std::vector<double>& errs) {
  std::vector<double> xp, ep, xn, en;
  double mass_p = 0.0, mass_n = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (errs[i] > 0.0) {
      xp.push_back(xs[i]);
      ep.push_back(errs[i]);
      mass_p += errs[i];
    } else if (errs[i] < 0.0) {
      xn.push_back(xs[i]);
      en.push_back(-errs[i]);
      mass_n -= errs[i];
    }
  }
  const bool p_ok = ep.size() >= 5, n_ok = en.size() >= 5;
  if (p_ok && (!n_ok || mass_p >= mass_n)) return exponent_fit(xp, ep);
  if (n_ok) return exponent_fit(xn, en);
  return {};
}

bool near_zero_density(const ElementTable& t) {
  return static_cast<double>(t.size()) < 0.01 * t.x_max;
}

}  // namespace

ErrorProfile pnt_profile(const ElementTable& table, double gamma) {
  if (!(table.x_max >= 1e3))
    throw std::invalid_argument("pnt_profile: requires x_max >= 1e3");
  ErrorProfile out;
  if (gamma > 2.0) {
    out.delta_used = delta_pnt(gamma);
  } else {
    out.delta_flagged = true;  // outside the theorem range: no log gain
  }
  out.applicable = !near_zero_density(table);
  out.x_grid = profile_grid(table.x_max);
  for (double x : out.x_grid) {
    const double lx = std::log(x);
    const double err = static_cast<double>(count_pi(table, x)) - x / lx;
    out.raw_error.push_back(err);
    out.normalized.push_back(err * std::pow(lx, 1.0 + out.delta_used) / x);
  }
  out.fit = sign_split_fit(out.x_grid, out.raw_error);
  return out;
}

ErrorProfile mertens_profile(const ElementTable& table, double gamma) {
  if (!(table.x_max >= 1e3))
    throw std::invalid_argument("mertens_profile: requires x_max >= 1e3");
  ErrorProfile out;
  if (gamma > 1.5) {
    out.delta_used = delta_mertens(gamma);
  } else {
    out.delta_flagged = true;
  }
  out.applicable = !near_zero_density(table);
  out.x_grid = profile_grid(table.x_max);
  for (double x : out.x_grid) {
    const double err = static_cast<double>(count_M(table, x));
    out.raw_error.push_back(err);
    out.normalized.push_back(err * std::pow(std::log(x), out.delta_used) / x);
  }
  out.fit = sign_split_fit(out.x_grid, out.raw_error);
  return out;
}

void PsiData::validate() const {
  if (t.empty() || t.size() != v.size())
    throw std::invalid_argument("psi data: empty or mismatched arrays");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] < t[i - 1])
      throw std::invalid_argument("psi data: t grid must be nondecreasing");
    if (mode == PsiMode::step && t[i] == t[i - 1])
      throw std::invalid_argument("psi data: repeated t needs linear mode");
    if (v[i] < v[i - 1])
      throw std::invalid_argument("psi data: psi must be nondecreasing");
  }
  if (t_end < t.back())
    throw std::invalid_argument("psi data: t_end before the last node");
}

PsiData psi_data_from_table(const ElementTable& table) {
  PsiData d;
  d.mode = PsiMode::step;
  d.t_end = std::log(table.x_max);
  d.t.push_back(0.0);
  d.v.push_back(0.0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.lambda[i] <= 0.0) continue;
    const double ti = table.log_norm[i];
    const double vi = table.psi_prefix[i + 1];
    if (!d.t.empty() && d.t.back() == ti)
      d.v.back() = vi;  // equal norms: merge into one jump
    else {
      d.t.push_back(ti);
      d.v.push_back(vi);
    }
  }
  d.validate();
  return d;
}

double psi_data_eval(const PsiData& data, double t) {
  data.validate();
  if (t < data.t.front() || t > data.t_end)
    throw std::invalid_argument("psi data: evaluation outside the horizon");
  const auto it = std::upper_bound(data.t.begin(), data.t.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - data.t.begin());
  if (k == 0) return data.v.front();
  if (k == data.t.size() || data.mode == PsiMode::step) return data.v[k - 1];
  const double ta = data.t[k - 1], tb = data.t[k];
  if (tb == ta) return data.v[k];
  const double w = (t - ta) / (tb - ta);
  return data.v[k - 1] + w * (data.v[k] - data.v[k - 1]);
}

namespace {

// int_a^b (v(t) e^{-t} - 1) dt for one cell with v linear from va at a to vb
// at b: va(e^{-a} - e^{-b}) + m(e^{-a} - e^{-b} - (b-a)e^{-b}) - (b-a),
// m = (vb - va)/(b - a); step cells have m = 0.
double cell_excess(double a, double b, double va, double vb) {
  if (b <= a) return 0.0;
  const double ea = std::exp(-a), eb = std::exp(-b);
  const double m = (vb - va) / (b - a);
  return va * (ea - eb) + m * (ea - eb - (b - a) * eb) - (b - a);
}

struct CellView {
  double ta, tb, va, vb;
};

// Value endpoints of the data cell [t_k, t_{k+1}]; the region after the last
// node is constant at v.back() through t_end.
CellView cell_at(const PsiData& d, std::size_t k) {
  const std::size_t n = d.t.size();
  if (k + 1 >= n) return {d.t.back(), d.t_end, d.v.back(), d.v.back()};
  if (d.mode == PsiMode::step) return {d.t[k], d.t[k + 1], d.v[k], d.v[k]};
  return {d.t[k], d.t[k + 1], d.v[k], d.v[k + 1]};
}

}  // namespace

double psi_excess_integral(const PsiData& data, double a, double b) {
  data.validate();
  if (!(a <= b))
    throw std::invalid_argument("psi_excess_integral: needs a <= b");
  if (a < data.t.front() - 1e-12 || b > data.t_end + 1e-12)
    throw std::invalid_argument("psi_excess_integral: range outside the horizon");
  a = std::max(a, data.t.front());
  b = std::min(b, data.t_end);

  const auto first = std::upper_bound(data.t.begin(), data.t.end(), a);
  std::size_t k = first == data.t.begin()
                      ? 0
                      : static_cast<std::size_t>(first - data.t.begin()) - 1;
  double total = 0.0;
  while (true) {
    const CellView c = cell_at(data, k);
    const double lo = std::max(a, c.ta), hi = std::min(b, c.tb);
    if (hi > lo) {
      double vlo = c.va, vhi = c.vb;
      if (c.tb > c.ta) {
        const double m = (c.vb - c.va) / (c.tb - c.ta);
        vlo = c.va + m * (lo - c.ta);
        vhi = c.va + m * (hi - c.ta);
      }
      total += cell_excess(lo, hi, vlo, vhi);
    }
    if (c.tb >= b || k + 1 >= data.t.size()) break;
    ++k;
  }
  return total;
}

namespace {

double surplus_threshold(double delta) {
  return (1.0 + delta) * (1.0 - std::exp(-delta / 3.0)) - delta / 3.0;
}

double deficit_threshold(double delta) {
  return delta / 3.0 - (1.0 - delta) * (std::exp(delta / 3.0) - 1.0);
}

double weak_threshold(double delta) { return delta * delta / 6.0; }

// Largest delta in (0, cap] with margin(delta) >= 0: descending scan to
// bracket the boundary, then bisection.
template <class Margin>
double largest_delta(double cap, const Margin& margin) {
  if (!(cap > 0.0)) return 0.0;
  const double step = std::min(0.005, cap / 8.0);
  double found = -1.0;
  for (double d = cap; d > 0.25 * step; d -= step) {
    if (margin(d) >= 0.0) {
      found = d;
      break;
    }
  }
  if (found < 0.0) return 0.0;
  double lo = found, hi = std::min(found + step, cap);
  if (hi <= lo || margin(hi) >= 0.0) return hi > lo ? hi : lo;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

BumpResult psi_bump_inversion(const PsiData& data, double t0,
                              const std::function<double(double)>& I_tail) {
  data.validate();
  if (t0 < data.t.front() || t0 > data.t_end)
    throw std::invalid_argument("psi_bump_inversion: t0 outside the horizon");

  auto excess = [&](double a, double b) {
    if (I_tail) return I_tail(a) - I_tail(b);
    return psi_excess_integral(data, a, b);
  };

  const double cap_up = std::min(1.5, 3.0 * (data.t_end - t0));
  const double cap_down = std::min(1.5, 3.0 * (t0 - data.t.front()));

  BumpResult r;
  r.delta_up = largest_delta(cap_up, [&](double d) {
    return excess(t0, t0 + d / 3.0) - surplus_threshold(d);
  });
  r.delta_down = largest_delta(cap_down, [&](double d) {
    return -excess(t0 - d / 3.0, t0) - deficit_threshold(d);
  });
  r.delta = std::max(r.delta_up, r.delta_down);

  const double weak_up = largest_delta(cap_up, [&](double d) {
    return excess(t0, t0 + d / 3.0) - weak_threshold(d);
  });
  const double weak_down = largest_delta(cap_down, [&](double d) {
    return -excess(t0 - d / 3.0, t0) - weak_threshold(d);
  });
  r.delta_weak = std::max(weak_up, weak_down);
  return r;
}

double psi_bump_width(const PsiData& data, double t0,
                      const std::function<double(double)>& I_tail) {
  return psi_bump_inversion(data, t0, I_tail).delta;
}

ChainReport psi_to_pi_check(const ElementTable& table, double x) {
  if (!(x >= 16.0))
    throw std::invalid_argument("psi_to_pi_check: requires x >= 16");
  if (x > table.x_max * (1.0 + 1e-12))
    throw std::invalid_argument("psi_to_pi_check: x exceeds x_max");

  const double lx = std::log(x);
  const double llx = std::log(lx);
  const double y = x / (lx * lx);

  ChainReport rep;
  rep.x = x;
  rep.flagged_small_x = y < 1.0;

  const double psi_x = count_psi(table, x);
  const double psi_y = rep.flagged_small_x ? 0.0 : count_psi(table, y);
  const double pi_x = static_cast<double>(count_pi(table, x));
  const double pi_y = rep.flagged_small_x ? 0.0 : static_cast<double>(count_pi(table, y));
  const double N_y = rep.flagged_small_x ? 1.0 : static_cast<double>(count_N(table, y));
  const double ly = std::log(std::max(y, 1.0));

  const double s2_rhs = (pi_x - pi_y) * ly;
  const double s3_rhs = (pi_x - N_y) * lx - 2.0 * pi_x * llx;

  rep.steps.push_back({"psi(x) >= psi(x) - psi(y)", psi_x, psi_x - psi_y, false});
  rep.steps.push_back(
      {"psi(x) - psi(y) >= (pi(x) - pi(y)) log y", psi_x - psi_y, s2_rhs, false});
  rep.steps.push_back(
      {"(pi(x) - pi(y)) log y >= (pi(x) - N(y)) log x - 2 pi(x) log log x",
       s2_rhs, s3_rhs, false});

  rep.all_hold = true;
  for (ChainStep& s : rep.steps) {
    s.ok = s.lhs >= s.rhs - 1e-9;
    rep.all_hold = rep.all_hold && s.ok;
  }

  rep.lhs = pi_x * lx - psi_x;
  const double scale = x * llx / lx;
  rep.fitted_C = rep.lhs / scale;
  rep.rhs = rep.fitted_C * scale;
  return rep;
}

}  // namespace tauberlab
