#include "tauberlab/oscillatory.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "tauberlab/csv.hpp"
#include "tauberlab/pvariation.hpp"

namespace tauberlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSeriesRadius = 0.05;

}  // namespace

cplx phi1(cplx w) {
  if (std::abs(w) < kSeriesRadius) {
    // sum_{k>=0} w^k / (k+1)!; truncation after k=7 is below 0.05^8/9! ~ 1.1e-16
    static const double c[8] = {1.0,         1.0 / 2.0,    1.0 / 6.0,
                                1.0 / 24.0,  1.0 / 120.0,  1.0 / 720.0,
                                1.0 / 5040.0, 1.0 / 40320.0};
    cplx acc = 0.0;
    cplx pw = 1.0;
    for (int k = 0; k < 8; ++k) {
      acc += c[k] * pw;
      pw *= w;
    }
    return acc;
  }
  return (std::exp(w) - 1.0) / w;
}

cplx phi2(cplx w) {
  if (std::abs(w) < kSeriesRadius) {
    // sum_{k>=0} w^k (k+1)/(k+2)!
    static const double c[8] = {1.0 / 2.0,   1.0 / 3.0,    1.0 / 8.0,
                                1.0 / 30.0,  1.0 / 144.0,  1.0 / 840.0,
                                1.0 / 5760.0, 1.0 / 45360.0};
    cplx acc = 0.0;
    cplx pw = 1.0;
    for (int k = 0; k < 8; ++k) {
      acc += c[k] * pw;
      pw *= w;
    }
    return acc;
  }
  return (std::exp(w) * (w - 1.0) + 1.0) / (w * w);
}

cplx oscillatory_integral(const PiecewiseFunction& f, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("oscillatory_integral: x must be > 0");
  f.validate();
  if (f.a() != 0.0 || f.b() != 1.0)
    throw std::invalid_argument("oscillatory_integral: domain must be [0, 1]");

  const cplx s(0.0, -2.0 * kPi * x);
  cplx total = 0.0;
  const std::size_t pieces = f.nodes.size() - 1;
  for (std::size_t j = 0; j < pieces; ++j) {
    const double u = f.nodes[j];
    const double d = f.nodes[j + 1] - u;
    const cplx esu = std::polar(1.0, -2.0 * kPi * x * u);
    const cplx w = s * d;
    if (f.kind == PiecewiseFunction::Kind::step) {
      total += esu * f.values[j] * d * phi1(w);
    } else {
      const cplx vj = f.values[j];
      const cplx dj = f.values[j + 1] - vj;
      total += esu * d * (vj * phi1(w) + dj * phi2(w));
    }
  }
  return total;
}

double riemann_lebesgue_bound(const PiecewiseFunction& f, double x, double p) {
  if (!(x > 0.0))
    throw std::invalid_argument("riemann_lebesgue_bound: x must be > 0");
  const double vp = p_variation(f, p).value;
  return vp * std::pow(1.0 / x, 1.0 / p) + f.sup_abs() / x;
}

namespace {

BoundReport check_one(const PiecewiseFunction& f, std::size_t f_id, double x,
                      double p) {
  const double lhs_full = std::abs(oscillatory_integral(f, x));
  BoundReport rep;
  rep.f_id = f_id;
  rep.x = x;
  rep.p = p;
  if (f.is_real()) {
    rep.lhs = lhs_full;
    rep.rhs = riemann_lebesgue_bound(f, x, p);
  } else {
    // Component-wise: the inequality is for real functions.
    const PiecewiseFunction re = f.real_part();
    const PiecewiseFunction im = f.imag_part();
    const double lhs_re = std::abs(oscillatory_integral(re, x));
    const double lhs_im = std::abs(oscillatory_integral(im, x));
    const double rhs_re = riemann_lebesgue_bound(re, x, p);
    const double rhs_im = riemann_lebesgue_bound(im, x, p);
    const double ratio_re = lhs_re == 0.0 ? 0.0 : lhs_re / rhs_re;
    const double ratio_im = lhs_im == 0.0 ? 0.0 : lhs_im / rhs_im;
    if (ratio_re >= ratio_im) {
      rep.lhs = lhs_re;
      rep.rhs = rhs_re;
    } else {
      rep.lhs = lhs_im;
      rep.rhs = rhs_im;
    }
  }
  if (rep.lhs == 0.0) {
    rep.ratio = 0.0;
  } else if (rep.rhs == 0.0) {
    rep.ratio = std::numeric_limits<double>::infinity();
  } else {
    rep.ratio = rep.lhs / rep.rhs;
  }
  rep.violation = rep.ratio > 1.0 + 1e-9;
  return rep;
}

}  // namespace

std::vector<BoundReport> verify_rl(const std::vector<PiecewiseFunction>& fs,
                                   const std::vector<double>& xs, double p,
                                   ExecMode mode) {
  if (fs.empty() || xs.empty())
    throw std::invalid_argument("verify_rl: empty input collection");
  for (double x : xs)
    if (!(x > 0.0)) throw std::invalid_argument("verify_rl: grid values must be > 0");

  const std::size_t n = fs.size() * xs.size();
  return parallel_map<BoundReport>(
      n,
      [&](std::size_t idx) {
        const std::size_t fi = idx / xs.size();
        const std::size_t xi = idx % xs.size();
        return check_one(fs[fi], fi, xs[xi], p);
      },
      mode);
}

void write_bound_reports_csv(const std::vector<BoundReport>& reports,
                             const std::string& path) {
  CsvWriter out(path);
  out.raw_line("f_id,x,p,lhs,rhs,ratio");
  for (const BoundReport& r : reports)
    out.row(static_cast<long long>(r.f_id), r.x, r.p, r.lhs, r.rhs, r.ratio);
}

}  // namespace tauberlab
