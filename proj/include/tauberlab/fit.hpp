#pragma once
// Closed-form least-squares helpers used for exponent extraction.  No iterative
// optimizers anywhere, so fits are deterministic.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tauberlab {

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 1.0;
  std::size_t n = 0;
};

inline LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_linear: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("fit_linear: need at least 2 points");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.n = n;
  // ss_tot = 0 means y is constant and the fit is exact.
  f.r_squared = (syy == 0.0) ? 1.0 : 1.0 - (syy - f.slope * sxy) / syy;
  return f;
}

// Slope-only fit of y = a*x through the origin; weighting by x^2 (plain least
// squares), which favors the largest abscissae -- the right behavior for density
// constants A = lim N(x)/x.
inline double fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("fit_through_origin: bad input");
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_through_origin: zero abscissae");
  return sxy / sxx;
}

}  // namespace tauberlab
