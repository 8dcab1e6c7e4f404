#pragma once
// __float128 complex arithmetic and path quadrature for the contour kernels.
//
// The mollified kernel e^{T(z-sigma)}(1/(z-sigma) + z/R^2) reaches magnitude
// e^{T(R-sigma)} (about 2e21 at R=5, T=10) on the integration circle while the
// reconstructed value is O(1); a double-precision quadrature sum loses all ~16
// digits to that cancellation.  Every path quadrature here therefore runs at
// 113-bit precision and only the final value is narrowed to double, leaving
// ~1e-12 of headroom at the worst acceptance point.

#include <quadmath.h>

#include <complex>
#include <functional>
#include <vector>

namespace tauberlab {

using f128 = __float128;

struct c128 {
  f128 re = 0, im = 0;
};

inline c128 operator+(c128 a, c128 b) { return {a.re + b.re, a.im + b.im}; }
inline c128 operator-(c128 a, c128 b) { return {a.re - b.re, a.im - b.im}; }
inline c128 operator*(c128 a, c128 b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline c128 operator*(f128 s, c128 a) { return {s * a.re, s * a.im}; }
inline c128 operator/(c128 a, c128 b) {
  const f128 d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline c128 conj(c128 a) { return {a.re, -a.im}; }
inline f128 abs_q(c128 a) { return hypotq(a.re, a.im); }
inline c128 cexp_q(c128 z) {
  const f128 m = expq(z.re);
  return {m * cosq(z.im), m * sinq(z.im)};
}
inline c128 widen(std::complex<double> z) {
  return {static_cast<f128>(z.real()), static_cast<f128>(z.imag())};
}
inline std::complex<double> narrow(c128 z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

// Nodes/weights on [-1, 1] refined to quad precision (Newton from double seeds).
const std::vector<f128>& gl_nodes_q(int order);
const std::vector<f128>& gl_weights_q(int order);

struct Quad128Result {
  c128 value;
  double error_estimate = 0.0;  // |change at the last panel doubling|, in double
  std::size_t evaluations = 0;
  bool converged = false;
};

// Composite GL over t in [a, b] with panel doubling until the successive change
// drops below tol (absolute, measured in double).  Optional graded breakpoints
// let callers refine toward a near-pole parameter before doubling starts.
Quad128Result integrate_path_q(const std::function<c128(f128)>& f, f128 a, f128 b,
                               double tol = 1e-9, int panels0 = 8, int order = 32,
                               int max_doublings = 12,
                               const std::vector<f128>* base_breakpoints = nullptr);

}  // namespace tauberlab
