#pragma once
// Composite Gauss-Legendre quadrature with panel doubling: the panel count doubles
// until successive composite estimates differ by less than the tolerance.  Node
// tables are computed once per order by Newton iteration on the Legendre
// recurrence and cached.

#include <complex>
#include <functional>
#include <vector>

namespace tauberlab {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |change at the last doubling|
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadResultC {
  std::complex<double> value = {0.0, 0.0};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Nodes/weights on [-1, 1]; order in [2, 64].
const std::vector<double>& gl_nodes(int order);
const std::vector<double>& gl_weights(int order);

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-9, int panels0 = 1, int order = 16,
                     int max_doublings = 22);

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                        double b, double tol = 1e-9, int panels0 = 1, int order = 16,
                        int max_doublings = 22);

// One GL panel per [brk[i], brk[i+1]] cell, no doubling.
double integrate_cells(const std::function<double(double)>& f,
                       const std::vector<double>& brk, int order = 16);

// Breakpoints for [a, b] graded geometrically toward t_star (clamped into [a, b]):
// cell widths shrink by `ratio` per level as they approach t_star on both sides.
// Used to resolve integrands that sharpen near one point of the path.
std::vector<double> graded_breakpoints(double a, double b, double t_star, int levels,
                                       double ratio = 0.5);

}  // namespace tauberlab
