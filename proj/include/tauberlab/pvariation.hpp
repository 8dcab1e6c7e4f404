#pragma once
// p-variation of piecewise functions over their discrete value carrier:
// V_p(f) = ( sup over subsequences i_0 < ... < i_m of sum |f_{i_j} - f_{i_{j-1}}|^p )^{1/p}.
// Computed exactly by an O(n^2) dynamic program; an exhaustive oracle over all
// subsequences is kept for small inputs.

#include <cstddef>
#include <vector>

#include "tauberlab/piecewise.hpp"

namespace tauberlab {

struct VariationResult {
  double value = 0.0;
  double p = 1.0;
  // Indices into the value carrier realizing the optimum, in increasing order.
  std::vector<std::size_t> witness;
};

// DP recurrence best[j] = max_{i<j} (best[i] + |f_j - f_i|^p), ties broken toward
// the first maximizer.  Complexity O(n^2), accepted up to n = 1e5.
VariationResult p_variation(const PiecewiseFunction& f, double p);

// Same contract computed by exhaustive enumeration of all subsequences of the
// value carrier; rejects more than 20 values (combinatorial blowup).
double p_variation_bruteforce(const PiecewiseFunction& f, double p);

// Sum |w_{i_j} - w_{i_{j-1}}|^p along a witness; re-evaluating a result's witness
// must reproduce value^p.
double witness_power_sum(const std::vector<cplx>& values,
                         const std::vector<std::size_t>& witness, double p);

// V_{1/alpha}(f) <= L for any L-Hoelder-alpha function on [0,1]: returns (p, bound).
struct HolderBound {
  double p = 1.0;
  double bound = 0.0;
};
HolderBound holder_variation_bound(double L, double alpha);

// Upper bound 2 (sup_g^p sup_fprime^p + sup_f^p vp_g^p)^{1/p} for V_p(f*g) with f
// differentiable and g of finite p-variation on [0,1].
double product_variation_bound(double sup_g, double sup_fprime, double sup_f,
                               double vp_g, double p);

}  // namespace tauberlab
