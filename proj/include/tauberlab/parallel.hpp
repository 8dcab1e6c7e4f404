#pragma once
// Deterministic parallel kernels.  Reductions sum fixed 4096-element blocks in
// index order and then fold the block partials pairwise; the summation tree is a
// function of n alone, so results are bit-identical for every thread count,
// including the serial mode kept as the test reference.

#include <omp.h>

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace tauberlab {

inline constexpr std::size_t kSumBlock = 4096;

enum class ExecMode { serial, parallel };

// Serial pairwise fold with a fixed association order.
inline double pairwise_fold(std::vector<double>& v) {
  std::size_t n = v.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    std::size_t m = 0;
    for (std::size_t i = 0; i + 1 < n; i += 2) v[m++] = v[i] + v[i + 1];
    if (n & 1) v[m++] = v[n - 1];
    n = m;
  }
  return v[0];
}

// Sum of f(i) for i in [0, n).  f must be safe for concurrent calls.
template <class F>
double blocked_sum(std::size_t n, F&& f, ExecMode mode = ExecMode::parallel) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(nblocks);
  const bool par = (mode == ExecMode::parallel);
#pragma omp parallel for schedule(static) if (par)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = lo + kSumBlock < n ? lo + kSumBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  return pairwise_fold(partial);
}

// Complex reduction with the same block/fold tree applied to both components.
template <class F>
std::complex<double> blocked_sum_complex(std::size_t n, F&& f,
                                         ExecMode mode = ExecMode::parallel) {
  if (n == 0) return {0.0, 0.0};
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> pre(nblocks), pim(nblocks);
  const bool par = (mode == ExecMode::parallel);
#pragma omp parallel for schedule(static) if (par)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = lo + kSumBlock < n ? lo + kSumBlock : n;
    double sr = 0.0, si = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::complex<double> v = f(i);
      sr += v.real();
      si += v.imag();
    }
    pre[static_cast<std::size_t>(b)] = sr;
    pim[static_cast<std::size_t>(b)] = si;
  }
  return {pairwise_fold(pre), pairwise_fold(pim)};
}

// Evaluate f(i) into slot i of the result; parallel scheduling cannot change the
// output order.  T must be default-constructible.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f, ExecMode mode = ExecMode::parallel) {
  std::vector<T> out(n);
  const bool par = (mode == ExecMode::parallel);
#pragma omp parallel for schedule(dynamic, 1) if (par)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return out;
}

}  // namespace tauberlab
