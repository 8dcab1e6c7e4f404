#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tauberlab {

enum class GeneratorKind { classical, explicit_list, gaussian, beurling };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::classical;
  std::vector<double> explicit_norms;  // explicit_list only
  double A = 1.0;                      // beurling target density
  double gamma = 2.5;                  // beurling target regularity exponent
  std::uint64_t seed = 0;              // beurling jitter stream
};

struct PrimeSystem {
  std::vector<double> norms;  // nondecreasing, all > 1, complete up to q_max
  GeneratorKind kind = GeneratorKind::classical;
  double q_max = 0.0;
  double beurling_A = 0.0;
  double beurling_gamma = 0.0;
  std::uint64_t seed = 0;
};

PrimeSystem build_primes(const GeneratorSpec& gen, double q_max);

struct SigEntry {
  std::int32_t prime;  // index into PrimeSystem::norms
  std::int32_t exp;
};

// Every semigroup element of norm <= x_max, one record each, sorted by
// (norm, signature lex).  Equal norms from distinct elements stay distinct
// records.  Struct-of-arrays with a shared signature arena; prefix sums give
// O(log n) counting queries.
struct ElementTable {
  PrimeSystem primes;
  double x_max = 0.0;

  std::vector<double> norm;
  std::vector<double> log_norm;
  std::vector<double> lambda;
  std::vector<std::int8_t> mu;
  std::vector<std::int8_t> omega;
  std::vector<std::int16_t> bigomega;
  std::vector<std::int64_t> sig_begin;  // record i owns sig_flat[sig_begin[i], sig_begin[i+1])
  std::vector<SigEntry> sig_flat;

  // prefix[i] = sum over records [0, i)
  std::vector<double> psi_prefix;
  std::vector<std::int64_t> pi_prefix;
  std::vector<std::int64_t> m_prefix;

  std::size_t size() const { return norm.size(); }
};

ElementTable build_elements(const PrimeSystem& primes, double x_max,
                            std::size_t max_records = 20000000);

// Counting queries; all reject x > x_max.
std::int64_t count_N(const ElementTable& table, double x);
std::int64_t count_pi(const ElementTable& table, double x);
double count_psi(const ElementTable& table, double x);
std::int64_t count_M(const ElementTable& table, double x);

enum class ConvolutionKind { lambda_log, mu_unit };

struct ConvolutionCheck {
  ConvolutionKind which;
  double max_deviation = 0.0;
  std::size_t worst_record = 0;
  std::size_t records_checked = 0;
};

// Enumerates every divisor of every record from its exponent signature and
// checks sum_{d|g} Lambda(d) = log|g| (lambda_log) or sum_{d|g} mu(d) =
// [g = identity] (mu_unit).
ConvolutionCheck convolution_identity_check(const ElementTable& table,
                                            ConvolutionKind which);

struct DensityFit {
  double A = 0.0;
  double gamma = 0.0;
  double residual = 0.0;        // rms residual of the log-log regression
  double envelope_abs = 0.0;    // measured sup_x |N(x) - A x| over [1, x_max]
  bool ill_conditioned = false; // |N - A x| bounded (classical); gamma not fitted
  bool zero_density = false;    // A ~ 0 (logarithmic growth); fit not meaningful
};

// N(x) = A x + O(x / log^gamma x) regression over a geometric grid.  The
// classical table trips ill_conditioned (residual <= 1 at every x); tables
// with A ~ 0 trip zero_density.
DensityFit fit_density(const ElementTable& table,
                       std::optional<double> A_hint = std::nullopt);

}  // namespace tauberlab
