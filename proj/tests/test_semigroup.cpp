#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tauberlab/semigroup.hpp"

using namespace tauberlab;

namespace {

ElementTable two_gen_table(double x_max) {
  GeneratorSpec gen;
  gen.kind = GeneratorKind::explicit_list;
  gen.explicit_norms = {2.0, 3.0};
  return build_elements(build_primes(gen, 3.0), x_max);
}

ElementTable classical_table(double x_max) {
  GeneratorSpec gen;
  return build_elements(build_primes(gen, x_max), x_max);
}

// independent trial-division sieve for cross-checks
std::vector<long long> primes_below(long long n) {
  std::vector<long long> ps;
  for (long long k = 2; k <= n; ++k) {
    bool prime = true;
    for (long long d = 2; d * d <= k; ++d)
      if (k % d == 0) {
        prime = false;
        break;
      }
    if (prime) ps.push_back(k);
  }
  return ps;
}

}  // namespace

TEST_CASE("two-generator table up to 10 is enumerated exactly") {
  const ElementTable t = two_gen_table(10.0);
  const std::vector<double> want_norms{1, 2, 3, 4, 6, 8, 9};
  REQUIRE(t.size() == want_norms.size());
  for (std::size_t i = 0; i < want_norms.size(); ++i)
    CHECK(t.norm[i] == want_norms[i]);

  const std::vector<int> want_mu{1, -1, -1, 0, 1, 0, 0};
  for (std::size_t i = 0; i < want_mu.size(); ++i)
    CHECK(static_cast<int>(t.mu[i]) == want_mu[i]);

  // lambda is log 2 on {2,4,8}, log 3 on {3,9}, zero elsewhere
  CHECK(t.lambda[0] == 0.0);
  CHECK(t.lambda[1] == doctest::Approx(std::log(2.0)));
  CHECK(t.lambda[3] == doctest::Approx(std::log(2.0)));
  CHECK(t.lambda[4] == 0.0);
  CHECK(count_psi(t, 10.0) ==
        doctest::Approx(3.0 * std::log(2.0) + 2.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(count_M(t, 10.0) == 0);
  CHECK(count_pi(t, 10.0) == 2);
  CHECK(count_N(t, 10.0) == 7);
  CHECK(count_N(t, 5.0) == 4);
}

TEST_CASE("two-generator table up to 1e4 has 67 elements") {
  const ElementTable t = two_gen_table(1e4);
  CHECK(t.size() == 67);
}

TEST_CASE("classical table matches an independent sieve") {
  const ElementTable t = classical_table(2000.0);
  CHECK(count_N(t, 2000.0) == 2000);
  const std::vector<long long> ps = primes_below(2000);
  CHECK(count_pi(t, 2000.0) == static_cast<long long>(ps.size()));

  // psi from the sieve: sum of log p over prime powers p^k <= x
  double psi = 0.0;
  for (long long p : ps)
    for (double q = static_cast<double>(p); q <= 2000.0;
         q *= static_cast<double>(p))
      psi += std::log(static_cast<double>(p));
  CHECK(count_psi(t, 2000.0) == doctest::Approx(psi).epsilon(1e-12));

  // Mertens from an independent mu sieve
  std::vector<int> mu(2001, 1);
  {
    std::vector<int> a(2001);
    for (int i = 0; i <= 2000; ++i) a[i] = i;
    for (long long p : ps) {
      if (p > 2000) break;
      for (long long k = p; k <= 2000; k += p) {
        int c = 0;
        while (a[k] % p == 0) {
          a[k] /= static_cast<int>(p);
          ++c;
        }
        if (c >= 2)
          mu[k] = 0;
        else if (c == 1)
          mu[k] = -mu[k];
      }
    }
  }
  long long M = 0;
  for (int k = 1; k <= 2000; ++k) M += mu[k];
  CHECK(count_M(t, 2000.0) == M);
  CHECK(count_M(t, 10.0) == -1);
  CHECK(count_M(t, 100.0) == 1);
}

TEST_CASE("gaussian norms up to 25 are the split/inert/ramified list") {
  GeneratorSpec gen;
  gen.kind = GeneratorKind::gaussian;
  const PrimeSystem sys = build_primes(gen, 25.0);
  const std::vector<double> want{2, 5, 5, 9, 13, 13, 17, 17};
  REQUIRE(sys.norms.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(sys.norms[i] == want[i]);
}

TEST_CASE("empty generator lists give the identity-only semigroup") {
  GeneratorSpec empty_explicit;
  empty_explicit.kind = GeneratorKind::explicit_list;
  const ElementTable t = build_elements(build_primes(empty_explicit, 10.0), 100.0);
  REQUIRE(t.size() == 1);
  CHECK(t.norm[0] == 1.0);
  CHECK(count_N(t, 100.0) == 1);
  CHECK(count_psi(t, 100.0) == 0.0);
}

TEST_CASE("generator inputs are validated") {
  GeneratorSpec low;
  low.kind = GeneratorKind::explicit_list;
  low.explicit_norms = {0.5, 2.0};
  CHECK_THROWS_AS(build_primes(low, 10.0), std::invalid_argument);

  GeneratorSpec unsorted;
  unsorted.kind = GeneratorKind::explicit_list;
  unsorted.explicit_norms = {3.0, 2.0};
  const PrimeSystem sys = build_primes(unsorted, 3.0);
  CHECK(std::is_sorted(sys.norms.begin(), sys.norms.end()));
}

TEST_CASE("element cap aborts oversized enumerations") {
  GeneratorSpec gen;
  const PrimeSystem sys = build_primes(gen, 1e5);
  CHECK_THROWS_AS(build_elements(sys, 1e5, 1000), std::length_error);
}

TEST_CASE("records stay within the horizon and prefixes close") {
  const ElementTable t = classical_table(5000.0);
  CHECK(std::is_sorted(t.norm.begin(), t.norm.end()));
  CHECK(t.norm.back() <= 5000.0 * (1.0 + 1e-12));
  CHECK(t.norm.front() == 1.0);
  CHECK(count_psi(t, 5000.0) == doctest::Approx(t.psi_prefix.back()));
}

TEST_CASE("convolution identities hold across generators") {
  for (const ElementTable& t :
       {two_gen_table(1e4), classical_table(2000.0)}) {
    const ConvolutionCheck lam = convolution_identity_check(t, ConvolutionKind::lambda_log);
    const ConvolutionCheck mu = convolution_identity_check(t, ConvolutionKind::mu_unit);
    CHECK(lam.max_deviation <= 1e-9);
    CHECK(mu.max_deviation <= 1e-9);
    CHECK(lam.records_checked == t.size());
  }
  GeneratorSpec gg;
  gg.kind = GeneratorKind::gaussian;
  const ElementTable g = build_elements(build_primes(gg, 500.0), 500.0);
  CHECK(convolution_identity_check(g, ConvolutionKind::lambda_log).max_deviation <= 1e-9);
  CHECK(convolution_identity_check(g, ConvolutionKind::mu_unit).max_deviation <= 1e-9);
}

TEST_CASE("beurling generation is deterministic and near target density") {
  GeneratorSpec gen;
  gen.kind = GeneratorKind::beurling;
  gen.gamma = 2.5;
  gen.seed = 7;
  const PrimeSystem a = build_primes(gen, 1e5);
  const PrimeSystem b = build_primes(gen, 1e5);
  REQUIRE(a.norms.size() == b.norms.size());
  CHECK(a.norms == b.norms);
  CHECK(std::is_sorted(a.norms.begin(), a.norms.end()));
  CHECK(a.norms.front() > 1.0);
  CHECK(a.norms.back() <= 1e5);
  // prime counting stays near li(x): li(1e5) ~ 9630
  CHECK(a.norms.size() > 8000);
  CHECK(a.norms.size() < 11500);

  gen.seed = 8;
  const PrimeSystem c = build_primes(gen, 1e5);
  CHECK(a.norms != c.norms);

  const ElementTable t = build_elements(a, 1e5);
  const DensityFit fit = fit_density(t);
  CHECK_FALSE(fit.zero_density);
  CHECK(fit.A == doctest::Approx(1.0).epsilon(0.35));
  CHECK(std::isfinite(fit.envelope_abs));
}

TEST_CASE("density fit flags the exact classical density") {
  const ElementTable t = classical_table(1e5);
  const DensityFit with_hint = fit_density(t, 1.0);
  CHECK(with_hint.A == 1.0);
  CHECK(with_hint.ill_conditioned);
  CHECK(with_hint.envelope_abs <= 2.0);

  const DensityFit free = fit_density(t);
  CHECK(free.A == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("density fit recognizes logarithmic growth") {
  const ElementTable t = two_gen_table(1e4);
  const DensityFit fit = fit_density(t);
  CHECK(fit.zero_density);
  CHECK(fit.envelope_abs > 0.0);
  CHECK_THROWS_AS(fit_density(two_gen_table(100.0)), std::invalid_argument);
}
