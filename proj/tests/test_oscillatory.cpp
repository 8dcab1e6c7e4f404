#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "tauberlab/experiment.hpp"
#include "tauberlab/oscillatory.hpp"
#include "tauberlab/rng.hpp"

using namespace tauberlab;

TEST_CASE("phi helpers agree with their defining identities") {
  for (const cplx w : {cplx{1.0, 0.5}, cplx{-2.0, 1.0}, cplx{0.03, -0.02},
                       cplx{1e-8, 1e-8}, cplx{0.0, 3.0}}) {
    const cplx lhs1 = phi1(w) * w;
    const cplx rhs1 = std::exp(w) - 1.0;
    CHECK(std::abs(lhs1 - rhs1) <= 1e-14 * (1.0 + std::abs(rhs1)));
    const cplx lhs2 = phi2(w) * w * w;
    const cplx rhs2 = std::exp(w) * (w - 1.0) + 1.0;
    CHECK(std::abs(lhs2 - rhs2) <= 1e-13 * (1.0 + std::abs(rhs2)));
  }
  CHECK(std::abs(phi1(cplx{0.0, 0.0}) - 1.0) <= 1e-15);
  CHECK(std::abs(phi2(cplx{0.0, 0.0}) - 0.5) <= 1e-15);
}

TEST_CASE("constant function integrates to the exact circle sum") {
  const PiecewiseFunction one =
      PiecewiseFunction::make_step({0.0, 1.0}, {{1.0, 0.0}});
  // integral over a full period of e^{-2 pi i x t} vanishes at integer x
  CHECK(std::abs(oscillatory_integral(one, 1.0)) <= 1e-15);
  CHECK(std::abs(oscillatory_integral(one, 2.0)) <= 1e-15);
  // at x = 1/2 the closed form gives (1 - e^{-i pi})/(i pi) = 2/(i pi)
  const cplx v = oscillatory_integral(one, 0.5);
  CHECK(std::abs(v - cplx{0.0, -2.0 / M_PI}) <= 1e-14);
}

TEST_CASE("linear ramp integrates to i/(2 pi x) at integer x") {
  const PiecewiseFunction ramp =
      PiecewiseFunction::make_linear({0.0, 1.0}, {{0.0, 0.0}, {1.0, 0.0}});
  for (double x : {1.0, 2.0, 5.0}) {
    const cplx v = oscillatory_integral(ramp, x);
    CHECK(std::abs(v - cplx{0.0, 1.0 / (2.0 * M_PI * x)}) <= 1e-13);
  }
}

TEST_CASE("closed form matches quadrature on random functions") {
  Rng rng = stream(21, "osc.quad");
  for (int trial = 0; trial < 10; ++trial) {
    const PiecewiseFunction f = (trial % 2 == 0)
                                    ? random_step_function(rng, 8, 1.0)
                                    : random_linear_function(rng, 8, 1.0);
    for (double x : {0.7, 3.3}) {
      const cplx closed = oscillatory_integral(f, x);
      // Riemann sum over panels between nodes, 2000 points per panel
      cplx riemann = 0.0;
      for (std::size_t k = 0; k + 1 < f.nodes.size(); ++k) {
        const double a = f.nodes[k], b = f.nodes[k + 1];
        const int n = 2000;
        const double h = (b - a) / n;
        for (int i = 0; i < n; ++i) {
          const double t = a + (i + 0.5) * h;
          riemann += f.eval(t) * std::exp(cplx{0.0, -2.0 * M_PI * x * t}) * h;
        }
      }
      CHECK(std::abs(closed - riemann) <= 2e-6);
    }
  }
}

TEST_CASE("bound formula assembles sup and variation terms") {
  const PiecewiseFunction f =
      PiecewiseFunction::make_step({0.0, 0.5, 1.0}, {{1.0, 0.0}, {-1.0, 0.0}});
  // V_p = 2 (single jump of size 2 -> 2^p ^{1/p} = 2), sup = 1
  for (double p : {1.0, 2.0}) {
    const double expected = 2.0 * std::pow(4.0, -1.0 / p) + 1.0 / 4.0;
    CHECK(riemann_lebesgue_bound(f, 4.0, p) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("inequality reports stay clean along a dyadic frequency ladder") {
  Rng rng = stream(22, "osc.ladder");
  std::vector<PiecewiseFunction> fs;
  for (int i = 0; i < 50; ++i) fs.push_back(random_step_function(rng, 30, 1.0));
  std::vector<double> xs;
  for (double x = 0.5; x <= 1024.0; x *= 2.0) xs.push_back(x);
  for (double p : {1.0, 2.0, 3.0}) {
    const std::vector<BoundReport> reports = verify_rl(fs, xs, p);
    REQUIRE(reports.size() == fs.size() * xs.size());
    for (const BoundReport& r : reports) {
      CHECK_FALSE(r.violation);
      CHECK(r.lhs <= r.rhs * (1.0 + 1e-9) + 1e-9);
    }
  }
  // serial and parallel checking produce identical reports
  const std::vector<BoundReport> ser = verify_rl(fs, xs, 2.0, ExecMode::serial);
  const std::vector<BoundReport> par = verify_rl(fs, xs, 2.0, ExecMode::parallel);
  REQUIRE(ser.size() == par.size());
  for (std::size_t i = 0; i < ser.size(); ++i) {
    CHECK(ser[i].lhs == par[i].lhs);
    CHECK(ser[i].rhs == par[i].rhs);
  }
}
