#include <cmath>
#include <vector>

#include "doctest.h"
#include "tauberlab/experiment.hpp"
#include "tauberlab/pvariation.hpp"
#include "tauberlab/rng.hpp"

using namespace tauberlab;

namespace {

PiecewiseFunction zigzag(int half_periods) {
  std::vector<double> nodes;
  std::vector<cplx> values;
  const int n = 2 * half_periods + 1;
  for (int i = 0; i < n; ++i) {
    nodes.push_back(static_cast<double>(i) / (n - 1));
    values.emplace_back(i % 2 == 0 ? 0.0 : 1.0, 0.0);
  }
  return PiecewiseFunction::make_linear(nodes, values);
}

}  // namespace

TEST_CASE("monotone functions have variation equal to their range") {
  const PiecewiseFunction f = PiecewiseFunction::make_linear(
      {0.0, 0.2, 0.7, 1.0}, {{0.0, 0.0}, {1.0, 0.0}, {1.5, 0.0}, {4.0, 0.0}});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(p_variation(f, p).value == doctest::Approx(4.0).epsilon(1e-14));
  }
}

TEST_CASE("zigzag variation follows the counting law") {
  // 2m alternating unit jumps: V_p = (2m)^{1/p}
  for (int m : {1, 3, 5}) {
    const PiecewiseFunction f = zigzag(m);
    for (double p : {1.0, 2.0, 3.0}) {
      CHECK(p_variation(f, p).value ==
            doctest::Approx(std::pow(2.0 * m, 1.0 / p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("p=1 variation is the sum of consecutive jumps") {
  Rng rng = stream(11, "pvar.sum");
  for (int trial = 0; trial < 20; ++trial) {
    const PiecewiseFunction f = random_linear_function(rng, 10, 1.0);
    double total = 0.0;
    for (std::size_t i = 1; i < f.values.size(); ++i)
      total += std::abs(f.values[i] - f.values[i - 1]);
    CHECK(p_variation(f, 1.0).value == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("witness reproduces the optimum") {
  Rng rng = stream(12, "pvar.witness");
  for (int trial = 0; trial < 30; ++trial) {
    const PiecewiseFunction f = random_step_function(rng, 12, 1.0);
    for (double p : {1.0, 1.5, 2.0}) {
      const VariationResult r = p_variation(f, p);
      const double s = witness_power_sum(f.values, r.witness, p);
      CHECK(s == doctest::Approx(std::pow(r.value, p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("dynamic program matches exhaustive search") {
  Rng rng = stream(13, "pvar.dpbf");
  for (int trial = 0; trial < 60; ++trial) {
    const PiecewiseFunction f = random_linear_function(rng, 9, 1.0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double dp = p_variation(f, p).value;
      const double bf = p_variation_bruteforce(f, p);
      CHECK(std::abs(dp - bf) <= 1e-12);
    }
  }
}

TEST_CASE("hoelder bound carries the exponent") {
  const HolderBound hb = holder_variation_bound(3.0, 0.5);
  CHECK(hb.p == doctest::Approx(2.0));
  CHECK(hb.bound == doctest::Approx(3.0));
}

TEST_CASE("product bound dominates sampled variation of a product") {
  Rng rng = stream(14, "pvar.product");
  for (int trial = 0; trial < 25; ++trial) {
    // differentiable factor a sin(2 pi m t + phi) + b t + c
    const double a = rng.uniform(-1.0, 1.0);
    const int m = static_cast<int>(rng.uniform_int(1, 3));
    const double phi = rng.uniform(0.0, 6.28);
    const double b = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(-1.0, 1.0);
    auto f = [&](double t) { return a * std::sin(2.0 * M_PI * m * t + phi) + b * t + c; };
    const double sup_fp = 2.0 * M_PI * m * std::abs(a) + std::abs(b);
    const double sup_f = std::abs(a) + std::abs(b) + std::abs(c);

    const PiecewiseFunction g = random_step_function(rng, 20, 1.0);
    const double sup_g = g.sup_abs();

    for (double p : {1.0, 2.0}) {
      const double vp_g = p_variation(g, p).value;
      const double bound = product_variation_bound(sup_g, sup_fp, sup_f, vp_g, p);

      // sampled product on a fine grid underestimates the true variation
      const int grid = 600;
      std::vector<double> nodes(grid + 1);
      std::vector<cplx> values(grid + 1);
      for (int i = 0; i <= grid; ++i) {
        const double t = static_cast<double>(i) / grid;
        nodes[i] = t;
        values[i] = f(t) * g.eval(t);
      }
      const PiecewiseFunction fg = PiecewiseFunction::make_linear(nodes, values);
      const double sampled = p_variation(fg, p).value;
      CHECK(sampled <= bound * (1.0 + 1e-9));
    }
  }
}
