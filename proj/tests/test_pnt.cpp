#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tauberlab/pnt.hpp"
#include "tauberlab/quadrature.hpp"

using namespace tauberlab;

namespace {

ElementTable classical_table(double x_max) {
  GeneratorSpec gen;
  return build_elements(build_primes(gen, x_max), x_max);
}

ElementTable two_gen_table(double x_max) {
  GeneratorSpec gen;
  gen.kind = GeneratorKind::explicit_list;
  gen.explicit_norms = {2.0, 3.0};
  return build_elements(build_primes(gen, 3.0), x_max);
}

PsiData single_jump(double t0, double v0, double t_end) {
  PsiData d;
  d.t = {t0};
  d.v = {v0};
  d.mode = PsiMode::step;
  d.t_end = t_end;
  return d;
}

}  // namespace

TEST_CASE("error exponents evaluate exactly in rational arithmetic") {
  CHECK(delta_pnt(Rational(2006, 1000)) == Rational(1, 1000));
  CHECK(delta_pnt(Rational(3)) == Rational(1, 198));
  CHECK(delta_mertens(Rational(2)) == Rational(1, 288));
  CHECK(delta_pnt(3.0) == doctest::Approx(1.0 / 198.0).epsilon(1e-15));
  CHECK(delta_mertens(2.0) == doctest::Approx(1.0 / 288.0).epsilon(1e-15));
  CHECK(delta_pnt(2.006) == doctest::Approx(0.001).epsilon(1e-12));
  CHECK_THROWS_AS(delta_pnt(2.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_mertens(1.5), std::invalid_argument);
  CHECK_THROWS_AS(delta_pnt(Rational(2)), std::invalid_argument);
}

TEST_CASE("exponent fit recovers a synthetic log power") {
  std::vector<double> xs, errs;
  for (int i = 0; i < 30; ++i) {
    const double x = 100.0 * std::pow(1.3, i);
    xs.push_back(x);
    errs.push_back(x / std::pow(std::log(x), 1.5));
  }
  const ExponentFit fit = exponent_fit(xs, errs);
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(exponent_fit({10.0, 20.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("psi data mirrors the prime-power staircase") {
  const ElementTable t = two_gen_table(10.0);
  const PsiData d = psi_data_from_table(t);
  d.validate();
  // origin anchor plus jumps at 2, 3, 4, 8, 9
  REQUIRE(d.t.size() == 6);
  CHECK(d.t[0] == 0.0);
  CHECK(d.v[0] == 0.0);
  CHECK(d.t[1] == doctest::Approx(std::log(2.0)));
  CHECK(d.t[5] == doctest::Approx(std::log(9.0)));
  CHECK(d.t_end == doctest::Approx(std::log(10.0)));
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  CHECK(d.v[1] == doctest::Approx(l2));
  CHECK(d.v[2] == doctest::Approx(l2 + l3));
  CHECK(d.v[3] == doctest::Approx(2 * l2 + l3));
  CHECK(d.v[4] == doctest::Approx(3 * l2 + l3));
  CHECK(d.v[5] == doctest::Approx(3 * l2 + 2 * l3));
  // right-continuity and flat cells
  CHECK(psi_data_eval(d, std::log(2.0)) == doctest::Approx(l2));
  CHECK(psi_data_eval(d, std::log(5.0)) == doctest::Approx(2 * l2 + l3));
  CHECK(psi_data_eval(d, 0.1) == 0.0);
}

TEST_CASE("psi data validation rejects broken staircases") {
  PsiData bad;
  bad.t = {1.0, 0.5};
  bad.v = {1.0, 2.0};
  bad.t_end = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PsiData shrink;
  shrink.t = {0.5, 1.0};
  shrink.v = {2.0, 1.0};
  shrink.t_end = 2.0;
  CHECK_THROWS_AS(shrink.validate(), std::invalid_argument);
}

TEST_CASE("excess integral equals per-cell quadrature") {
  const ElementTable t = two_gen_table(100.0);
  const PsiData d = psi_data_from_table(t);
  for (const auto [a, b] : {std::pair{0.0, 2.0}, std::pair{0.5, 4.0},
                            std::pair{1.0, std::log(100.0)}}) {
    const double exact = psi_excess_integral(d, a, b);
    // integrate v(t) e^{-t} - 1 across the same window with the staircase
    // breakpoints inserted so each panel is smooth
    std::vector<double> brk{a};
    for (double tj : d.t)
      if (tj > a && tj < b) brk.push_back(tj);
    brk.push_back(b);
    double quad = 0.0;
    for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
      quad += integrate([&](double u) { return psi_data_eval(d, u) * std::exp(-u) - 1.0; },
                        brk[k] + 1e-13, brk[k + 1] - 1e-13, 1e-12)
                  .value;
    }
    CHECK(exact == doctest::Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("bump inversion recovers planted surpluses and deficits") {
  for (double delta0 : {0.05, 0.1, 0.2}) {
    const double t0 = 5.0;
    // surplus: psi jumps to (1+delta0) e^{t0} at t0 and stays flat
    const PsiData up = single_jump(t0, (1.0 + delta0) * std::exp(t0), t0 + 5.0);
    const BumpResult bu = psi_bump_inversion(up, t0);
    CHECK(bu.delta_up == doctest::Approx(delta0).epsilon(0.02));
    CHECK(bu.delta == doctest::Approx(delta0).epsilon(0.02));

    // deficit: psi reached (1-delta0) e^{t0} well before t0 and stays flat
    const PsiData dn = single_jump(t0 - 1.0, (1.0 - delta0) * std::exp(t0), t0 + 5.0);
    const BumpResult bd = psi_bump_inversion(dn, t0);
    CHECK(bd.delta_down == doctest::Approx(delta0).epsilon(0.02));

    // the cruder quadratic threshold overshoots but stays within its design slack
    CHECK(bu.delta_weak >= bu.delta_up * (1.0 - 1e-9));
    CHECK(psi_bump_width(up, t0) == bu.delta);
  }
}

TEST_CASE("bump inversion reports small deviations on the classical staircase") {
  const ElementTable t = classical_table(2e4);
  const PsiData d = psi_data_from_table(t);
  // at e^t ~ 1e3 the normalized psi error is a few percent
  const BumpResult b = psi_bump_inversion(d, std::log(1000.0));
  CHECK(b.delta < 0.2);
  CHECK(b.delta >= 0.0);
}

TEST_CASE("chain comparison holds with the classical constant") {
  const ElementTable t = classical_table(1e4);
  for (double x : {100.0, 1000.0, 1e4}) {
    const ChainReport r = psi_to_pi_check(t, x);
    CHECK(r.all_hold);
    CHECK_FALSE(r.flagged_small_x);
    CHECK(r.fitted_C > 0.0);
    CHECK(r.fitted_C <= 2.5);
    REQUIRE(r.steps.size() >= 3);
    for (const ChainStep& s : r.steps) CHECK(s.ok);
  }
  CHECK_THROWS_AS(psi_to_pi_check(t, 8.0), std::invalid_argument);
}

TEST_CASE("pnt profile is normalized and bounded on the classical table") {
  const ElementTable t = classical_table(3e5);
  const ErrorProfile p = pnt_profile(t, 4.0);
  REQUIRE(p.x_grid.size() == 40);
  CHECK(p.x_grid.front() == doctest::Approx(16.0));
  CHECK(p.x_grid.back() == doctest::Approx(3e5));
  CHECK(p.delta_used == doctest::Approx(1.0 / 198.0));
  CHECK(p.applicable);
  CHECK_FALSE(p.delta_flagged);
  for (std::size_t i = 0; i < p.x_grid.size(); ++i) {
    CHECK(std::isfinite(p.normalized[i]));
    CHECK(std::abs(p.normalized[i]) < 0.5);
    // definition check: normalized = raw * log^{1+delta}(x) / x
    const double lx = std::log(p.x_grid[i]);
    const double expect =
        p.raw_error[i] * std::pow(lx, 1.0 + p.delta_used) / p.x_grid[i];
    CHECK(p.normalized[i] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(std::isfinite(p.fit.exponent));
}

TEST_CASE("mertens profile uses the mertens exponent") {
  const ElementTable t = classical_table(3e5);
  const ErrorProfile m = mertens_profile(t, 4.0);
  CHECK(m.delta_used == doctest::Approx(25.0 / 288.0));
  for (std::size_t i = 0; i < m.x_grid.size(); ++i) {
    const double lx = std::log(m.x_grid[i]);
    const double expect = m.raw_error[i] * std::pow(lx, m.delta_used) / m.x_grid[i];
    CHECK(m.normalized[i] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(m.normalized[i]) < 1.0);
  }
}

TEST_CASE("profiles flag out-of-range gamma and sparse tables") {
  const ElementTable t = classical_table(1e4);
  const ErrorProfile p = pnt_profile(t, 1.9);
  CHECK(p.delta_flagged);
  CHECK(p.delta_used == 0.0);

  const ElementTable two = two_gen_table(1e4);
  const ErrorProfile sparse = pnt_profile(two, 4.0);
  CHECK_FALSE(sparse.applicable);
}
