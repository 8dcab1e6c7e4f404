#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tauberlab/laplace.hpp"
#include "tauberlab/rng.hpp"
#include "tauberlab/signals.hpp"

using namespace tauberlab;

TEST_CASE("parameter validation enforces the admissible window") {
  TauberParams ok{1.0, 0.25, 2.0, 10.0};
  CHECK_NOTHROW(ok.validate());
  TauberParams bad_k{1.0, 0.5, 2.0, 10.0};  // k must stay below 1/(2p)
  CHECK_THROWS_AS(bad_k.validate(), std::invalid_argument);
  TauberParams bad_p{0.5, 0.1, 2.0, 10.0};
  CHECK_THROWS_AS(bad_p.validate(), std::invalid_argument);
  TauberParams bad_R{2.0, 0.1, -1.0, 10.0};
  CHECK_THROWS_AS(bad_R.validate(), std::invalid_argument);
}

TEST_CASE("circle kernel identity holds on the circle") {
  Rng rng = stream(31, "laplace.kernel");
  for (double R : {0.5, 2.0, 7.0}) {
    for (int i = 0; i < 100; ++i) {
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      const cplx z = std::polar(R, theta);
      const auto [lhs, rhs] = circle_kernel_identity(z, R);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("laplace transform of exponential decay matches the closed form") {
  const BoundedSignal& f = signal_by_id("exp_decay");
  for (const cplx z : {cplx{1.0, 0.0}, cplx{0.5, 2.0}, cplx{2.0, -1.0}}) {
    const LaplaceResult r = laplace(f, z, 60.0, 0.25, 1e-10);
    const cplx expected = 1.0 / (1.0 + z);
    CHECK(std::abs(r.value - expected) <= 1e-8);
    CHECK(r.tail_bound <= 1e-10);
  }
  CHECK_THROWS_AS(laplace(f, cplx{-0.1, 0.0}, 60.0, 0.25), std::invalid_argument);
}

TEST_CASE("finite laplace of the unit signal is the truncated kernel integral") {
  const BoundedSignal& one = signal_by_id("one");
  for (const cplx z : {cplx{1.0, 1.0}, cplx{-0.5, 2.0}}) {
    const cplx got = finite_laplace(one, z, 3.0, 0.01);
    const cplx expected = (1.0 - std::exp(-z * 3.0)) / z;
    CHECK(std::abs(got - expected) <= 1e-9);
  }
}

TEST_CASE("tail bound certificate holds for catalogue signals") {
  Rng rng = stream(32, "laplace.tail");
  for (const std::string id : {"exp_decay", "cos_decay", "exp_linear"}) {
    const BoundedSignal& f = signal_by_id(id);
    for (int trial = 0; trial < 12; ++trial) {
      const double T = rng.uniform(0.5, 8.0);
      const cplx z{rng.uniform(0.1, 2.0), rng.uniform(-3.0, 3.0)};
      const TailCheck tc = tail_bound_check(f, z, T);
      CHECK(tc.ok);
    }
  }
}

TEST_CASE("mollified contour reproduces boundary-analytic values") {
  const BoundedSignal& f = signal_by_id("exp_decay");  // g(z) = 1/(1+z)
  const double sigma = 0.25, R = 2.0, T = 1.0;
  const cplx right = mollified_contour_integral(f.closed_g_q, sigma, R, T,
                                                ContourPath::right_half_circle);
  const cplx seg = mollified_contour_integral(f.closed_g_q, sigma, R, T,
                                              ContourPath::imaginary_segment);
  const cplx recon = right + seg;
  CHECK(std::abs(recon - cplx{1.0 / (1.0 + sigma), 0.0}) <= 1e-6);
}

TEST_CASE("full circle recovers entire functions exactly") {
  // finite transform of exp_decay: entire after the removable point z = -1
  const double T = 3.0, R = 2.0, sigma = 0.3;
  auto gT = [T](c128 z) -> c128 {
    const c128 one{1.0, 0.0};
    const c128 w = (z + one) * c128{T, 0.0};
    // (1 - e^{-w})/w * T with a series guard near w = 0
    if (static_cast<double>(abs_q(w)) < 1e-6)
      return c128{T, 0.0} * (one - c128{0.5, 0.0} * w);
    return (one - cexp_q(c128{0.0, 0.0} - w)) / (z + one);
  };
  const cplx right =
      mollified_contour_integral(gT, sigma, R, T, ContourPath::right_half_circle);
  const cplx left =
      mollified_contour_integral(gT, sigma, R, T, ContourPath::left_half_circle);
  const cplx total = right + left;
  const double expected = (1.0 - std::exp(-(1.0 + sigma) * T)) / (1.0 + sigma);
  CHECK(std::abs(total - cplx{expected, 0.0}) <= 1e-8);
}

TEST_CASE("structural bound assembles its six terms") {
  TauberParams params{1.0, 0.25, 2.0, 16.0};
  const double sup_pos = 0.5, sup_neg = 0.75, vp_pos = 1.25, vp_neg = 2.0,
               sup_f = 1.5;
  const double Tk = std::pow(16.0, 0.25);
  const double expected =
      sup_f / 2.0 + 1.0 / Tk +
      std::pow(16.0, -0.5) * (sup_pos + vp_pos / Tk) + sup_pos / std::pow(16.0, 0.75) +
      std::pow(16.0, -0.5) * (sup_neg + vp_neg / Tk) + sup_neg / std::pow(16.0, 0.75);
  const double got =
      theorem3_bound(params, sup_pos, sup_neg, vp_pos, vp_neg, sup_f, 1.0);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  CHECK(theorem3_bound(params, sup_pos, sup_neg, vp_pos, vp_neg, sup_f, 3.0) ==
        doctest::Approx(3.0 * expected).epsilon(1e-12));
}

TEST_CASE("convergence study tracks the analytic truncation error") {
  const BoundedSignal& f = signal_by_id("exp_linear");  // int_0^T f = T e^{-T}
  auto R_of_T = [](double T) { return std::sqrt(T); };
  const TauberStudyResult study =
      tauber_convergence_study(f, 1.0, 0.25, R_of_T, {10.0, 100.0});
  REQUIRE(study.reports.size() == 2);
  CHECK(study.reports[0].lhs ==
        doctest::Approx(10.0 * std::exp(-10.0)).epsilon(1e-6));
  CHECK(study.reports[1].lhs ==
        doctest::Approx(100.0 * std::exp(-100.0)).epsilon(1e-6));
  CHECK(study.lhs_decreasing);
  CHECK(study.fitted_constant > 0.0);
  CHECK(study.fitted_constant <= 10.0);
}

TEST_CASE("boundary stats are finite and ordered") {
  const BoundedSignal& f = signal_by_id("cos_decay");
  TauberParams params{1.0, 0.2, 3.0, 50.0};
  const BoundaryStats bs = boundary_stats(f, params, 512);
  CHECK(std::isfinite(bs.sup_pos));
  CHECK(std::isfinite(bs.vp_pos));
  CHECK(bs.sup_pos >= 0.0);
  CHECK(bs.vp_pos >= 0.0);
  CHECK(bs.sup_neg >= 0.0);
  CHECK(bs.vp_neg >= 0.0);
}
