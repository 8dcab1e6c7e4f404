#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tauberlab/csv.hpp"
#include "tauberlab/fit.hpp"
#include "tauberlab/parallel.hpp"
#include "tauberlab/rational.hpp"
#include "tauberlab/rng.hpp"

using namespace tauberlab;

TEST_CASE("rng is deterministic per seed and stream label") {
  Rng a(12345), b(12345), c(54321);
  bool same = true, diff = false;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    same = same && (x == b.next_u64());
    diff = diff || (x != c.next_u64());
  }
  CHECK(same);
  CHECK(diff);

  Rng s1 = stream(7, "alpha"), s2 = stream(7, "alpha"), s3 = stream(7, "beta");
  CHECK(s1.next_u64() == s2.next_u64());
  Rng s1b = stream(7, "alpha");
  CHECK(s1b.next_u64() != s3.next_u64());
}

TEST_CASE("rng ranges") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
    const std::uint64_t k = rng.below(17);
    CHECK(k < 17);
    const std::int64_t m = rng.uniform_int(-4, 4);
    CHECK(m >= -4);
    CHECK(m <= 4);
  }
  // uniform_int hits both endpoints of a small range
  Rng r2(5);
  bool lo = false, hi = false;
  for (int i = 0; i < 200; ++i) {
    const std::int64_t v = r2.uniform_int(0, 3);
    lo = lo || v == 0;
    hi = hi || v == 3;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("csv_double round-trips doubles exactly") {
  CHECK(csv_double(1.0) == "1");
  CHECK(csv_double(0.1) == "0.10000000000000001");
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double x = (rng.uniform(-1.0, 1.0)) * std::pow(10.0, rng.uniform_int(-300, 300));
    const std::string s = csv_double(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("csv writer emits LF-only rows") {
  const std::string path = "test_core_tmp.csv";
  {
    CsvWriter w(path);
    w.raw_line("a,b,c");
    w.row(1.5, 2, std::string("x"));
  }
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  CHECK(text == "a,b,c\n1.5,2,x\n");
  CHECK(text.find('\r') == std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("linear fit recovers an exact line") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(2.0 * v + 1.0);
  const LinearFit f = fit_linear(x, y);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_linear({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_linear({1.0, 1.0}, {2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("origin fit recovers slope") {
  std::vector<double> x{1, 2, 4}, y{3, 6, 12};
  CHECK(fit_through_origin(x, y) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("rational arithmetic is exact and normalized") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(rat_min(Rational(5, 6), Rational(3, 4)) == Rational(3, 4));
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 4000000000LL) * Rational(1, 4000000000LL),
                  std::overflow_error);
}

TEST_CASE("blocked sums match plain accumulation and are mode-independent") {
  const std::size_t n = 100000;
  auto term = [](std::size_t k) {
    const double x = static_cast<double>(k + 1);
    return 1.0 / (x * x);
  };
  const double ser = blocked_sum(n, term, ExecMode::serial);
  const double par = blocked_sum(n, term, ExecMode::parallel);
  CHECK(ser == par);  // identical reduction tree, bit-identical
  CHECK(ser == doctest::Approx(1.6449240668982263).epsilon(1e-12));

  auto cterm = [](std::size_t k) {
    const double x = static_cast<double>(k + 1);
    return std::complex<double>{1.0 / (x * x), 1.0 / (x * x * x)};
  };
  const std::complex<double> cser = blocked_sum_complex(n, cterm, ExecMode::serial);
  const std::complex<double> cpar = blocked_sum_complex(n, cterm, ExecMode::parallel);
  CHECK(cser.real() == cpar.real());
  CHECK(cser.imag() == cpar.imag());
}

TEST_CASE("pairwise fold sums accurately") {
  std::vector<double> v(4097, 0.1);
  const double s = pairwise_fold(v);
  CHECK(s == doctest::Approx(409.7).epsilon(1e-13));
}

TEST_CASE("parallel map fills slots independently of mode") {
  auto f = [](std::size_t i) { return static_cast<double>(i) * 1.5; };
  const std::vector<double> a = parallel_map<double>(1000, f, ExecMode::serial);
  const std::vector<double> b = parallel_map<double>(1000, f, ExecMode::parallel);
  REQUIRE(a.size() == 1000);
  CHECK(a == b);
  CHECK(a[999] == 1498.5);
}
