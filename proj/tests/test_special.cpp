#include <random>

#include "support.hpp"

#include "gammaforge/errors.hpp"
#include "gammaforge/gamma_const.hpp"
#include "gammaforge/special.hpp"

using namespace gammaforge;
using namespace gammaforge::special;
using gftest::agree;
using gftest::agree_rel;
using gftest::num;

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(20) == mpq_class(-174611, 330));
  CHECK_THROWS_AS(bernoulli(-1), PreconditionError);
}

TEST_CASE("Bernoulli numbers satisfy the defining recurrence") {
  // Σ_{k<m+1} C(m+1,k) B_k = 0 for m >= 1.
  for (int m = 1; m <= 60; ++m) {
    mpq_class s = 0;
    mpz_class c = 1;
    for (int k = 0; k <= m; ++k) {
      s += c * bernoulli(k);
      c = c * (m + 1 - k) / (k + 1);
    }
    CAPTURE(m);
    CHECK(s == 0);
  }
}

TEST_CASE("Gamma function against reference values") {
  CHECK(agree_rel(gamma_fn(num("1/3", 50), 40), num("2.678938534707747633655692940974677644129"), 38));
  CHECK(agree_rel(gamma_fn(num("7.5", 50), 40), num("1871.254305797788346476077053603950424042"), 38));
  CHECK(agree_rel(gamma_fn(num("0.001", 50), 40), num("999.4237724845954661149822012996440004652"), 38));
  CHECK(agree_rel(gamma_fn(num("50.5", 50), 40), num("4.290462912351959810915755196058937673824e63"), 38));
  CHECK(agree_rel(gamma_fn(num("0.5", 60), 50), sqrt(const_pi(60)), 48));
  CHECK(gamma_fn(BigReal(6L, 30), 30) == 120L);
  CHECK_THROWS_AS(gamma_fn(BigReal(0L, 30), 30), DomainError);
  CHECK_THROWS_AS(gamma_fn(num("-0.5", 30), 30), DomainError);
}

TEST_CASE("Gamma agrees with the backend's own implementation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 40.0);
  for (int i = 0; i < 40; ++i) {
    BigReal x(u(rng), 60);
    BigReal ref(0L, 60);
    mpfr_gamma(ref.raw(), x.raw(), MPFR_RNDN);
    CAPTURE(x.to_double());
    CHECK(agree_rel(gamma_fn(x, 50), ref, 48));
  }
}

TEST_CASE("property: Gamma recurrence and duplication") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 30.0);
  const int d = 40;
  BigReal sqrt_pi = sqrt(const_pi(d + 10));
  for (int i = 0; i < 60; ++i) {
    BigReal x(u(rng), d + 10);
    CAPTURE(x.to_double());
    CHECK(agree_rel(gamma_fn(x + 1L, d), x * gamma_fn(x, d), d - 2));
    // Γ(x)Γ(x+1/2) = 2^{1-2x} √π Γ(2x)
    BigReal lhs = gamma_fn(x, d) * gamma_fn(x + num("0.5", d + 10), d);
    BigReal rhs = pow(BigReal(2L, d + 10), 1L - 2L * x) * sqrt_pi * gamma_fn(2L * x, d);
    CHECK(agree_rel(lhs, rhs, d - 3));
  }
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_exact(0) == 0);
  CHECK(harmonic_exact(4) == mpq_class(25, 12));
  auto h = harmonic(100, 30);
  CHECK(h.k == 100);
  CHECK(agree(h.value, num("5.187377517639620260805117675658"), 29));
  CHECK(harmonic(0, 30).value.is_zero());
  CHECK_THROWS_AS(harmonic(-1, 30), PreconditionError);
  CHECK_THROWS_AS(harmonic_exact(-1), PreconditionError);
}

TEST_CASE("property: harmonic numbers hug ln k + gamma + 1/(2k)") {
  const int d = 40;
  BigReal g = euler::euler_gamma(d);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const long k = 1 + static_cast<long>(rng() % 5000);
    BigReal kk(k, d);
    BigReal gap = abs(harmonic(k, d).value - log(kk) - g - 1L / (2L * kk));
    CAPTURE(k);
    CHECK(gap < 1L / (8L * kk * kk));
  }
}

TEST_CASE("Pochhammer symbol") {
  auto p = pochhammer(BigReal(3L, 30), 4);
  CHECK(p.value == 360L);
  CHECK(p.k == 4);
  CHECK(pochhammer(num("0.5", 30), 0).value == 1L);
  CHECK(agree(pochhammer(num("0.5", 40), 3).value, num("1.875", 40), 38));
  CHECK_THROWS_AS(pochhammer(BigReal(1L, 30), -1), PreconditionError);
}

TEST_CASE("hypergeometric series") {
  const int d = 40;
  auto f = hyp2f1(num("1/8", 50), num("5/8", 50), BigReal(1L, 50), num("-1/4", 50), 30);
  CHECK(agree(f.value, num("0.9824060319947553160116518"), 24));
  CHECK(f.terms > 0);
  CHECK(agree(hyp2f1(num("0.5", 50), num("0.5", 50), BigReal(1L, 50), num("0.5", 50), d).value,
              num("1.180340599016096226045337940558488587234"), d - 1));
  // Terminating series.
  CHECK(agree(hyp2f1(BigReal(-3L, 50), BigReal(2L, 50), BigReal(5L, 50), num("0.7", 50), d).value, num("0.4148"),
              d - 1));
  // ln(1+z)/z
  CHECK(agree(hyp2f1(BigReal(1L, 50), BigReal(1L, 50), BigReal(2L, 50), num("-0.9", 50), d).value,
              num("0.7131709846359941955455955302260992551514"), d - 1));
  CHECK_THROWS_AS(hyp2f1(BigReal(1L, 30), BigReal(1L, 30), BigReal(-2L, 30), num("0.5", 30), 30), PoleError);
  CHECK_THROWS_AS(hyp2f1(BigReal(1L, 30), BigReal(1L, 30), BigReal(2L, 30), BigReal(1L, 30), 30),
                  NonConvergenceError);
}

TEST_CASE("property: hypergeometric series is stable under doubled precision") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> par(-2.5, 3.0), zz(-0.8, 0.8), cc(0.3, 4.0);
  for (int i = 0; i < 40; ++i) {
    const double a = par(rng), b = par(rng), c = cc(rng), z = zz(rng);
    auto lo = hyp2f1(BigReal(a, 50), BigReal(b, 50), BigReal(c, 50), BigReal(z, 50), 25);
    auto hi = hyp2f1(BigReal(a, 100), BigReal(b, 100), BigReal(c, 100), BigReal(z, 100), 50);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CAPTURE(z);
    CHECK(agree_rel(lo.value, hi.value, 22));
  }
}

TEST_CASE("exponential integral on both sides of the crossover") {
  CHECK(agree_rel(exp_integral_E1(BigReal(1L, 40), 30), num("0.2193839343955202736771637754601216"), 29));
  CHECK(agree_rel(exp_integral_E1(num("0.5", 50), 40), num("0.5597735947761608117467959393150852352268"), 38));
  CHECK(agree_rel(exp_integral_E1(num("1e-5", 50), 40), num("10.93571980004369561503889657239497393104"), 38));
  CHECK(agree_rel(exp_integral_E1(BigReal(30L, 50), 40), num("3.021552010688812544815825045153697921167e-15"), 38));
  CHECK(agree_rel(exp_integral_E1(BigReal(200L, 50), 40), num("6.885226106307635597710817482455792973837e-90"), 38));
  CHECK(exp_integral_E1_route(BigReal(1L, 30), 30) == E1Route::convergent_series);
  CHECK(exp_integral_E1_route(BigReal(200L, 30), 30) == E1Route::continued_fraction);
  CHECK_THROWS_AS(exp_integral_E1(BigReal(0L, 30), 30), DomainError);
}

TEST_CASE("exponential integral is continuous across the crossover") {
  const int d = 30;
  const double cross = 0.7 * d;
  for (double x : {cross * 0.9, cross * 0.99, cross * 1.01, cross * 1.1}) {
    BigReal xv(x, d + 10);
    BigReal ref(0L, d + 20);
    mpfr_eint(ref.raw(), (-xv.at(d + 20)).raw(), MPFR_RNDN);  // Ei(-x) = -E1(x)
    CAPTURE(x);
    CHECK(agree_rel(exp_integral_E1(xv, d), -ref, d - 2));
  }
}

TEST_CASE("zeta at integers") {
  CHECK(agree(zeta_int(3, 30), num("1.20205690315959428539973816151"), 29));
  CHECK(agree(zeta_int(5, 40), num("1.036927755143369926331365486457034168057"), 39));
  CHECK(agree(zeta_int(30, 40), num("1.000000000931327432419668182871764735021"), 39));
  BigReal pi = const_pi(60);
  CHECK(agree(zeta_int(2, 50), pi * pi / 6L, 49));
  CHECK(agree(zeta_int(4, 50), pow(pi, 4L) / 90L, 49));
  CHECK_THROWS_AS(zeta_int(1, 30), PreconditionError);
}

TEST_CASE("zeta agrees with a brute-force sum where that is cheap") {
  // For s = 40 the tail past k = 3 is below 10^-19.
  mpq_class direct = 0;
  for (int k = 1; k <= 6; ++k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), k, 40);
    direct += mpq_class(1, 1) / mpq_class(p);
  }
  CHECK(agree(zeta_int(40, 30), BigReal::from_rational(direct, 40), 30));
}
