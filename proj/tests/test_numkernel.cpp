#include <array>
#include <random>

#include "support.hpp"

#include "gammaforge/big_real.hpp"
#include "gammaforge/errors.hpp"

using namespace gammaforge;
using gftest::agree;
using gftest::agree_rel;
using gftest::num;

namespace {

BigReal random_real(std::mt19937_64& rng, int digits) {
  std::uniform_int_distribution<long> mant(-999999999L, 999999999L);
  std::uniform_int_distribution<int> ex(-12, 12);
  BigReal v(mant(rng), digits);
  return ldexp(v, ex(rng) * 3) / 1000000007L;
}

}  // namespace

TEST_CASE("precision follows the smaller operand") {
  BigReal a(1L, 50), b(3L, 20);
  CHECK((a / b).precision() == 20);
  CHECK((b * a).precision() == 20);
  a += b;
  CHECK(a.precision() == 20);
  CHECK(BigReal(2L, 80).at(30).precision() == 30);
  CHECK(bits_for_digits(30) >= 100);
  CHECK(bits_for_digits(100) > bits_for_digits(99));
}

TEST_CASE("parse accepts decimals, exponents and fractions") {
  CHECK(num("0.25") == BigReal(1L, 60) / 4L);
  CHECK(num("1/4") == num("0.25"));
  CHECK(num("-3e-2") == -(BigReal(3L, 60) / 100L));
  CHECK_THROWS_AS(num("abc"), PreconditionError);
  CHECK_THROWS_AS(num(""), PreconditionError);
  CHECK_THROWS_AS(num("1/0"), DomainError);
  CHECK_THROWS_AS(BigReal(1L, 0), PreconditionError);
}

TEST_CASE("pi matches an integer Machin evaluation to 500 decimals") {
  const mpz_class machin = gftest::machin_pi_scaled(500);
  std::string digits = machin.get_str();
  std::string expected = digits.substr(0, 1) + "." + digits.substr(1);
  std::string got = to_fixed(const_pi(520), 500);
  // Machin is truncated, to_fixed is rounded: compare all but the last decimal.
  CHECK(got.substr(0, 500) == expected.substr(0, 500));
}

TEST_CASE("exp(1) matches the exact factorial series") {
  mpq_class e = 0, term = 1;
  for (int k = 0; k < 120; ++k) {
    e += term;
    term /= k + 1;
  }
  CHECK(agree(exp(BigReal(1L, 150)), BigReal::from_rational(e, 150), 145));
}

TEST_CASE("elementary functions on known values") {
  const int d = 40;
  CHECK(agree(log(exp(BigReal(3L, d))), BigReal(3L, d), d - 1));
  CHECK(agree(sqrt(BigReal(2L, d)) * sqrt(BigReal(2L, d)), BigReal(2L, d), d - 1));
  BigReal x = num("0.7", d);
  CHECK(agree(sin(x) * sin(x) + cos(x) * cos(x), BigReal(1L, d), d - 1));
  CHECK(pow(BigReal(3L, d), 4L) == 81L);
  CHECK(agree(pow(BigReal(2L, d), num("0.5", d)), sqrt(BigReal(2L, d)), d - 1));
  CHECK(pow10(-3, d) == num("0.001", d));
  CHECK(min(BigReal(1L, d), BigReal(2L, d)) == 1L);
  CHECK(max(BigReal(1L, d), BigReal(2L, d)) == 2L);
}

TEST_CASE("domain errors") {
  const int d = 20;
  CHECK_THROWS_AS(log(BigReal(0L, d)), DomainError);
  CHECK_THROWS_AS(sqrt(BigReal(-1L, d)), DomainError);
  CHECK_THROWS_AS(BigReal(1L, d) / BigReal(0L, d), DomainError);
  CHECK_THROWS_AS(BigReal(1L, d) / 0L, DomainError);
  CHECK_THROWS_AS(pow(BigReal(0L, d), -1L), DomainError);
  CHECK_THROWS_AS(pow(BigReal(-2L, d), num("0.5", d)), DomainError);
}

TEST_CASE("elementary dispatch checks arity") {
  const int d = 30;
  std::array<BigReal, 2> two{BigReal(6L, d), BigReal(4L, d)};
  CHECK(elementary(ElementaryOp::sub, two) == 2L);
  CHECK(elementary(ElementaryOp::pow_int, two) == 1296L);
  std::array<BigReal, 1> one{BigReal(4L, d)};
  CHECK(elementary(ElementaryOp::sqrt, one) == 2L);
  CHECK_THROWS_AS(elementary(ElementaryOp::add, one), PreconditionError);
  CHECK_THROWS_AS(elementary(ElementaryOp::exp, two), PreconditionError);
  std::array<BigReal, 2> frac{BigReal(2L, d), num("0.5", d)};
  CHECK_THROWS_AS(elementary(ElementaryOp::pow_int, frac), PreconditionError);
}

TEST_CASE("precision plans") {
  CHECK(PrecisionPlan::default_guard(30) == 10);
  CHECK(PrecisionPlan::default_guard(1000) == 50);
  auto p = PrecisionPlan::make(100);
  CHECK(p.working_digits == p.target_digits + p.guard_digits);
  CHECK(PrecisionPlan::make(30, 12).guard_digits == 12);
  CHECK_THROWS_AS(PrecisionPlan::make(30, 9), PreconditionError);
  CHECK(PrecisionPlan::unguarded(30, 2).working_digits == 32);
}

TEST_CASE("fixed formatting rounds half to even") {
  CHECK(to_fixed(num("0.125", 30), 2) == "0.12");
  CHECK(to_fixed(num("0.375", 30), 2) == "0.38");
  CHECK(to_fixed(num("-0.125", 30), 2) == "-0.12");
  CHECK(to_fixed(num("2.5", 30), 0) == "2");
  CHECK(to_fixed(num("3.5", 30), 0) == "4");
  CHECK(to_fixed(num("0.1249", 30), 2) == "0.12");
  CHECK(to_fixed(num("1/3", 30), 5) == "0.33333");
  CHECK_THROWS_AS(to_fixed(num("1", 30), -1), PreconditionError);
}

TEST_CASE("scientific and compact formatting") {
  CHECK(to_scientific(num("1/3", 30), 6) == "3.33333e-1");
  CHECK(to_scientific(BigReal(0L, 30), 6) == "0");
  CHECK(to_compact(num("2.5", 30), 10) == "2.5");
  CHECK(to_compact(num("-0.001", 30), 10) == "-0.001");
}

TEST_CASE("property: (a + b) - b recovers a to working precision") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 20 + static_cast<int>(rng() % 80);
    BigReal a = random_real(rng, d), b = random_real(rng, d);
    BigReal back = (a + b) - b;
    BigReal scale = max(abs(a), abs(b));
    BigReal err = abs(back - a);
    CAPTURE(d);
    CHECK((err.is_zero() || err <= scale * pow10(-(d - 1), d)));
  }
}

TEST_CASE("property: refining precision only adds digits") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double xv = u(rng);
    const int d = 20 + static_cast<int>(rng() % 60);
    BigReal lo(xv, d), hi(xv, 2 * d);
    CAPTURE(xv);
    CAPTURE(d);
    CHECK(agree_rel(exp(lo), exp(hi), d - 1));
    CHECK(agree(log(lo), log(hi), d - 2));
    CHECK(agree_rel(sqrt(lo), sqrt(hi), d - 1));
    CHECK(agree(sin(lo), sin(hi), d - 2));
    CHECK(agree_rel(const_pi(d), const_pi(2 * d), d - 1));
  }
}
