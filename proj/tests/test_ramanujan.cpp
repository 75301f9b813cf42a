#include <random>

#include "support.hpp"

#include "gammaforge/errors.hpp"
#include "gammaforge/gamma_const.hpp"
#include "gammaforge/ramanujan.hpp"
#include "gammaforge/special.hpp"

using namespace gammaforge;
using namespace gammaforge::ramanujan;
using gftest::agree;
using gftest::num;

namespace {

// Plain summation at generous precision; no guard logic.
BigReal brute_S(const BigReal& order, const BigReal& x, int digits) {
  BigReal sum(0L, digits), power(1L, digits);
  for (long k = 1; k < 400; ++k) {
    power *= pow(x.at(digits) / k, order.at(digits));
    BigReal term = power / (order.at(digits) * k);
    sum += (k % 2 == 1) ? term : -term;
  }
  return sum;
}

}  // namespace

TEST_CASE("series values") {
  CHECK(agree(series_S_n({2, BigReal(1L, 40), 30}).value, num("0.4419194022081009306474594"), 24));
  CHECK(agree(series_S_n({1, BigReal(3L, 50), 40}).value, num("1.688876334663839589414258072833573158638"), 39));
  CHECK(agree(series_S_n({3, BigReal(2L, 50), 40}).value, num("1.573242409476354292972203259475761878146"), 39));
  auto r = series_S_n({2, BigReal(10L, 40), 30});
  CHECK(r.terms > 10);
  CHECK(r.error_bound < pow10(-30, 30));
  CHECK_THROWS_AS(series_S_n({0, BigReal(1L, 30), 30}), PreconditionError);
  CHECK_THROWS_AS(series_S_n({2, BigReal(0L, 30), 30}), PreconditionError);
}

TEST_CASE("real-order series") {
  BigReal x = num("2.5", 40);
  CHECK(agree(series_S_real_order(BigReal(2L, 40), x, 30).value, series_S_n({2, x, 30}).value, 29));
  BigReal order = num("1.5", 40);
  CHECK(agree(series_S_real_order(order, x, 30).value, brute_S(order, x, 120), 29));
  CHECK_THROWS_AS(series_S_real_order(num("-1", 30), x, 30), PreconditionError);
}

TEST_CASE("guard digits") {
  CHECK(cancellation_guard(2, 10) == 19);
  CHECK(cancellation_guard(1, 0.5) == 11);
  // Largest term near 3.8e5 against a sum near 2.9.
  CHECK(cancellation_digits(2, BigReal(10L, 40), 30) == 6);
  CHECK(cancellation_digits(2, num("0.5", 40), 30) <= 1);
  // Without guard digits the cancellation at x = 30 swamps the target.
  BigReal x(30L, 60);
  BigReal guarded = series_S_n({2, x, 30}).value;
  BigReal bare = series_S_n({2, x, 30}, 0).value;
  CHECK_FALSE(agree(bare, guarded, 20));
}

TEST_CASE("property: guarded series meets its target") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0.2, 35.0);
  for (int i = 0; i < 30; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int d = 20 + static_cast<int>(rng() % 20);
    BigReal x(u(rng), d + 60);
    BigReal got = series_S_n({n, x, d}).value;
    BigReal ref = series_S_n({n, x, d + 40}).value;
    CAPTURE(n);
    CAPTURE(d);
    CAPTURE(x.to_double());
    // S_n is O(ln x) for n <= 2 but grows for n = 3; compare relative to max(1, |S|).
    BigReal scale = max(BigReal(1L, d + 40), abs(ref));
    CHECK(abs(got - ref) <= scale * pow10(-(d - 1), d + 40));
  }
}

TEST_CASE("S_1 equals E1 + ln x + gamma") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 25.0);
  const int d = 30;
  for (int i = 0; i < 20; ++i) {
    BigReal x(u(rng), d + 20);
    BigReal ei(0L, d + 20);
    mpfr_eint(ei.raw(), (-x).raw(), MPFR_RNDN);
    BigReal expected = -ei + log(x) + gftest::num(gftest::kEulerGamma1010.substr(0, 80), d + 20);
    CAPTURE(x.to_double());
    CHECK(agree(series_S_n({1, x, d}).value, expected, d - 1));
  }
}

TEST_CASE("property: harmonic exponential series equals S_1") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0.01, 40.0);
  for (int i = 0; i < 25; ++i) {
    BigReal x(u(rng), 40);
    CAPTURE(x.to_double());
    CHECK(agree(harmonic_exp_series(x, 30), series_S_n({1, x, 30}).value, 28));
  }
  CHECK_THROWS_AS(harmonic_exp_series(BigReal(0L, 30), 30), PreconditionError);
}

TEST_CASE("error term routes agree") {
  const int d = 30;
  BigReal ref5 = num("-0.008787157242297243055217407992664889960935");
  for (auto route : {ErrorRoute::direct_series, ErrorRoute::bessel_integral}) {
    auto r = error_term_e(BigReal(5L, 40), route, d);
    CAPTURE(route_name(route));
    CHECK(r.route == route);
    CHECK(agree(r.value, ref5, d - 1));
  }
  CHECK(agree(error_term_e(BigReal(1L, 40), ErrorRoute::direct_series, d).value,
              num("-0.1352962626934319299590527226082591309582"), d - 1));
  CHECK(agree(error_term_n(BigReal(2L, 40), BigReal(5L, 40), d), ref5, d - 1));
  auto far = error_term_e(BigReal(80L, 40), ErrorRoute::asymptotic_expansion, 25);
  CHECK(agree(far.value, error_term_e(BigReal(80L, 40), ErrorRoute::bessel_integral, 25).value, 24));
  CHECK(error_term_e(BigReal(20L, 50), ErrorRoute::direct_series, d).cancellation_digits_lost > 10);
  CHECK_THROWS_AS(error_term_e(BigReal(0L, 30), ErrorRoute::direct_series, d), PreconditionError);
  CHECK(std::string(route_name(ErrorRoute::direct_series)) == "direct-series");
  CHECK(std::string(route_name(ErrorRoute::bessel_integral)) == "bessel-integral");
  CHECK(std::string(route_name(ErrorRoute::asymptotic_expansion)) == "asymptotic-expansion");
}

TEST_CASE("asymptotic expansion") {
  auto a = expansion_coefficients_a(5);
  auto b = expansion_coefficients_b(5);
  CHECK(a == std::vector<mpz_class>{1, -1, 4, -36, 576});
  CHECK(b == std::vector<mpz_class>{1, -2, 12, -144, 2880});
  BigReal x(40L, 50);
  auto opt = error_term_expansion(x, std::nullopt, 30);
  CHECK(agree(opt.value, error_term_e(x, ErrorRoute::bessel_integral, 35).value, 30));
  auto few = error_term_expansion(x, 2, 30);
  CHECK(few.terms_used == 2);
  CHECK(few.error_estimate > opt.error_estimate);
  CHECK(abs(few.value - opt.value) <= few.error_estimate);
  CHECK_THROWS_AS(error_term_expansion(BigReal(5L, 40), std::nullopt, 30), InsufficientAccuracyError);
  CHECK_THROWS_AS(error_term_expansion(x, 0, 30), PreconditionError);
}

TEST_CASE("leading asymptotic terms") {
  for (long x : {20L, 50L, 100L}) {
    BigReal xv(x, 40);
    CAPTURE(x);
    CHECK(abs(corollary_residual(xv, 30) * xv * xv) <= BigReal(1.1, 30));
  }
}

TEST_CASE("sign changes of e_3") {
  auto scan = sign_change_scan(3, BigReal(10L, 40), 200, 30);
  REQUIRE(scan.brackets.size() >= 3);
  CHECK(scan.brackets[0].first == doctest::Approx(0.6));
  CHECK(scan.brackets[0].second == doctest::Approx(0.65));
  CHECK(scan.brackets[1].first == doctest::Approx(1.55));
  CHECK(scan.brackets[2].first == doctest::Approx(2.7));
  CHECK(scan.samples.size() == 200);
  auto parallel = sign_change_scan(3, BigReal(10L, 40), 200, 30, 3);
  CHECK(parallel.brackets == scan.brackets);
  CHECK(parallel.max_abs == scan.max_abs);
  CHECK_THROWS_AS(sign_change_scan(2, BigReal(10L, 40), 200, 30), PreconditionError);
  CHECK_THROWS_AS(sign_change_scan(3, BigReal(10L, 40), 1, 30), PreconditionError);
  // e_2 stays bounded where e_3 has already blown up.
  auto two = scan_error_term(BigReal(2L, 40), BigReal(10L, 40), 100, 30);
  for (const auto& [x, e] : two.samples) {
    if (x >= 2.0) CHECK(abs(e) < BigReal(0.2, 30));
  }
}
