#include "gammaforge/special.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "gammaforge/errors.hpp"
#include "gammaforge/gamma_const.hpp"

namespace gammaforge::special {

namespace {

constexpr double kLog10E = 0.43429448190325182765;
constexpr double kLn10 = 2.30258509299404568402;

// Even-index Bernoulli numbers from tangent numbers (integer-only recurrence):
//   B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)).
class BernoulliTable {
 public:
  mpq_class even(int k) {
    std::lock_guard lock(mu_);
    if (k >= static_cast<int>(table_.size())) extend(std::max(k + 1, 2 * static_cast<int>(table_.size())));
    return table_[static_cast<std::size_t>(k)];
  }

 private:
  void extend(int count) {
    const int n = count - 1;
    std::vector<mpz_class> t(static_cast<std::size_t>(n + 1));
    if (n >= 1) t[1] = 1;
    for (int k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
    for (int k = 2; k <= n; ++k) {
      for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    }
    table_.assign(static_cast<std::size_t>(count), mpq_class(0));
    table_[0] = 1;
    for (int k = 1; k <= n; ++k) {
      mpz_class four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
      mpq_class b(mpz_class(2 * k) * t[k], four_k * (four_k - 1));
      b.canonicalize();
      table_[static_cast<std::size_t>(k)] = (k % 2 == 1) ? b : mpq_class(-b);
    }
  }

  std::mutex mu_;
  std::vector<mpq_class> table_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

// log10 |B_2j| via 2 (2j)! / (2π)^(2j), accurate enough for planning.
double log10_bernoulli_even(int j) {
  return (std::log(2.0) + std::lgamma(2.0 * j + 1.0) - 2.0 * j * std::log(2.0 * M_PI)) * kLog10E;
}

bool below(const BigReal& term, const BigReal& sum, int digits) {
  double t = term.log10_abs();
  double s = sum.log10_abs();
  double ref = (s > -digits) ? s : 0.0;  // absolute threshold for tiny sums
  return t < ref - digits;
}

}  // namespace

mpq_class bernoulli(int n) {
  if (n < 0) throw PreconditionError("Bernoulli index must be non-negative");
  if (n == 1) return mpq_class(-1, 2);
  if (n % 2 == 1) return 0;
  return bernoulli_table().even(n / 2);
}

BigReal gamma_fn(const BigReal& x, int digits) {
  if (x.sign() <= 0) throw DomainError("gamma_fn requires x > 0");
  const int base = digits + 10;
  // Shift so Stirling's series converges quickly: z >= max(10, base).
  const double shift_target = std::max(10.0, static_cast<double>(base));
  long shift = 0;
  if (x.to_double() < shift_target) shift = static_cast<long>(std::ceil(shift_target - x.to_double()));
  const double zd = x.to_double() + static_cast<double>(shift);
  const int wp = base + static_cast<int>(std::ceil(std::log10(zd * std::log(zd) + 1.0))) + 2;

  BigReal xw = x.at(wp);
  BigReal z = xw + shift;

  // Number of Stirling terms from the remainder bound
  //   |R_m| <= |B_{2m+2}| / ((2m+2)(2m+1) z^{2m+1}).
  int m = 1;
  auto remainder_log10 = [&](int terms) {
    int j = terms + 1;
    return log10_bernoulli_even(j) - std::log10((2.0 * j) * (2.0 * j - 1.0)) - (2.0 * j - 1.0) * std::log10(zd);
  };
  while (remainder_log10(m) > -wp) {
    ++m;
    if (m > 10 * wp + 100) throw NonConvergenceError("gamma_fn: Stirling series did not reach target");
  }

  BigReal lg = (z - BigReal(1L, wp) / 2) * log(z) - z + log(2 * const_pi(wp)) / 2;
  BigReal zpow = z;  // z^{2j-1}
  BigReal z2 = z * z;
  for (int j = 1; j <= m; ++j) {
    BigReal coef = BigReal::from_rational(bernoulli(2 * j), wp) / (static_cast<long>(2 * j) * (2 * j - 1));
    lg += coef / zpow;
    zpow *= z2;
  }
  BigReal result = exp(lg);
  if (shift > 0) result /= pochhammer(xw, shift).value;
  return result.at(digits);
}

HarmonicNumber harmonic(long k, int digits) {
  if (k < 0) throw PreconditionError("harmonic index must be non-negative");
  const int wp = digits + 5 + static_cast<int>(std::ceil(std::log10(static_cast<double>(k) + 1.0)));
  BigReal sum(0L, wp);
  BigReal one(1L, wp);
  for (long j = 1; j <= k; ++j) sum += one / j;
  return {k, sum.at(digits)};
}

mpq_class harmonic_exact(long k) {
  if (k < 0) throw PreconditionError("harmonic index must be non-negative");
  mpq_class h(0);
  for (long j = 1; j <= k; ++j) h += mpq_class(1, static_cast<unsigned long>(j));
  h.canonicalize();
  return h;
}

Pochhammer pochhammer(const BigReal& a, long k) {
  if (k < 0) throw PreconditionError("Pochhammer index must be non-negative");
  BigReal v(1L, a.precision());
  for (long j = 0; j < k; ++j) v *= a + j;
  return {a, k, v};
}

SeriesResult hyp2f1(const BigReal& a, const BigReal& b, const BigReal& c, const BigReal& z, int digits) {
  if (c.sign() <= 0 && c.is_integer()) throw PoleError("hyp2f1: c is a non-positive integer");
  if (abs(z) >= 1L) throw NonConvergenceError("hyp2f1: series requires |z| < 1");
  const int wp = digits + 10;
  BigReal aw = a.at(wp), bw = b.at(wp), cw = c.at(wp), zw = z.at(wp);

  BigReal sum(1L, wp);
  BigReal term(1L, wp);
  BigReal max_term(1L, wp);
  BigReal ratio(0L, wp);
  const double absz = std::fabs(z.to_double());
  const long cap = (absz > 0 ? static_cast<long>(4.0 * wp * kLn10 / -std::log(absz)) : 0) + 1000;
  long k = 0;
  int small_run = 0;
  while (!zw.is_zero()) {
    BigReal prev = term;
    term *= (aw + k) * (bw + k) / ((cw + k) * (k + 1)) * zw;
    ++k;
    sum += term;
    if (abs(term) > max_term) max_term = abs(term);
    if (term.is_zero()) break;  // terminating series
    ratio = abs(term / prev);
    small_run = below(term, sum, wp) ? small_run + 1 : 0;
    if (small_run >= 3) break;
    if (k > cap) throw NonConvergenceError("hyp2f1: term cap reached");
  }
  BigReal rho = max(ratio, BigReal(absz, wp));
  BigReal bound(0L, wp);
  if (!term.is_zero() && rho < 1L) bound = abs(term) * rho / (1L - rho);
  bound += max_term * (k + 1) * pow10(-wp, wp);
  return {sum.at(digits), k, bound.at(digits)};
}

E1Route exp_integral_E1_route(const BigReal& x, int digits) {
  const int wp = digits + 10;
  return x.to_double() <= 0.7 * wp ? E1Route::convergent_series : E1Route::continued_fraction;
}

BigReal exp_integral_E1(const BigReal& x, int digits) {
  if (x.sign() <= 0) throw DomainError("E1 requires x > 0");
  const int wp = digits + 10;
  if (exp_integral_E1_route(x, digits) == E1Route::convergent_series) {
    // Alternating terms peak near e^x: inflate by x log10(e) digits.
    const int sp = wp + static_cast<int>(std::ceil(x.to_double() * kLog10E)) + 5;
    BigReal xs = x.at(sp);
    BigReal power(1L, sp);  // x^k / k!
    BigReal sum(0L, sp);
    for (long k = 1;; ++k) {
      power *= xs;
      power /= k;
      BigReal term = power / k;
      if (k % 2 == 0) term = -term;
      sum += term;
      if (static_cast<double>(k) > xs.to_double() && term.log10_abs() < -sp) break;
      if (k > 100000) throw NonConvergenceError("E1 series: term cap reached");
    }
    BigReal result = sum - euler::euler_gamma(sp) - log(xs);
    return result.at(digits);
  }
  // Modified Lentz evaluation of e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
  BigReal xw = x.at(wp);
  BigReal tiny = pow10(-4 * wp, wp);
  BigReal b = xw + 1;
  BigReal c = 1L / tiny;
  BigReal d = 1L / b;
  BigReal h = d;
  BigReal tol = pow10(-wp, wp);
  for (long i = 1;; ++i) {
    const long an = -i * i;
    b += 2;
    d = 1L / (d * an + b);
    c = b + BigReal(an, wp) / c;
    BigReal del = c * d;
    h *= del;
    if (abs(del - 1L) < tol) break;
    if (i > 1000000) throw NonConvergenceError("E1 continued fraction: iteration cap reached");
  }
  return (h * exp(-xw)).at(digits);
}

BigReal zeta_int(long s, int digits) {
  if (s < 2) throw PreconditionError("zeta_int requires s >= 2");
  const int wp = digits + 10;
  const double sd = static_cast<double>(s);
  const long em_n = std::max(20, wp);

  auto inverse_power = [&](unsigned long m) {
    BigReal r(0L, wp);
    mpfr_ui_pow_ui(r.raw(), m, static_cast<unsigned long>(s), MPFR_RNDN);
    mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
    return r;
  };

  // Direct summation when the tail N^{1-s}/(s-1) clears 10^-wp quickly.
  const double direct_log10_n = (wp - std::log10(sd - 1.0)) / (sd - 1.0);
  if (direct_log10_n < std::log10(static_cast<double>(em_n))) {
    const long n = static_cast<long>(std::ceil(std::pow(10.0, direct_log10_n))) + 1;
    BigReal sum(0L, wp);
    for (long m = n; m >= 2; --m) sum += inverse_power(static_cast<unsigned long>(m));
    return (sum + 1L).at(digits);
  }

  // Euler-Maclaurin at N = em_n:
  //   ζ(s) = Σ_{m<N} m^-s + N^{1-s}/(s-1) + N^-s/2
  //          + Σ_j B_2j/(2j)! (s)_{2j-1} N^{-s-2j+1} + R.
  BigReal sum(0L, wp);
  for (long m = em_n - 1; m >= 2; --m) sum += inverse_power(static_cast<unsigned long>(m));
  sum += 1L;
  BigReal nn(em_n, wp);
  BigReal n_pow = inverse_power(static_cast<unsigned long>(em_n));  // N^-s
  sum += n_pow * nn / (s - 1);
  sum += n_pow / 2;

  BigReal poch(s, wp);      // (s)_{2j-1}
  BigReal factorial(2L, wp);  // (2j)!
  BigReal npw = n_pow / nn;   // N^{-s-2j+1}
  BigReal n2 = nn * nn;
  for (int j = 1;; ++j) {
    BigReal term = BigReal::from_rational(bernoulli(2 * j), wp) / factorial * poch * npw;
    sum += term;
    if (term.log10_abs() < -wp) break;
    if (j > 4 * wp + 100) throw NonConvergenceError("zeta_int: Euler-Maclaurin order cap reached");
    poch *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= static_cast<long>(2 * j + 1) * (2 * j + 2);
    npw /= n2;
  }
  return sum.at(digits);
}

}  // namespace gammaforge::special
