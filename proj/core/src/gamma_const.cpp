#include "gammaforge/gamma_const.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

#include "gammaforge/errors.hpp"
#include "gammaforge/special.hpp"

namespace gammaforge::euler {

namespace {

constexpr double kLn10 = 2.30258509299404568402;
constexpr double kLog10E = 0.43429448190325182765;

// H_k is carried exactly up to this index, then as a rounded value.
constexpr long kExactHarmonicLimit = 64;
constexpr int kHarmonicExtraDigits = 20;

}  // namespace

double convergence_constant(int n) {
  if (n < 1) throw PreconditionError("Brent-McMillan order must be >= 1");
  if (n == 1) return 1.0;
  const double s = std::sin(M_PI / n);
  return 2.0 * n * s * s;
}

BMPlan plan_brent_mcmillan(int n, int target_digits) {
  if (target_digits < 1) throw PreconditionError("target_digits must be >= 1");
  const double c = convergence_constant(n);
  const long x = static_cast<long>(std::ceil(target_digits * kLn10 / c * 1.05)) + 5;
  const int wp = target_digits + 10 + static_cast<int>(std::ceil(std::log10(static_cast<double>(x))));
  return BMPlan{n, target_digits, BigReal(x, wp), wp, 0};
}

BMResult brent_mcmillan_at(int n, const BigReal& x, int digits) {
  if (n < 1) throw PreconditionError("Brent-McMillan order must be >= 1");
  if (x.sign() <= 0) throw DomainError("Brent-McMillan requires x > 0");
  const int wp = digits;
  const int hp = wp + kHarmonicExtraDigits;
  BigReal xw = x.at(wp);
  const double xd = x.to_double();
  const long cap = std::max(static_cast<long>(std::ceil(8.0 * xd)), 4L * wp);

  BigReal term(1L, wp);  // (x^k/k!)^n
  BigReal u(0L, wp);     // H_0 = 0
  BigReal v(1L, wp);
  mpq_class h_exact(0);
  BigReal h(0L, hp);
  long k = 0;
  for (;;) {
    ++k;
    BigReal ratio = xw / k;
    term *= n == 1 ? ratio : pow(ratio, static_cast<long>(n));
    if (k <= kExactHarmonicLimit) {
      h_exact += mpq_class(1, static_cast<unsigned long>(k));
      h = BigReal::from_rational(h_exact, hp);
    } else {
      h += BigReal(1L, hp) / k;
    }
    BigReal hterm = term * h;
    u += hterm;
    v += term;
    if (static_cast<double>(k) > xd && term.log10_abs() < v.log10_abs() - wp &&
        hterm.log10_abs() < u.log10_abs() - wp) {
      break;
    }
    if (k >= cap) break;
  }
  BigReal gamma = u / v - log(xw);
  BMPlan plan{n, wp, xw, wp, k};
  return {gamma, plan};
}

BMResult gamma_brent_mcmillan(int n, int target_digits) {
  BMPlan plan = plan_brent_mcmillan(n, target_digits);
  BMResult r = brent_mcmillan_at(n, plan.x, plan.working_digits);
  plan.truncation_k = r.plan.truncation_k;
  return {r.gamma, plan};
}

BigReal gamma_glaisher(int target_digits) {
  if (target_digits < 1) throw PreconditionError("target_digits must be >= 1");
  const int wp = target_digits + 10;
  // 1 - Σ_{k>=1} 1/((k+1)(2k+1)) = 2 - 2 ln 2.
  BigReal sum = 2L - 2 * log(BigReal(2L, wp));
  for (long k = 1;; ++k) {
    BigReal zeta_minus_one = special::zeta_int(2 * k + 1, wp) - 1L;
    sum -= zeta_minus_one / ((k + 1) * (2 * k + 1));
    // ζ(2j+1) - 1 < 2^-2j bounds the remaining tail.
    const double tail_log10 = -2.0 * k * std::log10(2.0) - std::log10(3.0 * (k + 2) * (2 * k + 3));
    if (tail_log10 < -wp) break;
  }
  return sum.at(target_digits + 5);
}

BigReal glaisher_partial_sum(long terms, int digits) {
  if (terms < 0) throw PreconditionError("term count must be non-negative");
  BigReal sum(1L, digits);
  for (long k = 1; k <= terms; ++k) sum -= special::zeta_int(2 * k + 1, digits) / ((k + 1) * (2 * k + 1));
  return sum;
}

BigReal euler_gamma(int digits) {
  static std::mutex mu;
  static std::optional<BigReal> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->precision() < digits) {
    const int want = std::max(digits, cached ? 2 * cached->precision() : 64);
    cached = gamma_brent_mcmillan(2, want + 5).gamma.at(want);
  }
  return cached->at(digits);
}

double RateFit::relative_deviation() const {
  return std::fabs(fitted_slope - expected) / std::fabs(expected);
}

int rate_fit_digits(int n, double x_max) {
  return static_cast<int>(std::ceil(convergence_constant(n) * 1.1 * x_max * kLog10E)) + 30;
}

RateFit fit_convergence_rate(int n, std::span<const double> x_values, int digits) {
  if (x_values.size() < 6) throw PreconditionError("rate fit needs at least 6 points");
  for (std::size_t i = 0; i < x_values.size(); ++i) {
    if (x_values[i] < 5.0) throw PreconditionError("rate fit points must be >= 5");
    if (i > 0 && x_values[i] - x_values[i - 1] < 2.0) {
      throw PreconditionError("rate fit points must increase with spacing >= 2");
    }
  }
  RateFit fit;
  fit.n = n;
  fit.expected = -convergence_constant(n);
  BigReal gamma_ref = euler_gamma(digits + 10);
  for (double xv : x_values) {
    BigReal x = BigReal::parse(std::to_string(xv), digits);
    BigReal err = brent_mcmillan_at(n, x, digits).gamma - gamma_ref.at(digits);
    if (err.is_zero() || err.log10_abs() < -(digits - 5)) {
      throw NonConvergenceError("rate fit: error sample at x=" + std::to_string(xv) +
                                " underflows working precision; raise precision");
    }
    fit.samples.emplace_back(xv, err.log10_abs() * kLn10);
  }
  double sx = 0, sy = 0;
  for (auto [x, y] : fit.samples) {
    sx += x;
    sy += y;
  }
  const double m = static_cast<double>(fit.samples.size());
  const double mx = sx / m, my = sy / m;
  double sxy = 0, sxx = 0;
  for (auto [x, y] : fit.samples) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  fit.fitted_slope = sxy / sxx;
  return fit;
}

std::string format_gamma(const BigReal& gamma, int digits) { return to_fixed(gamma, digits); }

}  // namespace gammaforge::euler
