#include "gammaforge/ramanujan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gammaforge/errors.hpp"
#include "gammaforge/gamma_const.hpp"
#include "gammaforge/quad.hpp"

namespace gammaforge::ramanujan {

namespace {

constexpr double kLog10E = 0.43429448190325182765;

struct SumOutcome {
  BigReal sum;
  long terms = 0;
  BigReal error;
  double max_term_log10 = -HUGE_VAL;
};

bool negligible(const BigReal& term, const BigReal& sum, int wp) {
  const double s = sum.log10_abs();
  const double ref = s > -wp ? s : 0.0;
  return term.log10_abs() < ref - wp;
}

// Σ_{k>=1} (-1)^{k-1}/(order k) (x^k/k!)^order at working precision wp.
SumOutcome alternating_sum(const BigReal& order, std::optional<long> integer_order, const BigReal& x, int wp) {
  BigReal xw = x.at(wp);
  BigReal ow = order.at(wp);
  const double xd = x.to_double();
  const long cap = static_cast<long>(std::ceil(8.0 * std::max(xd, 1.0))) + 50;
  BigReal power(1L, wp);  // (x^k/k!)^order
  BigReal sum(0L, wp);
  BigReal term(0L, wp);
  double max_log = -HUGE_VAL;
  int small_run = 0;
  long k = 0;
  while (k < cap) {
    ++k;
    BigReal ratio = xw / k;
    if (integer_order) {
      power *= *integer_order == 1 ? ratio : pow(ratio, *integer_order);
    } else {
      power *= pow(ratio, ow);
    }
    term = power / (ow * k);
    if (k % 2 == 0) term = -term;
    sum += term;
    max_log = std::max(max_log, term.log10_abs());
    if (static_cast<double>(k) > xd) {
      small_run = negligible(term, sum, wp) ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
  }
  // First omitted term: next power times the usual factor.
  BigReal ratio = xw / (k + 1);
  BigReal next = power * (integer_order ? pow(ratio, *integer_order) : pow(ratio, ow)) / (ow * (k + 1));
  BigReal rounding = exp(BigReal(max_log / kLog10E, wp)) * (k + 1) * pow10(-wp, wp);
  return {sum, k, abs(next) + rounding, max_log};
}

std::optional<long> as_integer(const BigReal& order) {
  if (order.is_integer() && order > 0L && order < 1000000L) return order.to_long();
  return std::nullopt;
}

SumOutcome evaluate(const BigReal& order, const BigReal& x, int target, std::optional<int> guard_override) {
  if (!(order > 0L)) throw PreconditionError("series order must be positive");
  if (x.sign() <= 0) throw PreconditionError("series requires x > 0");
  const int guard = guard_override ? *guard_override : cancellation_guard(order.to_double(), x.to_double());
  PrecisionPlan plan = guard_override ? PrecisionPlan::unguarded(target, guard) : PrecisionPlan::make(target, guard);
  return alternating_sum(order, as_integer(order), x, plan.working_digits);
}

}  // namespace

const char* route_name(ErrorRoute route) {
  switch (route) {
    case ErrorRoute::direct_series: return "direct-series";
    case ErrorRoute::bessel_integral: return "bessel-integral";
    case ErrorRoute::asymptotic_expansion: return "asymptotic-expansion";
  }
  return "unknown";
}

int cancellation_guard(double order, double x) {
  return static_cast<int>(std::ceil(order * x * kLog10E)) + 10;
}

SeriesResult series_S_n(const RamanujanSeriesSpec& spec, std::optional<int> guard_override) {
  if (spec.n < 1) throw PreconditionError("S_n requires n >= 1");
  SumOutcome s = evaluate(BigReal(spec.n, spec.x.precision()), spec.x, spec.target_digits, guard_override);
  return {s.sum.at(spec.target_digits), s.terms, s.error.at(spec.target_digits)};
}

SeriesResult series_S_real_order(const BigReal& order, const BigReal& x, int target_digits) {
  SumOutcome s = evaluate(order, x, target_digits, std::nullopt);
  return {s.sum.at(target_digits), s.terms, s.error.at(target_digits)};
}

int cancellation_digits(double order, const BigReal& x, int target_digits) {
  SumOutcome s = evaluate(BigReal(order, target_digits), x, target_digits, std::nullopt);
  const double lost = s.max_term_log10 - s.sum.log10_abs();
  return std::max(0, static_cast<int>(std::ceil(lost)));
}

BigReal harmonic_exp_series(const BigReal& x, int digits) {
  if (x.sign() <= 0) throw PreconditionError("harmonic_exp_series requires x > 0");
  const double xd = x.to_double();
  const int wp = digits + 10 + static_cast<int>(std::ceil(std::log10(xd + 2.0)));
  BigReal xw = x.at(wp);
  BigReal power(1L, wp);  // x^k / k!
  BigReal h(0L, wp);
  BigReal sum(0L, wp);
  for (long k = 1;; ++k) {
    power *= xw;
    power /= k;
    h += BigReal(1L, wp) / k;
    BigReal term = power * h;
    sum += term;
    if (static_cast<double>(k) > xd && term.log10_abs() < sum.log10_abs() - wp) break;
    if (k > 100000000) throw NonConvergenceError("harmonic_exp_series: term cap reached");
  }
  return (exp(-xw) * sum).at(digits);
}

BigReal error_term_n(const BigReal& order, const BigReal& x, int digits) {
  SumOutcome s = evaluate(order, x, digits, std::nullopt);
  const int wp = s.sum.precision();
  return (s.sum - log(x.at(wp)) - euler::euler_gamma(wp)).at(digits);
}

ErrorTermResult error_term_e(const BigReal& x, ErrorRoute route, int digits) {
  if (x.sign() <= 0) throw PreconditionError("e(x) requires x > 0");
  ErrorTermResult r{x, route, BigReal(0L, digits), BigReal(0L, digits), 0};
  switch (route) {
    case ErrorRoute::direct_series: {
      SumOutcome s = evaluate(BigReal(2L, digits), x, digits, std::nullopt);
      const int wp = s.sum.precision();
      r.value = (s.sum - log(x.at(wp)) - euler::euler_gamma(wp)).at(digits);
      r.error_bound = (s.error + pow10(-wp, wp)).at(digits);
      r.cancellation_digits_lost = std::max(0, static_cast<int>(std::ceil(s.max_term_log10 - s.sum.log10_abs())));
      break;
    }
    case ErrorRoute::bessel_integral: {
      quad::Integral i = quad::bessel_tail_over_t(2 * x, BigReal(1L, digits), digits);
      r.value = i.value;
      r.error_bound = i.error_bound;
      break;
    }
    case ErrorRoute::asymptotic_expansion: {
      bessel::ExpansionEvaluation e = error_term_expansion(x, std::nullopt, digits);
      r.value = e.value;
      r.error_bound = e.error_estimate;
      break;
    }
  }
  return r;
}

std::vector<mpz_class> expansion_coefficients_a(int count) {
  std::vector<mpz_class> out;
  mpz_class c = 1;
  for (int k = 0; k < count; ++k) {
    if (k > 0) c *= -(mpz_class(k) * k);
    out.push_back(c);
  }
  return out;
}

std::vector<mpz_class> expansion_coefficients_b(int count) {
  std::vector<mpz_class> out;
  mpz_class c = 1;
  for (int k = 0; k < count; ++k) {
    if (k > 0) c *= -(mpz_class(k) * (k + 1));
    out.push_back(c);
  }
  return out;
}

namespace {

// log10 of 4^m (m!)² √(2/π) (2x)^{-2m-1/2} / (2m + 1/2).
double expansion_remainder_log10(int m, double x) {
  return m * std::log10(4.0) + 2.0 * std::lgamma(m + 1.0) * kLog10E + 0.5 * std::log10(2.0 / M_PI) -
         (2.0 * m + 0.5) * std::log10(2.0 * x) - std::log10(2.0 * m + 0.5);
}

}  // namespace

bessel::ExpansionEvaluation error_term_expansion(const BigReal& x, std::optional<int> terms, int digits) {
  if (x.sign() <= 0) throw PreconditionError("expansion requires x > 0");
  const int wp = digits + 10;
  const double xd = x.to_double();
  int m = 0;
  double rem_log10 = HUGE_VAL;
  if (terms) {
    if (*terms < 1) throw PreconditionError("expansion needs at least one term");
    m = *terms;
    rem_log10 = expansion_remainder_log10(m, xd);
  } else {
    // Optimal truncation: smallest remainder bound, stopping early once the
    // working precision is met.
    for (int j = 1; j < 10000000; ++j) {
      const double rl = expansion_remainder_log10(j, xd);
      if (rl < rem_log10) {
        m = j;
        rem_log10 = rl;
      } else {
        break;
      }
      if (rl < -wp) break;
    }
    if (rem_log10 > -digits) {
      throw InsufficientAccuracyError("asymptotic expansion cannot reach 1e-" + std::to_string(digits) +
                                      " at x = " + to_compact(x, 10));
    }
  }

  BigReal xw = x.at(wp);
  BigReal two_x = 2 * xw;
  bessel::BesselValue j0 = bessel::bessel_j0_auto(two_x, wp);
  bessel::BesselValue j1 = bessel::bessel_j1_auto(two_x, wp);
  BigReal lead_a = -j1.value / two_x;             // J0'(2x) / (2x)
  BigReal lead_b = j0.value / (two_x * xw);       // J0(2x) / (2x²)
  std::vector<mpz_class> a = expansion_coefficients_a(m + 1);
  std::vector<mpz_class> b = expansion_coefficients_b(m + 1);
  BigReal inv_x2 = 1L / (xw * xw);
  BigReal xpow(1L, wp);  // x^{-2k}
  BigReal sum_a(0L, wp), sum_b(0L, wp), abs_a(0L, wp), abs_b(0L, wp);
  for (int k = 0; k < m; ++k) {
    BigReal ta = BigReal::from_integer(a[static_cast<std::size_t>(k)], wp) * xpow;
    BigReal tb = BigReal::from_integer(b[static_cast<std::size_t>(k)], wp) * xpow;
    sum_a += ta;
    sum_b += tb;
    abs_a += abs(ta);
    abs_b += abs(tb);
    xpow *= inv_x2;
  }
  BigReal omitted = abs(lead_a * BigReal::from_integer(a[static_cast<std::size_t>(m)], wp) * xpow +
                        lead_b * BigReal::from_integer(b[static_cast<std::size_t>(m)], wp) * xpow);
  BigReal value = lead_a * sum_a + lead_b * sum_b;
  BigReal propagated = abs_a * j1.error_bound / two_x + abs_b * j0.error_bound / (two_x * xw);
  BigReal estimate = exp(BigReal(rem_log10 / kLog10E, wp)) + propagated;
  return {value.at(digits), m, omitted.at(digits), estimate.at(digits)};
}

BigReal corollary_residual(const BigReal& x, int digits) {
  const int wp = digits + 5;
  BigReal xw = x.at(wp);
  BigReal e = error_term_e(xw, ErrorRoute::bessel_integral, wp).value;
  BigReal pi = const_pi(wp);
  BigReal phase = 2 * xw + pi / 4;
  BigReal r = e * 2 * sqrt(pi) * pow(xw, BigReal(1.5, wp)) - cos(phase) - 13 * sin(phase) / (16 * xw);
  return r.at(digits);
}

SignChangeScan scan_error_term(const BigReal& order, const BigReal& x_max, int grid, int digits, int threads) {
  if (grid < 2) throw PreconditionError("scan grid needs at least 2 points");
  if (x_max.sign() <= 0) throw PreconditionError("scan requires x_max > 0");
  const int wp = digits + 5;
  std::vector<std::optional<BigReal>> values(static_cast<std::size_t>(grid));
  std::vector<double> xs(static_cast<std::size_t>(grid));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < grid;) {
      BigReal x = x_max.at(wp) * (i + 1) / grid;
      xs[static_cast<std::size_t>(i)] = x.to_double();
      values[static_cast<std::size_t>(i)] = error_term_n(order, x, digits);
    }
  };
  const int workers = std::clamp(threads, 1, grid);
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SignChangeScan out;
  out.max_abs = BigReal(0L, digits);
  for (int i = 0; i < grid; ++i) {
    const BigReal& v = *values[static_cast<std::size_t>(i)];
    out.samples.emplace_back(xs[static_cast<std::size_t>(i)], v);
    if (abs(v) > out.max_abs) {
      out.max_abs = abs(v);
      out.argmax = xs[static_cast<std::size_t>(i)];
    }
    if (i > 0) {
      const BigReal& prev = *values[static_cast<std::size_t>(i - 1)];
      if (prev.sign() * v.sign() < 0) out.brackets.emplace_back(xs[static_cast<std::size_t>(i - 1)], xs[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

SignChangeScan sign_change_scan(int n, const BigReal& x_max, int grid, int digits, int threads) {
  if (n < 3) throw PreconditionError("sign_change_scan requires n >= 3");
  return scan_error_term(BigReal(n, digits), x_max, grid, digits, threads);
}

}  // namespace gammaforge::ramanujan
