#pragma once

// Ramanujan's series S_n(x) = Σ_{k>=1} (-1)^{k-1}/(nk) (x^k/k!)^n and its
// error term e_n(x) = S_n(x) - ln x - γ.
//
// For n = 2 the error term equals ∫_{2x}^∞ J0(t)/t dt and has the
// asymptotic expansion
//   e(x) ~ J0'(2x)/(2x) Σ (-1)^k k!k!/x^{2k} + J0(2x)/(2x²) Σ (-1)^k k!(k+1)!/x^{2k}.

#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gammaforge/bessel.hpp"
#include "gammaforge/big_real.hpp"

namespace gammaforge::ramanujan {

struct RamanujanSeriesSpec {
  int n = 2;
  BigReal x;
  int target_digits = 30;
};

enum class ErrorRoute { direct_series, bessel_integral, asymptotic_expansion };

const char* route_name(ErrorRoute route);

struct ErrorTermResult {
  BigReal x;
  ErrorRoute route = ErrorRoute::direct_series;
  BigReal value;
  BigReal error_bound;
  int cancellation_digits_lost = 0;
};

// ceil(order * x * log10 e) + 10.
int cancellation_guard(double order, double x);

// S_n(x). Working precision is target + cancellation_guard(n, x) unless
// `guard_override` is given (then exactly target + guard_override; used to
// demonstrate under-guarded evaluation).
SeriesResult series_S_n(const RamanujanSeriesSpec& spec, std::optional<int> guard_override = {});

// Same sum with a real exponent n > 0 (experimental; no accuracy claims
// beyond those of the integer case).
SeriesResult series_S_real_order(const BigReal& order, const BigReal& x, int target_digits);

// Digits lost to cancellation in the last S_n evaluation pattern:
// log10(largest term / |sum|), clamped at 0.
int cancellation_digits(double order, const BigReal& x, int target_digits);

// e^{-x} Σ_{k>=0} H_k x^k / k!  (all terms positive).
BigReal harmonic_exp_series(const BigReal& x, int digits);

// e_n(x) = S_n(x) - ln x - γ, absolute accuracy about 10^-digits.
BigReal error_term_n(const BigReal& order, const BigReal& x, int digits);

ErrorTermResult error_term_e(const BigReal& x, ErrorRoute route, int digits);

// (-1)^k k!k! and (-1)^k k!(k+1)!, k = 0..count-1, by exact recurrence.
std::vector<mpz_class> expansion_coefficients_a(int count);
std::vector<mpz_class> expansion_coefficients_b(int count);

// Both factor series truncated at `terms` (or at the optimal index when
// empty). The error estimate is the rigorous remainder
// 4^m (m!)² |∫_{2x}^∞ J0/t^{2m+1}| <= 4^m (m!)² √(2/π) (2x)^{-2m-1/2} / (2m+1/2)
// plus propagated Bessel errors. In automatic mode throws
// InsufficientAccuracyError if the optimum cannot reach 10^-digits.
bessel::ExpansionEvaluation error_term_expansion(const BigReal& x, std::optional<int> terms, int digits);

// R(x) = e(x) 2√π x^{3/2} - cos(2x+π/4) - 13 sin(2x+π/4)/(16x), with e(x)
// from the Bessel-integral route.
BigReal corollary_residual(const BigReal& x, int digits);

struct SignChangeScan {
  std::vector<std::pair<double, double>> brackets;
  BigReal max_abs;
  double argmax = 0;
  std::vector<std::pair<double, BigReal>> samples;
};

// e_order on the grid x_max * i / grid, i = 1..grid. Any order > 0.
SignChangeScan scan_error_term(const BigReal& order, const BigReal& x_max, int grid, int digits, int threads = 1);

// Divergence diagnostic for n >= 3.
SignChangeScan sign_change_scan(int n, const BigReal& x_max, int grid, int digits, int threads = 1);

}  // namespace gammaforge::ramanujan
