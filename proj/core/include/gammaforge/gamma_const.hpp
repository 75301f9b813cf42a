#pragma once

// Engines for Euler's constant γ.
//
// Brent-McMillan: with U = Σ H_k (x^k/k!)^n and V = Σ (x^k/k!)^n,
//   U/V - ln x = γ + O(exp(-c_n x)),  c_1 = 1,  c_n = 2n sin²(π/n) for n >= 2.
// Both sums have positive terms, so only modest guard digits are needed.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gammaforge/big_real.hpp"

namespace gammaforge::euler {

struct BMPlan {
  int n = 2;
  int target_digits = 0;
  BigReal x;
  int working_digits = 0;
  long truncation_k = 0;  // last k summed; filled in after a run
};

struct BMResult {
  BigReal gamma;
  BMPlan plan;
};

double convergence_constant(int n);

// x = ceil(target ln 10 / c_n * 1.05) + 5, working = target + 10 + ceil(log10 x).
BMPlan plan_brent_mcmillan(int n, int target_digits);

BMResult gamma_brent_mcmillan(int n, int target_digits);

// U/V - ln x at a caller-chosen x (no planning); `digits` is the working
// precision of the sums.
BMResult brent_mcmillan_at(int n, const BigReal& x, int digits);

// γ via Glaisher's ζ-series. The "1" parts of ζ(2k+1) are summed in closed
// form, leaving Σ (ζ(2k+1)-1)/((k+1)(2k+1)), which converges like 4^-k.
BigReal gamma_glaisher(int target_digits);

// Raw partial sum 1 - Σ_{k=1..K} ζ(2k+1)/((k+1)(2k+1)).
BigReal glaisher_partial_sum(long terms, int digits);

// Reference γ, cached at the highest precision requested so far.
// Thread-safe.
BigReal euler_gamma(int digits);

struct RateFit {
  int n = 0;
  std::vector<std::pair<double, double>> samples;  // (x, ln|error|)
  double fitted_slope = 0;
  double expected = 0;  // -c_n

  double relative_deviation() const;
};

// Least-squares slope of ln|U/V - ln x - γ| against x.
// Requires >= 6 points, increasing, spaced >= 2 apart, all >= 5. Throws
// NonConvergenceError when an error sample is not resolved at `digits`.
RateFit fit_convergence_rate(int n, std::span<const double> x_values, int digits);

// Digits needed so every sample of a rate fit is resolved.
int rate_fit_digits(int n, double x_max);

// "0.5772..." with exactly `digits` decimals, ties to even.
std::string format_gamma(const BigReal& gamma, int digits);

}  // namespace gammaforge::euler
