#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "gammaforge/big_real.hpp"

namespace gammaforge::special {

struct HarmonicNumber {
  long k = 0;
  BigReal value;
};

struct Pochhammer {
  BigReal a;
  long k = 0;
  BigReal value;
};

// Exact Bernoulli number B_n (B_1 = -1/2). Cached; safe to call concurrently.
mpq_class bernoulli(int n);

// Γ(x) for x > 0. Shifted Stirling series with an explicit remainder bound.
BigReal gamma_fn(const BigReal& x, int digits);

HarmonicNumber harmonic(long k, int digits);

// Exact H_k as a rational.
mpq_class harmonic_exact(long k);

Pochhammer pochhammer(const BigReal& a, long k);

// Gauss hypergeometric series F(a, b; c; z) for |z| < 1.
SeriesResult hyp2f1(const BigReal& a, const BigReal& b, const BigReal& c, const BigReal& z, int digits);

// E1(x) = ∫_x^∞ e^{-t}/t dt for x > 0.
//
// Below the crossover 0.7 * working_digits the convergent alternating series
// (with γ from the Euler-constant engine) is used at inflated precision;
// above it, the Lentz continued fraction.
BigReal exp_integral_E1(const BigReal& x, int digits);

enum class E1Route { convergent_series, continued_fraction };
E1Route exp_integral_E1_route(const BigReal& x, int digits);

// ζ(s) for integer s >= 2: direct summation with Euler-Maclaurin tail.
BigReal zeta_int(long s, int digits);

}  // namespace gammaforge::special
