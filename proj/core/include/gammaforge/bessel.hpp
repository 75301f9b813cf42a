#pragma once

// J0 and J1 on the positive real axis.
//
// Accuracy targets for these oscillatory functions are absolute: a request
// for `digits` means an error below about 10^-digits.

#include <gmpxx.h>

#include "gammaforge/big_real.hpp"

namespace gammaforge::bessel {

struct ExpansionEvaluation {
  BigReal value;
  long terms_used = 0;  // terms 0..terms_used-1 were summed
  BigReal smallest_term_magnitude;
  BigReal error_estimate;  // >= 0
};

enum class Route { power_series, hankel };

struct BesselValue {
  BigReal value;
  Route route = Route::power_series;
  BigReal error_bound;
};

// Power series; working precision is inflated by ceil(2x log10 e) + 10
// digits to absorb the alternating cancellation.
SeriesResult bessel_j0_series(const BigReal& x, int digits);
SeriesResult bessel_j1_series(const BigReal& x, int digits);

// Hankel coefficient a_k(ν) = Π_{j=1..k} (4ν² - (2j-1)²) / (k! 8^k), exact.
mpq_class hankel_coefficient(int order, int k);

// log10 of the Hankel optimal-truncation error estimate at x. Cheap; used
// for dispatch and planning.
double hankel_error_log10(int order, double x);

// √(2/(πx)) [P cos(x - φ) - Q sin(x - φ)], φ = π/4 (order 0) or 3π/4
// (order 1), truncated before its smallest term. The error estimate is twice
// the first omitted term (heuristic). Throws InsufficientAccuracyError when
// that estimate exceeds 10^-digits.
ExpansionEvaluation bessel_hankel(int order, const BigReal& x, int digits);

// Hankel iff its estimate is below 10^-(digits+2); otherwise the series.
BesselValue bessel_j0_auto(const BigReal& x, int digits);
BesselValue bessel_j1_auto(const BigReal& x, int digits);

}  // namespace gammaforge::bessel
