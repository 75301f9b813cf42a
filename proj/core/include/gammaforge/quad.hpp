#pragma once

// High-precision quadrature for the Bessel integrals.
//
// Finite intervals use tanh-sinh with level doubling. Semi-infinite
// oscillatory integrals ∫_T^∞ t^-p J0(t) dt are closed by repeated
// integration by parts against Bessel's equation (t J0')' = -t J0:
//
//   I(p) = T^-p J0'(T) + (p+1) T^{-p-1} J0(T) - (p+1)² I(p+2),
//
// and the final remainder is bounded with |J0(t)| <= √(2/(πt)).

#include <functional>
#include <optional>

#include "gammaforge/big_real.hpp"
#include "gammaforge/report.hpp"

namespace gammaforge::quad {

struct Integrand {
  // Evaluates f(t) to about 10^-digits absolute accuracy.
  std::function<BigReal(const BigReal& t, int digits)> eval;
  // Extra digits needed at t (e.g. near a cancellation point). Optional.
  std::function<int(const BigReal& t)> extra_digits;
};

struct Integral {
  BigReal value;
  BigReal error_bound;
  long evaluations = 0;
};

enum class TailKind { exponential_decay, bessel_oscillatory };

struct TailStrategy {
  TailKind kind = TailKind::exponential_decay;
  BigReal cutoff;
  BigReal tail_value;
  BigReal tail_error;
};

// ∫_a^b f. Tanh-sinh, doubling the node density until two successive levels
// differ by less than 10^-digits. Throws NonConvergenceError at the level cap.
Integral integrate_finite(const Integrand& f, const BigReal& a, const BigReal& b, int digits);

// Splits [a, b] into equal panels no wider than `max_width`.
Integral integrate_panels(const Integrand& f, const BigReal& a, const BigReal& b, double max_width, int digits);

// Smallest integer cutoff T >= 20 where the by-parts closure of
// ∫_T^∞ t^-power J0 reaches 10^-digits.
double by_parts_cutoff(double power, int digits);

// Pure by-parts closure of ∫_lower^∞ J0(t)/t^power dt, power > -1/2.
// Throws InsufficientAccuracyError if lower is too small for the target.
TailStrategy bessel_tail_by_parts(const BigReal& lower, const BigReal& power, int digits);

// ∫_lower^∞ J0(t)/t^power dt for any lower > 0: a finite panel up to the
// by-parts cutoff (when needed) plus the closure.
Integral bessel_tail_over_t(const BigReal& lower, const BigReal& power, int digits);

// ∫_0^∞ t^{μ-1} J0(t) dt for 0 < μ < 3/2.
Integral weber_integral(const BigReal& mu, int digits);
BigReal weber_closed_form(const BigReal& mu, int digits);
// Residual against 2^{μ-1} Γ(μ/2) / Γ(1-μ/2). Reports with μ >= 1/2 carry
// input outside_proof_window=true. Default tolerance 10^-(digits-10).
VerificationReport weber_integral_check(const BigReal& mu, int digits, std::optional<BigReal> tolerance = {});

// ∫_0^∞ (e^{-t/2} - J0(t))/t dt, split at `split` (default 20).
Integral nielsen_integral(int digits, double split = 20.0);
// Default tolerance 10^-(digits-5).
VerificationReport nielsen_integral_check(int digits, std::optional<BigReal> tolerance = {}, double split = 20.0);

// ∫_0^∞ e^{-αt} t^{μ-1} J0(t) dt by quadrature with an exponential tail bound.
Integral laplace_j0_quadrature(const BigReal& alpha, const BigReal& mu, int digits, TailStrategy* tail = nullptr);
// α^{-μ} Γ(μ) F(μ/2, (μ+1)/2; 1; -α^-2); requires α > 1.
BigReal laplace_j0_closed_form(const BigReal& alpha, const BigReal& mu, int digits);
// Requires α > 1 and 0 < μ < 1/2. Default tolerance 10^-(digits-10).
VerificationReport laplace_j0_hypergeometric(const BigReal& alpha, const BigReal& mu, int digits,
                                             std::optional<BigReal> tolerance = {});

}  // namespace gammaforge::quad
