#include "gammaforge/quad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gammaforge/bessel.hpp"
#include "gammaforge/errors.hpp"
#include "gammaforge/special.hpp"

namespace gammaforge::quad {

namespace {

constexpr double kLn10 = 2.30258509299404568402;
constexpr int kMaxLevel = 12;
constexpr double kOscillatoryPanel = 4.0;

BigReal exp10_double(double log10_value, int digits) {
  return exp(BigReal(log10_value * kLn10, digits));
}

std::string decimal(const BigReal& x) { return to_compact(x, 15); }

// One side of the tanh-sinh node set. Returns false once terms have been
// negligible for three consecutive nodes.
struct SideState {
  int negligible_run = 0;
  bool done() const { return negligible_run >= 3; }
};

}  // namespace

Integral integrate_finite(const Integrand& f, const BigReal& a, const BigReal& b, int digits) {
  if (!(a < b)) throw PreconditionError("integrate_finite requires a < b");
  const int wp = digits + 10;
  BigReal aw = a.at(wp), bw = b.at(wp);
  BigReal hw = (bw - aw) / 2;
  BigReal center = aw + hw;
  BigReal half_pi = const_pi(wp) / 2;
  const double negligible_log10 = -(wp + 3);
  const double u_cap = std::asinh(20.0 * wp * kLn10 / M_PI);
  long evaluations = 0;

  auto eval = [&](const BigReal& t) {
    const int extra = f.extra_digits ? std::max(0, f.extra_digits(t)) : 0;
    ++evaluations;
    return f.eval(t.at(wp + extra), wp + extra).at(wp);
  };

  // Contribution of the node pair at u > 0 (left and right separately).
  auto pair_terms = [&](double u, SideState& left, SideState& right) {
    BigReal uu(u, wp);  // dyadic, exact
    BigReal s = uu;
    mpfr_sinh(s.raw(), uu.raw(), MPFR_RNDN);
    s *= half_pi;
    BigReal comp = 2L / (exp(2 * s) + 1L);  // 1 - tanh(s)
    BigReal ch = uu;
    mpfr_cosh(ch.raw(), uu.raw(), MPFR_RNDN);
    BigReal weight = hw * half_pi * ch * comp * (2L - comp);
    BigReal offset = hw * comp;
    BigReal total(0L, wp);
    if (!left.done()) {
      BigReal term = weight * eval(aw + offset);
      left.negligible_run = term.log10_abs() < negligible_log10 ? left.negligible_run + 1 : 0;
      total += term;
    }
    if (!right.done()) {
      BigReal term = weight * eval(bw - offset);
      right.negligible_run = term.log10_abs() < negligible_log10 ? right.negligible_run + 1 : 0;
      total += term;
    }
    return total;
  };

  BigReal sum = hw * half_pi * eval(center);
  {
    SideState left, right;
    for (int k = 1; k <= static_cast<int>(u_cap) + 1 && !(left.done() && right.done()); ++k) {
      sum += pair_terms(static_cast<double>(k), left, right);
    }
  }
  BigReal previous = sum;
  BigReal tol = pow10(-digits, wp);
  for (int level = 1; level <= kMaxLevel; ++level) {
    const double h = std::ldexp(1.0, -level);
    SideState left, right;
    for (long j = 0;; ++j) {
      const double u = (2.0 * j + 1.0) * h;
      if (u > u_cap || (left.done() && right.done())) break;
      sum += pair_terms(u, left, right);
    }
    BigReal current = ldexp(sum, -level);
    BigReal diff = abs(current - previous);
    if (level >= 3 && diff < tol) {
      BigReal bound = diff + pow10(-(wp - 2), wp) * (abs(current) + 1L);
      return {current.at(digits), bound.at(digits), evaluations};
    }
    previous = current;
  }
  throw NonConvergenceError("integrate_finite: level cap reached on [" + decimal(a) + ", " + decimal(b) + "]");
}

Integral integrate_panels(const Integrand& f, const BigReal& a, const BigReal& b, double max_width, int digits) {
  if (!(a < b)) throw PreconditionError("integrate_panels requires a < b");
  if (!(max_width > 0)) throw PreconditionError("panel width must be positive");
  const long panels = std::max(1L, static_cast<long>(std::ceil((b - a).to_double() / max_width)));
  const int pd = digits + static_cast<int>(std::ceil(std::log10(static_cast<double>(panels)))) + 1;
  BigReal width = (b.at(pd + 10) - a.at(pd + 10)) / panels;
  Integral total{BigReal(0L, pd), BigReal(0L, pd), 0};
  for (long i = 0; i < panels; ++i) {
    BigReal lo = a.at(pd + 10) + width * i;
    BigReal hi = (i + 1 == panels) ? b.at(pd + 10) : a.at(pd + 10) + width * (i + 1);
    Integral part = integrate_finite(f, lo, hi, pd);
    total.value += part.value;
    total.error_bound += part.error_bound;
    total.evaluations += part.evaluations;
  }
  return {total.value.at(digits), total.error_bound.at(digits), total.evaluations};
}

namespace {

struct ByPartsPlan {
  int steps = 0;
  double remainder_log10 = HUGE_VAL;
};

// Number of by-parts steps m for ∫_T^∞ t^-p J0 and the log10 of the bound
//   C_m √(2/π) T^{1/2-q} / (q - 1/2),  q = p + 2m,  C_m = Π_{i<m} (p+2i+1)².
// Stops at the first m meeting 10^-digits, else at the optimal m.
ByPartsPlan plan_by_parts(double p, double t, int digits) {
  ByPartsPlan best;
  double log_c = 0;
  const double log_t = std::log10(t);
  for (int m = 1; m < 100000; ++m) {
    log_c += 2.0 * std::log10(p + 2.0 * (m - 1) + 1.0);
    const double q = p + 2.0 * m;
    const double rem = log_c + 0.5 * std::log10(2.0 / M_PI) + (0.5 - q) * log_t - std::log10(q - 0.5);
    if (rem < best.remainder_log10) {
      best = {m, rem};
    } else if (rem > best.remainder_log10 + 1.0) {
      break;
    }
    if (rem < -digits) break;
  }
  return best;
}

void check_power(const BigReal& power) {
  if (!(power > BigReal(-0.5, power.precision()))) throw PreconditionError("tail power must exceed -1/2");
}

Integrand power_times_j0(const BigReal& power) {
  return Integrand{[power](const BigReal& t, int d) {
                     return bessel::bessel_j0_auto(t, d).value * pow(t, -power.at(d));
                   },
                   {}};
}

}  // namespace

double by_parts_cutoff(double power, int digits) {
  for (double t = 20.0;; t += 1.0) {
    if (plan_by_parts(power, t, digits).remainder_log10 < -digits) return t;
  }
}

TailStrategy bessel_tail_by_parts(const BigReal& lower, const BigReal& power, int digits) {
  if (lower.sign() <= 0) throw PreconditionError("tail lower limit must be positive");
  check_power(power);
  const int wp = digits + 10;
  const double p = power.to_double();
  ByPartsPlan plan = plan_by_parts(p, lower.to_double(), digits + 2);
  if (plan.remainder_log10 > -digits) {
    throw InsufficientAccuracyError("by-parts closure cannot reach 1e-" + std::to_string(digits) +
                                    " from lower limit " + decimal(lower));
  }
  BigReal t = lower.at(wp);
  BigReal pw = power.at(wp);
  bessel::BesselValue j0 = bessel::bessel_j0_auto(t, wp);
  bessel::BesselValue j1 = bessel::bessel_j1_auto(t, wp);
  BigReal dj0 = -j1.value;

  BigReal value(0L, wp);
  BigReal propagated(0L, wp);
  BigReal coef(1L, wp);            // (-1)^j C_j
  BigReal tpow = pow(t, -pw);      // T^{-p-2j}
  BigReal inv_t2 = 1L / (t * t);
  for (int j = 0; j < plan.steps; ++j) {
    BigReal k = pw + (2 * j + 1);  // p + 2j + 1
    BigReal a = coef * tpow;
    BigReal b = a * k / t;
    value += a * dj0 + b * j0.value;
    propagated += abs(a) * j1.error_bound + abs(b) * j0.error_bound;
    coef *= -(k * k);
    tpow *= inv_t2;
  }
  BigReal error = exp10_double(plan.remainder_log10, wp) + propagated;
  return {TailKind::bessel_oscillatory, lower, value.at(digits), error.at(digits)};
}

Integral bessel_tail_over_t(const BigReal& lower, const BigReal& power, int digits) {
  if (lower.sign() <= 0) throw PreconditionError("tail lower limit must be positive");
  check_power(power);
  const int wp = digits + 2;
  const double cutoff = by_parts_cutoff(power.to_double(), wp);
  if (lower.to_double() >= cutoff) {
    TailStrategy tail = bessel_tail_by_parts(lower, power, wp);
    return {tail.tail_value.at(digits), tail.tail_error.at(digits), 0};
  }
  BigReal c(cutoff, wp + 10);
  Integral finite = integrate_panels(power_times_j0(power), lower, c, kOscillatoryPanel, wp);
  TailStrategy tail = bessel_tail_by_parts(c, power, wp);
  return {(finite.value + tail.tail_value).at(digits), (finite.error_bound + tail.tail_error).at(digits),
          finite.evaluations};
}

namespace {

void check_weber_mu(const BigReal& mu) {
  if (!(mu.sign() > 0 && mu < BigReal(1.5, mu.precision()))) {
    throw PreconditionError("Weber integral requires 0 < mu < 3/2");
  }
}

}  // namespace

Integral weber_integral(const BigReal& mu, int digits) {
  check_weber_mu(mu);
  const int wp = digits + 2;
  BigReal p = 1L - mu.at(wp + 10);
  const double cutoff = by_parts_cutoff(p.to_double(), wp);
  BigReal c(cutoff, wp + 10);
  Integral finite = integrate_panels(power_times_j0(p), BigReal(0L, wp + 10), c, kOscillatoryPanel, wp);
  TailStrategy tail = bessel_tail_by_parts(c, p, wp);
  return {(finite.value + tail.tail_value).at(digits), (finite.error_bound + tail.tail_error).at(digits),
          finite.evaluations};
}

BigReal weber_closed_form(const BigReal& mu, int digits) {
  check_weber_mu(mu);
  const int wp = digits + 5;
  BigReal m = mu.at(wp);
  BigReal two(2L, wp);
  return (pow(two, m - 1L) * special::gamma_fn(m / 2, wp) / special::gamma_fn(1L - m / 2, wp)).at(digits);
}

VerificationReport weber_integral_check(const BigReal& mu, int digits, std::optional<BigReal> tolerance) {
  Stopwatch clock;
  Integral numeric = weber_integral(mu, digits);
  BigReal closed = weber_closed_form(mu, digits);
  BigReal tol = tolerance.value_or(pow10(-(digits - 10), digits));
  std::map<std::string, std::string> inputs{{"mu", decimal(mu)}, {"precision", std::to_string(digits)}};
  inputs["outside_proof_window"] = mu >= BigReal(0.5, mu.precision()) ? "true" : "false";
  return VerificationReport::make("lemma1/mu=" + decimal(mu), std::move(inputs), numeric.value - closed, tol,
                                  clock.elapsed_ms());
}

Integral nielsen_integral(int digits, double split) {
  if (!(split > 0)) throw PreconditionError("split point must be positive");
  const int wp = digits + 2;
  // (e^{-t/2} - J0(t))/t -> -1/2 as t -> 0 with cancellation of ~log10(1/t)
  // digits between the two terms.
  Integrand g{[](const BigReal& t, int d) {
                return (exp(-t / 2) - bessel::bessel_j0_auto(t, d).value) / t;
              },
              [](const BigReal& t) {
                const double l = t.log10_abs();
                return l < 0 ? static_cast<int>(std::ceil(-l)) + 2 : 0;
              }};
  BigReal s(split, wp + 10);
  Integral finite = integrate_panels(g, BigReal(0L, wp + 10), s, kOscillatoryPanel, wp);
  BigReal exp_tail = special::exp_integral_E1(s / 2, wp);  // ∫_s^∞ e^{-t/2}/t dt
  Integral j0_tail = bessel_tail_over_t(s, BigReal(1L, wp), wp);
  return {(finite.value + exp_tail - j0_tail.value).at(digits),
          (finite.error_bound + j0_tail.error_bound + pow10(-wp, wp)).at(digits),
          finite.evaluations + j0_tail.evaluations};
}

VerificationReport nielsen_integral_check(int digits, std::optional<BigReal> tolerance, double split) {
  Stopwatch clock;
  Integral value = nielsen_integral(digits, split);
  BigReal tol = tolerance.value_or(pow10(-(digits - 5), digits));
  return VerificationReport::make("lemma2", {{"precision", std::to_string(digits)}, {"split", std::to_string(split)}},
                                  value.value, tol, clock.elapsed_ms());
}

Integral laplace_j0_quadrature(const BigReal& alpha, const BigReal& mu, int digits, TailStrategy* tail) {
  if (alpha.sign() <= 0) throw PreconditionError("Laplace transform requires alpha > 0");
  if (!(mu.sign() > 0 && mu < 1L)) throw PreconditionError("Laplace quadrature requires 0 < mu < 1");
  const int wp = digits + 2;
  const double a = alpha.to_double();
  const double m = mu.to_double();
  // Cutoff where the envelope e^{-αT} T^{μ-1} / α clears 10^-(wp+3).
  double cut = ((wp + 3) * kLn10 - std::log(a)) / a;
  for (int i = 0; i < 50; ++i) cut = ((wp + 3) * kLn10 - std::log(a) + (m - 1.0) * std::log(cut)) / a;
  BigReal c(cut, wp + 10);
  BigReal aw = alpha.at(wp + 10), mw = mu.at(wp + 10);
  Integrand f{[aw, mw](const BigReal& t, int d) {
                return exp(-aw.at(d) * t) * pow(t, mw.at(d) - 1L) * bessel::bessel_j0_auto(t, d).value;
              },
              {}};
  Integral finite = integrate_panels(f, BigReal(0L, wp + 10), c, kOscillatoryPanel, wp);
  BigReal envelope = exp(-aw * c) * pow(c, mw - 1L) / aw;
  if (tail) *tail = TailStrategy{TailKind::exponential_decay, c, BigReal(0L, wp), envelope.at(wp)};
  return {finite.value.at(digits), (finite.error_bound + envelope).at(digits), finite.evaluations};
}

BigReal laplace_j0_closed_form(const BigReal& alpha, const BigReal& mu, int digits) {
  if (!(alpha > 1L)) throw PreconditionError("hypergeometric route requires alpha > 1 (continuation not implemented)");
  const int wp = digits + 5;
  BigReal a = alpha.at(wp), m = mu.at(wp);
  BigReal z = -1L / (a * a);
  SeriesResult f = special::hyp2f1(m / 2, (m + 1L) / 2, BigReal(1L, wp), z, wp);
  return (pow(a, -m) * special::gamma_fn(m, wp) * f.value).at(digits);
}

VerificationReport laplace_j0_hypergeometric(const BigReal& alpha, const BigReal& mu, int digits,
                                             std::optional<BigReal> tolerance) {
  if (!(alpha > 1L)) throw PreconditionError("hypergeometric route requires alpha > 1 (continuation not implemented)");
  if (!(mu.sign() > 0 && mu < BigReal(0.5, mu.precision()))) throw PreconditionError("requires 0 < mu < 1/2");
  Stopwatch clock;
  Integral numeric = laplace_j0_quadrature(alpha, mu, digits);
  BigReal closed = laplace_j0_closed_form(alpha, mu, digits);
  BigReal tol = tolerance.value_or(pow10(-(digits - 10), digits));
  return VerificationReport::make("ex5.7/alpha=" + decimal(alpha) + ",mu=" + decimal(mu),
                                  {{"alpha", decimal(alpha)}, {"mu", decimal(mu)}, {"precision", std::to_string(digits)}},
                                  numeric.value - closed, tol, clock.elapsed_ms());
}

}  // namespace gammaforge::quad
