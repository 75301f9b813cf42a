#include "gammaforge/bessel.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "gammaforge/errors.hpp"

namespace gammaforge::bessel {

namespace {

constexpr double kLog10E = 0.43429448190325182765;

void check_order(int order) {
  if (order != 0 && order != 1) throw PreconditionError("only orders 0 and 1 are supported");
}

class HankelCoefficients {
 public:
  mpq_class get(int order, int k) {
    std::lock_guard lock(mu_);
    auto& table = tables_[order];
    if (table.empty()) table.emplace_back(1);
    const long mu = 4L * order * order;
    while (static_cast<int>(table.size()) <= k) {
      const long j = static_cast<long>(table.size());
      mpq_class next = table.back() * mpq_class(mu - (2 * j - 1) * (2 * j - 1), 8 * j);
      next.canonicalize();
      table.push_back(next);
    }
    return table[static_cast<std::size_t>(k)];
  }

 private:
  std::mutex mu_;
  std::vector<mpq_class> tables_[2];
};

HankelCoefficients& coefficients() {
  static HankelCoefficients c;
  return c;
}

// log10 |a_k(ν)| / x^k evaluated in doubles.
double term_log10(int order, int k, double x) {
  const double mu = 4.0 * order * order;
  double acc = 0;
  for (int j = 1; j <= k; ++j) {
    const double odd = 2.0 * j - 1.0;
    acc += std::log10(std::fabs(mu - odd * odd)) - std::log10(8.0 * j * x);
  }
  return acc;
}

// Index of the smallest |a_k| / x^k, k >= 1.
int smallest_term_index(int order, double x) {
  const double mu = 4.0 * order * order;
  int k = 1;
  // |a_{k+1}/a_k| / x = |mu - (2k+1)^2| / (8 (k+1) x)
  for (;;) {
    const double odd = 2.0 * k + 1.0;
    const double ratio = std::fabs(mu - odd * odd) / (8.0 * (k + 1) * x);
    if (ratio >= 1.0) return k;
    ++k;
    if (k > 100000000) return k;
  }
}

template <int Order>
SeriesResult power_series(const BigReal& x, int digits) {
  if (x.sign() < 0) throw PreconditionError("Bessel power series requires x >= 0");
  const double xd = x.to_double();
  const int wp = digits + static_cast<int>(std::ceil(2.0 * xd * kLog10E)) + 10;
  BigReal half = x.at(wp) / 2;
  BigReal q = -(half * half);
  BigReal term = Order == 0 ? BigReal(1L, wp) : half;
  BigReal sum = term;
  BigReal max_term = abs(term);
  long k = 0;
  if (!x.is_zero()) {
    for (;;) {
      ++k;
      term *= q;
      term /= Order == 0 ? k * k : k * (k + 1);
      sum += term;
      if (abs(term) > max_term) max_term = abs(term);
      if (static_cast<double>(k) > xd / 2 && term.log10_abs() < -wp) break;
    }
  }
  // Alternating with decreasing magnitude past the peak: the first omitted
  // term bounds the truncation; rounding adds ~ k ulps of the largest term.
  BigReal next = abs(term) * abs(q) / (Order == 0 ? (k + 1) * (k + 1) : (k + 1) * (k + 2));
  BigReal bound = next + max_term * (k + 1) * pow10(-wp, wp);
  return {sum.at(digits), k, bound.at(digits)};
}

BesselValue dispatch(int order, const BigReal& x, int digits) {
  if (x.sign() < 0) throw PreconditionError("Bessel functions require x >= 0");
  if (x.sign() > 0 && hankel_error_log10(order, x.to_double()) < -(digits + 2)) {
    ExpansionEvaluation h = bessel_hankel(order, x, digits);
    return {h.value, Route::hankel, h.error_estimate};
  }
  SeriesResult s = order == 0 ? bessel_j0_series(x, digits) : bessel_j1_series(x, digits);
  return {s.value, Route::power_series, s.error_bound};
}

}  // namespace

SeriesResult bessel_j0_series(const BigReal& x, int digits) { return power_series<0>(x, digits); }
SeriesResult bessel_j1_series(const BigReal& x, int digits) { return power_series<1>(x, digits); }

mpq_class hankel_coefficient(int order, int k) {
  check_order(order);
  if (k < 0) throw PreconditionError("Hankel coefficient index must be non-negative");
  return coefficients().get(order, k);
}

double hankel_error_log10(int order, double x) {
  check_order(order);
  if (x <= 0) return HUGE_VAL;
  const int k = smallest_term_index(order, x);
  return std::log10(2.0) + 0.5 * std::log10(2.0 / (M_PI * x)) + term_log10(order, k, x);
}

ExpansionEvaluation bessel_hankel(int order, const BigReal& x, int digits) {
  check_order(order);
  if (x.sign() <= 0) throw PreconditionError("Hankel expansion requires x > 0");
  const double xd = x.to_double();
  const double est_log10 = hankel_error_log10(order, xd);
  if (est_log10 > -digits) {
    throw InsufficientAccuracyError("Hankel expansion cannot reach 1e-" + std::to_string(digits) +
                                    " at x = " + to_compact(x, 10));
  }
  const int wp = digits + 10;
  const int smallest = smallest_term_index(order, xd);
  BigReal xw = x.at(wp);
  BigReal p(0L, wp), q(0L, wp);
  BigReal inv_pow(1L, wp);  // x^-k
  BigReal inv_x = 1L / xw;
  for (int k = 0; k < smallest; ++k) {
    BigReal term = BigReal::from_rational(hankel_coefficient(order, k), wp) * inv_pow;
    // P collects even k with sign (-1)^(k/2), Q odd k with (-1)^((k-1)/2).
    const bool negative = (k / 2) % 2 == 1;
    if (k % 2 == 0) {
      p += negative ? -term : term;
    } else {
      q += negative ? -term : term;
    }
    inv_pow *= inv_x;
  }
  BigReal pi = const_pi(wp);
  BigReal phase = xw - pi * (2 * order + 1) / 4;
  BigReal prefactor = sqrt(2L / (pi * xw));
  BigReal value = prefactor * (p * cos(phase) - q * sin(phase));
  BigReal smallest_term = abs(BigReal::from_rational(hankel_coefficient(order, smallest), wp) * inv_pow);
  BigReal estimate = 2 * prefactor * smallest_term;
  return {value.at(digits), smallest, smallest_term.at(digits), estimate.at(digits)};
}

BesselValue bessel_j0_auto(const BigReal& x, int digits) { return dispatch(0, x, digits); }
BesselValue bessel_j1_auto(const BigReal& x, int digits) { return dispatch(1, x, digits); }

}  // namespace gammaforge::bessel
