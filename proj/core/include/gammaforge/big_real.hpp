#pragma once

// Precision-tagged arbitrary-precision reals.
//
// BigReal carries its own working precision in decimal digits. Results of
// binary operations take the smaller operand precision. There is no global
// precision state anywhere in the library.

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

#ifndef MPFR_USE_INTMAX_T
#define MPFR_USE_INTMAX_T 1
#endif
#include <mpfr.h>

namespace gammaforge {

// Binary precision used for a decimal-digit request. Over-provisions by a
// fixed number of bits so one rounding stays well inside 10^(1-digits).
long bits_for_digits(int digits);

class BigReal {
 public:
  static constexpr int kDefaultDigits = 20;

  BigReal() : BigReal(0L, kDefaultDigits) {}

  template <std::integral I>
  BigReal(I value, int digits) : BigReal(digits, uninitialized_tag{}) {
    if constexpr (std::is_signed_v<I>) {
      mpfr_set_sj(v_, static_cast<intmax_t>(value), MPFR_RNDN);
    } else {
      mpfr_set_uj(v_, static_cast<uintmax_t>(value), MPFR_RNDN);
    }
  }
  BigReal(double value, int digits);

  // Parses a decimal literal such as "0.25", "-3e-7" or "1/4".
  static BigReal parse(std::string_view text, int digits);
  static BigReal from_rational(const mpq_class& q, int digits);
  static BigReal from_integer(const mpz_class& z, int digits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int precision() const { return digits_; }

  // Same value rounded (or exactly widened) to another precision.
  BigReal at(int digits) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // log10|value| as a double; finite for any nonzero value regardless of
  // exponent range. Returns -infinity for zero.
  double log10_abs() const;

  BigReal operator-() const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
  friend BigReal operator+(BigReal lhs, long rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, long rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }
  friend BigReal operator+(long lhs, BigReal rhs) { return rhs += lhs; }
  friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
  friend BigReal operator-(long lhs, const BigReal& rhs);
  friend BigReal operator/(long lhs, const BigReal& rhs);

  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, long b);
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

 private:
  struct uninitialized_tag {};
  BigReal(int digits, uninitialized_tag);
  void narrow_to(int digits);

  mpfr_t v_;
  int digits_;
};

// Elementary functions. Each rounds once at the argument's precision.
BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal pow(const BigReal& base, long exponent);
BigReal pow(const BigReal& base, const BigReal& exponent);
BigReal ldexp(const BigReal& x, long exp2);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

// 10^e at the given precision.
BigReal pow10(long e, int digits);

BigReal const_pi(int digits);

enum class ElementaryOp { add, sub, mul, div, sqrt, exp, ln, sin, cos, pow_int };

// Tag-dispatched entry point over the functions above. Arity is checked:
// binary ops take two arguments, pow_int requires an integral exponent.
BigReal elementary(ElementaryOp op, std::span<const BigReal> args);

// Working-precision plan for one series evaluation.
struct PrecisionPlan {
  int target_digits = 0;
  int guard_digits = 0;
  int working_digits = 0;
  std::optional<long> truncation_hint;

  static int default_guard(int target_digits);
  // guard defaults to default_guard(target); guard < 10 is rejected.
  static PrecisionPlan make(int target_digits, std::optional<int> guard_digits = {});
  // Skips the guard floor. Diagnostics only (e.g. demonstrating what
  // under-guarded evaluation does).
  static PrecisionPlan unguarded(int target_digits, int guard_digits);
};

struct SeriesResult {
  BigReal value;
  long terms = 0;  // index of the last term included
  BigReal error_bound;
};

// Decimal formatting. Rounding is to nearest with ties to even.
std::string to_fixed(const BigReal& x, int decimals);
std::string to_scientific(const BigReal& x, int significant);
// `significant` digits, trailing zeros stripped, plain notation when the
// exponent is moderate.
std::string to_compact(const BigReal& x, int significant);

}  // namespace gammaforge
