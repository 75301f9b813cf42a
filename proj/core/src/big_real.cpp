#include "gammaforge/big_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "gammaforge/errors.hpp"

namespace gammaforge {

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;
constexpr long kExtraBits = 8;

struct MpfrString {
  char* p;
  ~MpfrString() { mpfr_free_str(p); }
};

void check_digits(int digits) {
  if (digits < 1) throw PreconditionError("precision must be at least one digit");
}

}  // namespace

long bits_for_digits(int digits) {
  check_digits(digits);
  return static_cast<long>(std::ceil(digits * kLog2Of10)) + kExtraBits;
}

BigReal::BigReal(int digits, uninitialized_tag) : digits_(digits) {
  mpfr_init2(v_, bits_for_digits(digits));
}

BigReal::BigReal(double value, int digits) : BigReal(digits, uninitialized_tag{}) {
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, int digits) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigReal num = parse(s.substr(0, slash), digits + 5);
    BigReal den = parse(s.substr(slash + 1), digits + 5);
    if (den.is_zero()) throw DomainError("zero denominator in '" + s + "'");
    return (num / den).at(digits);
  }
  BigReal r(digits, uninitialized_tag{});
  if (s.empty()) throw PreconditionError("empty number");
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end != s.c_str() + s.size()) throw PreconditionError("not a decimal number: '" + s + "'");
  return r;
}

BigReal BigReal::from_rational(const mpq_class& q, int digits) {
  BigReal r(digits, uninitialized_tag{});
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::from_integer(const mpz_class& z, int digits) {
  BigReal r(digits, uninitialized_tag{});
  mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigReal::BigReal(const BigReal& other) : BigReal(other.digits_, uninitialized_tag{}) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    digits_ = other.digits_;
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  std::swap(digits_, other.digits_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::at(int digits) const {
  BigReal r(digits, uninitialized_tag{});
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

void BigReal::narrow_to(int digits) {
  if (digits < digits_) {
    mpfr_prec_round(v_, bits_for_digits(digits), MPFR_RNDN);
    digits_ = digits;
  }
}

double BigReal::log10_abs() const {
  if (is_zero()) return -HUGE_VAL;
  long e = 0;
  double d = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(d)) + static_cast<double>(e) * 0.30102999566398119521;
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

// Compound ops narrow first so the single rounding happens at the result
// precision (min of the operands).
BigReal& BigReal::operator+=(const BigReal& rhs) {
  narrow_to(rhs.digits_);
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(const BigReal& rhs) {
  narrow_to(rhs.digits_);
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(const BigReal& rhs) {
  narrow_to(rhs.digits_);
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  narrow_to(rhs.digits_);
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(long rhs) {
  if (rhs == 0) throw DomainError("division by zero");
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator-(long lhs, const BigReal& rhs) {
  BigReal r(rhs.digits_, BigReal::uninitialized_tag{});
  mpfr_si_sub(r.v_, lhs, rhs.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(long lhs, const BigReal& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  BigReal r(rhs.digits_, BigReal::uninitialized_tag{});
  mpfr_si_div(r.v_, lhs, rhs.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

template <typename F>
BigReal unary(const BigReal& x, F f) {
  BigReal r = x;
  f(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  return unary(x, mpfr_sqrt);
}

BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("ln of a non-positive number");
  return unary(x, mpfr_log);
}

BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }

BigReal pow(const BigReal& base, long exponent) {
  if (exponent < 0 && base.is_zero()) throw DomainError("zero to a negative power");
  BigReal r = base;
  mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& base, const BigReal& exponent) {
  if (base.sign() < 0 && !exponent.is_integer()) throw DomainError("negative base to a non-integral power");
  BigReal r = base.precision() <= exponent.precision() ? base : base.at(exponent.precision());
  mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return r;
}

BigReal ldexp(const BigReal& x, long exp2) {
  BigReal r = x;
  mpfr_mul_2si(r.raw(), x.raw(), exp2, MPFR_RNDN);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal pow10(long e, int digits) {
  BigReal r(1L, digits);
  if (e >= 0) {
    mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e), MPFR_RNDN);
  } else {
    mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(-e), MPFR_RNDN);
    mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  }
  return r;
}

BigReal const_pi(int digits) {
  BigReal r(0L, digits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal elementary(ElementaryOp op, std::span<const BigReal> args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw PreconditionError("wrong number of arguments for elementary op");
  };
  switch (op) {
    case ElementaryOp::add: need(2); return args[0] + args[1];
    case ElementaryOp::sub: need(2); return args[0] - args[1];
    case ElementaryOp::mul: need(2); return args[0] * args[1];
    case ElementaryOp::div: need(2); return args[0] / args[1];
    case ElementaryOp::sqrt: need(1); return sqrt(args[0]);
    case ElementaryOp::exp: need(1); return exp(args[0]);
    case ElementaryOp::ln: need(1); return log(args[0]);
    case ElementaryOp::sin: need(1); return sin(args[0]);
    case ElementaryOp::cos: need(1); return cos(args[0]);
    case ElementaryOp::pow_int:
      need(2);
      if (!args[1].is_integer() || !mpfr_fits_slong_p(args[1].raw(), MPFR_RNDN)) {
        throw PreconditionError("pow_int exponent must be an integer");
      }
      return pow(args[0], args[1].to_long()).at(std::min(args[0].precision(), args[1].precision()));
  }
  throw PreconditionError("unknown elementary op");
}

int PrecisionPlan::default_guard(int target_digits) {
  return std::max(10, static_cast<int>(std::ceil(0.05 * target_digits)));
}

PrecisionPlan PrecisionPlan::make(int target_digits, std::optional<int> guard_digits) {
  check_digits(target_digits);
  int guard = guard_digits.value_or(default_guard(target_digits));
  if (guard < 10) throw PreconditionError("guard_digits must be at least 10");
  return PrecisionPlan{target_digits, guard, target_digits + guard, std::nullopt};
}

PrecisionPlan PrecisionPlan::unguarded(int target_digits, int guard_digits) {
  check_digits(target_digits);
  if (guard_digits < 0) throw PreconditionError("guard_digits must be non-negative");
  return PrecisionPlan{target_digits, guard_digits, target_digits + guard_digits, std::nullopt};
}

std::string to_fixed(const BigReal& x, int decimals) {
  if (decimals < 0) throw PreconditionError("negative decimal count");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  // Exact product: enough bits for x times 10^decimals.
  mpfr_t y;
  mpfr_init2(y, mpfr_get_prec(x.raw()) + static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 2)) + 2);
  mpfr_mul_z(y, x.raw(), scale.get_mpz_t(), MPFR_RNDN);
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), y, MPFR_RNDN);  // ties to even
  mpfr_clear(y);

  bool negative = n < 0;
  if (negative) n = -n;
  std::string digits = n.get_str();
  if (static_cast<int>(digits.size()) <= decimals) {
    digits.insert(0, static_cast<std::size_t>(decimals + 1) - digits.size(), '0');
  }
  std::string out = digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
  if (decimals > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(decimals));
  return (negative ? "-" : "") + out;
}

namespace {

// Significant digits and decimal exponent (value = 0.DIGITS * 10^exp).
std::pair<std::string, long> decimal_digits(const BigReal& x, int significant) {
  mpfr_exp_t e = 0;
  MpfrString s{mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(std::max(significant, 1)), x.raw(), MPFR_RNDN)};
  return {std::string(s.p), static_cast<long>(e)};
}

}  // namespace

std::string to_scientific(const BigReal& x, int significant) {
  if (x.is_zero()) return "0";
  if (!x.is_finite()) return mpfr_nan_p(x.raw()) ? "nan" : (x.sign() > 0 ? "inf" : "-inf");
  auto [d, e] = decimal_digits(x, significant);
  std::string sign;
  if (d[0] == '-') {
    sign = "-";
    d.erase(0, 1);
  }
  std::string mant = d.substr(0, 1);
  if (d.size() > 1) mant += "." + d.substr(1);
  return sign + mant + "e" + std::to_string(e - 1);
}

std::string to_compact(const BigReal& x, int significant) {
  if (x.is_zero()) return "0";
  if (!x.is_finite()) return to_scientific(x, significant);
  auto [d, e] = decimal_digits(x, significant);
  std::string sign;
  if (d[0] == '-') {
    sign = "-";
    d.erase(0, 1);
  }
  while (d.size() > 1 && d.back() == '0') d.pop_back();
  long point = e;  // digits before the decimal point
  if (point > 40 || point < -8) {
    std::string mant = d.substr(0, 1);
    if (d.size() > 1) mant += "." + d.substr(1);
    return sign + mant + "e" + std::to_string(point - 1);
  }
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + d;
  } else if (point >= static_cast<long>(d.size())) {
    out = d + std::string(static_cast<std::size_t>(point) - d.size(), '0');
  } else {
    out = d.substr(0, static_cast<std::size_t>(point)) + "." + d.substr(static_cast<std::size_t>(point));
  }
  return sign + out;
}

}  // namespace gammaforge
