#pragma once

#include <string>

#include <doctest.h>
#include <gmpxx.h>

#include "gammaforge/big_real.hpp"

namespace gftest {

using gammaforge::BigReal;

// γ to 1010 decimals, from an independent arbitrary-precision package.
inline const std::string kEulerGamma1010 =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674"
    "9514631447249807082480960504014486542836224173997644923536253500333742937337737673942792595258247094"
    "9160087352039481656708532331517766115286211995015079847937450857057400299213547861466940296043254215"
    "1905877553526733139925401296742051375413954911168510280798423487758720503843109399736137255306088933"
    "1267600172479537836759271351577226102734929139407984301034177717780881549570661075010161916633401522"
    "7893586796549725203621287922655595366962817638879272680132431010476505963703947394957638906572967929"
    "6010090151251959509222435014093498712282479497471956469763185066761290638110518241974448678363808617"
    "4945516989279230187739107294578155431600500218284409605377243420328547836701517739439870030237033951"
    "8328690001558193988042707411542227819716523011073565833967348717650491941812300040654693142999297779"
    "5693031005030863034185698032310836916400258929708909854868257773642882539549258736295961332985747393"
    "023734388471";

inline BigReal num(const std::string& s, int digits = 60) { return BigReal::parse(s, digits); }

// |a - b| <= 10^-e
inline bool agree(const BigReal& a, const BigReal& b, long e) {
  BigReal d = gammaforge::abs(a - b);
  return d.is_zero() || d.log10_abs() <= -static_cast<double>(e);
}

// |a - b| <= 10^-e * |b|
inline bool agree_rel(const BigReal& a, const BigReal& b, long e) {
  BigReal d = gammaforge::abs(a - b);
  return d.is_zero() || d.log10_abs() - gammaforge::abs(b).log10_abs() <= -static_cast<double>(e);
}

// Number of leading decimals on which two "0.xxxx" strings agree.
inline std::size_t common_decimals(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i < 2 ? 0 : i - 2;
}

// π by Machin's formula in scaled integer arithmetic; independent of MPFR.
inline mpz_class machin_pi_scaled(int decimals) {
  const int guard = 10;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, decimals + guard);
  auto arctan_inv = [&](unsigned long m) {
    mpz_class sum = 0, power = scale / m, term;
    const unsigned long m2 = m * m;
    for (unsigned long k = 0; power != 0; ++k) {
      term = power / (2 * k + 1);
      sum += (k % 2 == 0) ? term : mpz_class(-term);
      power /= m2;
    }
    return sum;
  };
  mpz_class pi = 4 * (4 * arctan_inv(5) - arctan_inv(239));
  mpz_class drop;
  mpz_ui_pow_ui(drop.get_mpz_t(), 10, guard);
  return pi / drop;
}

}  // namespace gftest
