#pragma once

#include <chrono>
#include <map>
#include <string>

#include "gammaforge/big_real.hpp"

namespace gammaforge {

// Outcome of one numerical claim check. Residual and tolerance are decimal
// strings; `passed` is derived from those strings so the two never disagree.
struct VerificationReport {
  std::string claim_id;
  std::map<std::string, std::string> inputs;
  std::string computed_residual;
  std::string tolerance;
  bool passed = false;
  long wall_time_ms = 0;

  static VerificationReport make(std::string claim_id, std::map<std::string, std::string> inputs,
                                 const BigReal& residual, const BigReal& tolerance, long wall_time_ms);

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// |residual| <= tolerance, evaluated on the decimal strings.
bool residual_within(const std::string& residual, const std::string& tolerance);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long elapsed_ms() const {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace gammaforge
