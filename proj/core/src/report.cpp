#include "gammaforge/report.hpp"

#include <utility>

namespace gammaforge {

namespace {
constexpr int kReportDigits = 60;
constexpr int kResidualSignificant = 6;
}  // namespace

bool residual_within(const std::string& residual, const std::string& tolerance) {
  BigReal r = BigReal::parse(residual, kReportDigits);
  BigReal t = BigReal::parse(tolerance, kReportDigits);
  return abs(r) <= t;
}

VerificationReport VerificationReport::make(std::string claim_id, std::map<std::string, std::string> inputs,
                                            const BigReal& residual, const BigReal& tolerance, long wall_time_ms) {
  VerificationReport r;
  r.claim_id = std::move(claim_id);
  r.inputs = std::move(inputs);
  r.computed_residual = to_scientific(residual, kResidualSignificant);
  r.tolerance = to_scientific(tolerance, kResidualSignificant);
  r.passed = residual_within(r.computed_residual, r.tolerance);
  r.wall_time_ms = wall_time_ms;
  return r;
}

}  // namespace gammaforge
