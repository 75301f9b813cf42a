#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gammaforge/report.hpp"

namespace gammaforge::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kPrecisionFailure = 3;

inline constexpr int kDefaultMaxDigits = 5000;

const char* tool_version();

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

std::string reports_to_json(const std::string& command, const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
std::string reports_to_text(const std::vector<VerificationReport>& reports);

// Recognised claim names: theorem1, corollary1, lemma1, lemma2, ex5.7,
// hid-identity, n3-divergence, rate-fit:<n>, weber-sweep.
bool is_known_claim(const std::string& claim);

// Runs every sub-check of `claim` over its default grid (or `grid` values
// when non-empty). Reports come back in canonical grid order regardless of
// `threads`. Throws std::invalid_argument for an unknown claim or a grid the
// claim does not take.
std::vector<VerificationReport> run_claim(const std::string& claim, int precision, const std::vector<std::string>& grid,
                                          int threads);

}  // namespace gammaforge::cli
