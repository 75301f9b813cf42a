#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "gammaforge/bessel.hpp"
#include "gammaforge/errors.hpp"
#include "gammaforge/gamma_const.hpp"
#include "gammaforge/quad.hpp"
#include "gammaforge/ramanujan.hpp"
#include "gammaforge/special.hpp"

#ifndef GAMMAFORGE_VERSION
#define GAMMAFORGE_VERSION "0.0.0"
#endif

namespace gammaforge::cli {

using nlohmann::json;

const char* tool_version() { return GAMMAFORGE_VERSION; }

void to_json(json& j, const VerificationReport& r) {
  j = json{{"claim_id", r.claim_id},
           {"inputs", r.inputs},
           {"computed_residual", r.computed_residual},
           {"tolerance", r.tolerance},
           {"passed", r.passed},
           {"wall_time_ms", r.wall_time_ms}};
}

void from_json(const json& j, VerificationReport& r) {
  j.at("claim_id").get_to(r.claim_id);
  j.at("inputs").get_to(r.inputs);
  j.at("computed_residual").get_to(r.computed_residual);
  j.at("tolerance").get_to(r.tolerance);
  j.at("passed").get_to(r.passed);
  j.at("wall_time_ms").get_to(r.wall_time_ms);
}

std::string reports_to_json(const std::string& command, const std::vector<VerificationReport>& reports) {
  json list = json::array();
  for (const auto& r : reports) {
    json item;
    to_json(item, r);
    list.push_back(std::move(item));
  }
  json j{{"tool_version", tool_version()}, {"command", command}, {"reports", std::move(list)}};
  return j.dump(2);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::set<std::string> keys;
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.inputs) keys.insert(k);
  }
  std::ostringstream os;
  os << "claim_id";
  for (const auto& k : keys) os << ',' << csv_field(k);
  os << ",residual,tolerance,passed,wall_time_ms\n";
  for (const auto& r : reports) {
    os << csv_field(r.claim_id);
    for (const auto& k : keys) {
      auto it = r.inputs.find(k);
      os << ',' << (it == r.inputs.end() ? "" : csv_field(it->second));
    }
    os << ',' << r.computed_residual << ',' << r.tolerance << ',' << (r.passed ? "true" : "false") << ','
       << r.wall_time_ms << '\n';
  }
  return os.str();
}

std::string reports_to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  long passed = 0;
  for (const auto& r : reports) {
    passed += r.passed ? 1 : 0;
    os << (r.passed ? "PASS " : "FAIL ") << r.claim_id << "  residual=" << r.computed_residual
       << "  tolerance=" << r.tolerance << "  (" << r.wall_time_ms << " ms)\n";
  }
  os << passed << "/" << reports.size() << " checks passed\n";
  return os.str();
}

namespace {

using Task = std::function<VerificationReport()>;

constexpr double kCorollaryConstant = 1.1;
constexpr double kDivergenceThreshold = 1e20;

std::vector<std::string> or_default(const std::vector<std::string>& grid, std::vector<std::string> fallback) {
  return grid.empty() ? fallback : grid;
}

BigReal tol_digits(int exponent, int digits) { return pow10(-exponent, digits); }

std::string fmt(const BigReal& v) { return to_compact(v, 15); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::optional<int> rate_fit_order(const std::string& claim) {
  const std::string prefix = "rate-fit:";
  if (claim.rfind(prefix, 0) != 0) return std::nullopt;
  const std::string rest = claim.substr(prefix.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 4) return std::nullopt;
  const int n = std::stoi(rest);
  if (n < 1) return std::nullopt;
  return n;
}

std::vector<Task> build_tasks(const std::string& claim, int precision, const std::vector<std::string>& grid,
                              int threads) {
  std::vector<Task> tasks;
  auto require_no_grid = [&] {
    if (!grid.empty()) throw std::invalid_argument("claim '" + claim + "' does not take --grid");
  };

  if (claim == "theorem1") {
    const int p = precision > 0 ? precision : 40;
    for (const auto& xs : or_default(grid, {"2", "5", "10", "20", "40"})) {
      BigReal x = BigReal::parse(xs, p + 10);
      tasks.push_back([x, xs, p] {
        Stopwatch clock;
        auto direct = ramanujan::error_term_e(x, ramanujan::ErrorRoute::direct_series, p);
        auto integral = ramanujan::error_term_e(x, ramanujan::ErrorRoute::bessel_integral, p);
        return VerificationReport::make("theorem1/x=" + xs,
                                        {{"x", xs}, {"precision", std::to_string(p)},
                                         {"e_direct", to_scientific(direct.value, 25)},
                                         {"cancellation_digits_lost", std::to_string(direct.cancellation_digits_lost)}},
                                        direct.value - integral.value, tol_digits(p - 20, p), clock.elapsed_ms());
      });
    }
  } else if (claim == "corollary1") {
    const int p = precision > 0 ? precision : 30;
    for (const auto& xs : or_default(grid, {"20", "30", "50", "80", "100"})) {
      BigReal x = BigReal::parse(xs, p + 10);
      tasks.push_back([x, xs, p] {
        Stopwatch clock;
        BigReal scaled = abs(ramanujan::corollary_residual(x, p) * x * x);
        return VerificationReport::make("corollary1/x=" + xs, {{"x", xs}, {"precision", std::to_string(p)}}, scaled,
                                        BigReal(kCorollaryConstant, p), clock.elapsed_ms());
      });
    }
  } else if (claim == "lemma1" || claim == "weber-sweep") {
    const int p = precision > 0 ? precision : 30;
    std::vector<std::string> fallback =
        claim == "lemma1" ? std::vector<std::string>{"1/8", "1/4", "1/2", "3/4", "1", "5/4"}
                          : std::vector<std::string>{"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7",
                                                     "0.8", "0.9", "1.0", "1.1", "1.2", "1.3", "1.4"};
    for (const auto& ms : or_default(grid, fallback)) {
      BigReal mu = BigReal::parse(ms, p + 10);
      tasks.push_back([mu, ms, p, claim] {
        VerificationReport r = quad::weber_integral_check(mu, p);
        if (claim == "weber-sweep") r.claim_id = "weber-sweep/mu=" + ms;
        else r.claim_id = "lemma1/mu=" + ms;
        r.inputs["mu"] = ms;
        return r;
      });
    }
  } else if (claim == "lemma2") {
    const int p = precision > 0 ? precision : 30;
    for (const auto& split : or_default(grid, {"20"})) {
      const double s = std::stod(split);
      tasks.push_back([p, s, split, many = !grid.empty()] {
        VerificationReport r = quad::nielsen_integral_check(p, std::nullopt, s);
        if (many) r.claim_id = "lemma2/split=" + split;
        r.inputs["split"] = split;
        return r;
      });
    }
  } else if (claim == "ex5.7") {
    const int p = precision > 0 ? precision : 30;
    for (const auto& as : or_default(grid, {"2", "3", "10"})) {
      for (const std::string ms : {"1/4", "1/3"}) {
        BigReal alpha = BigReal::parse(as, p + 10);
        BigReal mu = BigReal::parse(ms, p + 10);
        tasks.push_back([alpha, mu, as, ms, p] {
          VerificationReport r = quad::laplace_j0_hypergeometric(alpha, mu, p);
          r.claim_id = "ex5.7/alpha=" + as + ",mu=" + ms;
          r.inputs["alpha"] = as;
          r.inputs["mu"] = ms;
          return r;
        });
      }
    }
  } else if (claim == "hid-identity") {
    const int p = precision > 0 ? precision : 30;
    for (const auto& xs : or_default(grid, {"1", "5", "10"})) {
      BigReal x = BigReal::parse(xs, p + 10);
      tasks.push_back([x, xs, p] {
        Stopwatch clock;
        BigReal lhs = ramanujan::harmonic_exp_series(x, p);
        BigReal rhs = ramanujan::series_S_n({1, x, p}).value;
        return VerificationReport::make("hid-identity/x=" + xs, {{"x", xs}, {"precision", std::to_string(p)}},
                                        lhs - rhs, tol_digits(p - 2, p), clock.elapsed_ms());
      });
    }
  } else if (claim == "n3-divergence") {
    require_no_grid();
    const int p = precision > 0 ? precision : 30;
    // Both scans run inside the first task; the rest of the reports are
    // derived from them so the sub-check list is known up front.
    Stopwatch clock;
    auto scan = ramanujan::sign_change_scan(3, BigReal(30L, p), 600, p, threads);
    auto growth = ramanujan::sign_change_scan(3, BigReal(40L, p), 800, p, threads);
    const long ms = clock.elapsed_ms();
    for (std::size_t i = 0; i < scan.brackets.size(); ++i) {
      auto [lo, hi] = scan.brackets[i];
      tasks.push_back([=] {
        return VerificationReport::make(
            "n3-divergence/sign-change/" + std::to_string(i + 1),
            {{"n", "3"}, {"x_lo", fmt(lo)}, {"x_hi", fmt(hi)}, {"precision", std::to_string(p)}},
            BigReal(hi - lo, p), BigReal(0.05, p), 0);
      });
    }
    const long count = static_cast<long>(scan.brackets.size());
    tasks.push_back([=] {
      return VerificationReport::make("n3-divergence/count",
                                      {{"n", "3"}, {"x_max", "30"}, {"grid", "600"}, {"sign_changes", std::to_string(count)}},
                                      BigReal(std::max(0L, 3 - count), p), BigReal(0L, p), ms);
    });
    BigReal max_abs = growth.max_abs;
    const double argmax = growth.argmax;
    tasks.push_back([=] {
      BigReal threshold(kDivergenceThreshold, p);
      return VerificationReport::make("n3-divergence/growth",
                                      {{"n", "3"}, {"x_max", "40"}, {"grid", "800"}, {"max_abs_e3", fmt(max_abs)},
                                       {"argmax", fmt(argmax)}, {"threshold", fmt(threshold)}},
                                      threshold / max_abs, BigReal(1L, p), 0);
    });
  } else if (auto n = rate_fit_order(claim)) {
    std::vector<double> xs;
    for (const auto& s : or_default(grid, {"5", "10", "15", "20", "25", "30"})) xs.push_back(std::stod(s));
    const int order = *n;
    const int p = std::max(precision, euler::rate_fit_digits(order, xs.empty() ? 0.0 : xs.back()));
    tasks.push_back([order, xs, p] {
      Stopwatch clock;
      euler::RateFit fit = euler::fit_convergence_rate(order, xs, p);
      BigReal dev = BigReal(fit.fitted_slope - fit.expected, 30) / BigReal(-fit.expected, 30);
      std::ostringstream slope, expected;
      slope.precision(10);
      expected.precision(10);
      slope << fit.fitted_slope;
      expected << fit.expected;
      return VerificationReport::make("rate-fit:" + std::to_string(order),
                                      {{"n", std::to_string(order)}, {"slope", slope.str()},
                                       {"expected", expected.str()}, {"precision", std::to_string(p)}},
                                      dev, BigReal(0.05, 30), clock.elapsed_ms());
    });
  } else {
    throw std::invalid_argument("unknown claim '" + claim + "'");
  }
  return tasks;
}

}  // namespace

bool is_known_claim(const std::string& claim) {
  static const std::set<std::string> names{"theorem1",     "corollary1",    "lemma1",     "lemma2", "ex5.7",
                                           "hid-identity", "n3-divergence", "weber-sweep"};
  return names.count(claim) > 0 || rate_fit_order(claim).has_value();
}

std::vector<VerificationReport> run_claim(const std::string& claim, int precision, const std::vector<std::string>& grid,
                                          int threads) {
  if (!is_known_claim(claim)) throw std::invalid_argument("unknown claim '" + claim + "'");
  std::vector<Task> tasks = build_tasks(claim, precision, grid, threads);
  std::vector<std::optional<VerificationReport>> slots(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        slots[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, std::max(1, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<VerificationReport> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace {

int max_digits_from_env() {
  if (const char* env = std::getenv("GAMMAFORGE_MAX_DIGITS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxDigits;
}

struct GammaMethod {
  std::optional<int> bm_order;  // empty: Glaisher
};

std::optional<GammaMethod> parse_method(const std::string& m) {
  if (m == "glaisher") return GammaMethod{std::nullopt};
  if (m == "bm1") return GammaMethod{1};
  if (m == "bm2") return GammaMethod{2};
  if (m == "bm3") return GammaMethod{3};
  const std::string prefix = "bm-n:";
  if (m.rfind(prefix, 0) == 0) {
    const std::string rest = m.substr(prefix.size());
    if (!rest.empty() && rest.size() <= 3 && rest.find_first_not_of("0123456789") == std::string::npos) {
      const int n = std::stoi(rest);
      if (n >= 1) return GammaMethod{n};
    }
  }
  return std::nullopt;
}

constexpr int kRoundingGuard = 10;

int cmd_gamma(int digits, const std::string& method, const std::string& format, std::ostream& out, std::ostream& err) {
  const int cap = max_digits_from_env();
  if (digits < 1 || digits > cap) {
    err << "error: --digits must be in [1, " << cap << "] (GAMMAFORGE_MAX_DIGITS)\n";
    return kUsageError;
  }
  auto m = parse_method(method);
  if (!m) {
    err << "error: unknown method '" << method << "'\n";
    return kUsageError;
  }
  std::string value;
  json plan = nullptr;
  if (m->bm_order) {
    euler::BMResult r = euler::gamma_brent_mcmillan(*m->bm_order, digits + kRoundingGuard);
    value = euler::format_gamma(r.gamma, digits);
    plan = json{{"n", r.plan.n},
                {"target_digits", r.plan.target_digits},
                {"x", to_compact(r.plan.x, 30)},
                {"working_digits", r.plan.working_digits},
                {"truncation_k", r.plan.truncation_k}};
  } else {
    value = euler::format_gamma(euler::gamma_glaisher(digits + kRoundingGuard), digits);
  }
  if (format == "json") {
    json j{{"tool_version", tool_version()}, {"command", "gamma"}, {"method", method},
           {"digits", digits},               {"value", value},      {"plan", plan}};
    out << j.dump(2) << "\n";
  } else {
    out << value << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& claim, int precision, const std::vector<std::string>& grid, int threads,
               const std::string& format, std::ostream& out, std::ostream& err) {
  if (!is_known_claim(claim)) {
    err << "error: unknown claim '" << claim << "'\n";
    return kUsageError;
  }
  std::vector<VerificationReport> reports;
  try {
    reports = run_claim(claim, precision, grid, threads);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (format == "json") {
    out << reports_to_json("verify", reports) << "\n";
  } else if (format == "csv") {
    out << reports_to_csv(reports);
  } else {
    out << reports_to_text(reports);
  }
  const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return all ? kOk : kCheckFailed;
}

struct EvalOutput {
  BigReal value;
  BigReal error_bound;
  std::string route;
  long terms = 0;
};

EvalOutput evaluate(const std::string& what, int n, const BigReal& x, int p, const std::string& route) {
  auto bad = [&](const std::string& msg) { return std::invalid_argument(msg); };
  if (what == "S") {
    if (!route.empty()) throw bad("--route does not apply to S");
    if (n < 1) throw bad("--n must be >= 1");
    SeriesResult s = ramanujan::series_S_n({n, x, p});
    return {s.value, s.error_bound, "alternating-series", s.terms};
  }
  if (what == "e") {
    if (n != 2) throw bad("e is defined for n = 2; use --n 2");
    ramanujan::ErrorRoute r;
    if (route.empty() || route == "series") r = ramanujan::ErrorRoute::direct_series;
    else if (route == "integral") r = ramanujan::ErrorRoute::bessel_integral;
    else if (route == "expansion") r = ramanujan::ErrorRoute::asymptotic_expansion;
    else throw bad("--route for e must be series, integral or expansion");
    auto res = ramanujan::error_term_e(x, r, p);
    long terms = 0;
    if (r == ramanujan::ErrorRoute::asymptotic_expansion) {
      terms = ramanujan::error_term_expansion(x, std::nullopt, p).terms_used;
    } else if (r == ramanujan::ErrorRoute::direct_series) {
      terms = ramanujan::series_S_n({2, x, p}).terms;
    }
    return {res.value, res.error_bound, ramanujan::route_name(r), terms};
  }
  if (what == "J0") {
    if (route.empty() || route == "auto") {
      auto v = bessel::bessel_j0_auto(x, p);
      return {v.value, v.error_bound, v.route == bessel::Route::hankel ? "hankel" : "power-series", 0};
    }
    if (route == "series") {
      auto s = bessel::bessel_j0_series(x, p);
      return {s.value, s.error_bound, "power-series", s.terms};
    }
    if (route == "hankel") {
      auto h = bessel::bessel_hankel(0, x, p);
      return {h.value, h.error_estimate, "hankel", h.terms_used};
    }
    throw bad("--route for J0 must be auto, series or hankel");
  }
  if (what == "E1") {
    if (!route.empty()) throw bad("--route does not apply to E1");
    BigReal v = special::exp_integral_E1(x, p);
    const bool series = special::exp_integral_E1_route(x, p) == special::E1Route::convergent_series;
    return {v, pow10(-p, p), series ? "convergent-series" : "continued-fraction", 0};
  }
  if (what == "expansion") {
    if (!route.empty()) throw bad("--route does not apply to expansion");
    auto e = ramanujan::error_term_expansion(x, std::nullopt, p);
    return {e.value, e.error_estimate, "asymptotic-expansion", e.terms_used};
  }
  throw bad("--what must be one of S, e, J0, E1, expansion");
}

int cmd_eval(const std::string& what, int n, const std::string& xs, int p, const std::string& route,
             const std::string& format, std::ostream& out, std::ostream& err) {
  if (p < 1 || p > max_digits_from_env()) {
    err << "error: --precision out of range\n";
    return kUsageError;
  }
  EvalOutput r;
  try {
    BigReal x = BigReal::parse(xs, p + 10);
    r = evaluate(what, n, x, p, route);
  } catch (const std::invalid_argument& e) {  // includes PreconditionError
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {  // DomainError, PoleError
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InsufficientAccuracyError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  const std::string value = to_compact(r.value, p);
  const std::string bound = to_scientific(r.error_bound, 3);
  if (format == "json") {
    json j{{"tool_version", tool_version()}, {"command", "eval"}, {"what", what},   {"x", xs},
           {"precision", p},                {"value", value},    {"error_bound", bound},
           {"route", r.route},              {"terms", r.terms}};
    out << j.dump(2) << "\n";
  } else {
    out << "value: " << value << "\n"
        << "error_bound: " << bound << "\n"
        << "route: " << r.route << "\n"
        << "terms: " << r.terms << "\n";
  }
  return kOk;
}

std::vector<std::string> split_grid(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler's constant, Ramanujan's series and Bessel-integral verification", "gammaforge"};
  app.require_subcommand(1);
  app.footer(
      "Printed digits are rounded half-to-even from a value computed with 10 extra digits.\n"
      "GAMMAFORGE_MAX_DIGITS caps --digits and --precision (default 5000).\n"
      "Exit codes: 0 ok, 1 a verification check failed, 2 invalid arguments, 3 internal precision failure.");

  std::string format = "text";
  int threads = 1;

  int digits = 0;
  std::string method = "bm2";
  auto* gamma = app.add_subcommand("gamma", "Print Euler's constant to --digits decimals");
  gamma->add_option("--digits", digits, "Decimals after the point")->required();
  gamma->add_option("--method", method, "bm1 | bm2 | bm3 | bm-n:<k> | glaisher")->capture_default_str();
  gamma->add_option("--out", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string claim;
  int precision = 0;
  std::string grid;
  auto* verify = app.add_subcommand("verify", "Run a numerical claim check over its parameter grid");
  verify->add_option("--claim", claim,
                     "theorem1 | corollary1 | lemma1 | lemma2 | ex5.7 | hid-identity | n3-divergence | "
                     "rate-fit:<n> | weber-sweep")
      ->required();
  verify->add_option("--precision", precision, "Working precision in digits (claim default when omitted)");
  verify->add_option("--grid", grid, "Comma-separated parameter values overriding the default grid");
  verify->add_option("--threads", threads, "Parallel sub-checks")->check(CLI::PositiveNumber);
  verify->add_option("--out", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));

  std::string what;
  int n = 2;
  std::string xs;
  int eval_precision = 30;
  std::string route;
  auto* eval = app.add_subcommand("eval", "Evaluate S, e, J0, E1 or the asymptotic expansion at x");
  eval->add_option("--what", what, "S | e | J0 | E1 | expansion")->required();
  eval->add_option("--n", n, "Series order for S (default 2)");
  eval->add_option("--x", xs, "Argument (decimal or p/q)")->required();
  eval->add_option("--precision", eval_precision, "Digits (default 30)");
  eval->add_option("--route", route, "e: series|integral|expansion; J0: auto|series|hankel");
  eval->add_option("--out", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (gamma->parsed()) return cmd_gamma(digits, method, format, out, err);
    if (verify->parsed()) return cmd_verify(claim, precision, split_grid(grid), threads, format, out, err);
    if (eval->parsed()) return cmd_eval(what, n, xs, eval_precision, route, format, out, err);
  } catch (const NonConvergenceError& e) {
    err << "error: internal precision failure: " << e.what() << "\n";
    return kPrecisionFailure;
  } catch (const InsufficientAccuracyError& e) {
    err << "error: internal precision failure: " << e.what() << "\n";
    return kPrecisionFailure;
  }
  return kUsageError;
}

}  // namespace gammaforge::cli
