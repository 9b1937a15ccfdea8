// SPDX-License-Identifier: Apache-2.0
//
// harmonic-li: certified bounds for the harmonic discretisation of li(x),
// table reproduction, explicit prime-counting inequality scans and pi(x).
//
// Exit codes: 0 success, 2 usage, 3 precision, 4 inequality failure found,
// 5 indeterminate verdicts remain.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hli/constants.hpp"
#include "hli/discretized_li.hpp"
#include "hli/prime_counter.hpp"
#include "hli/report.hpp"
#include "hli/rh_verifier.hpp"
#include "hli/special_functions.hpp"
#include "hli/tables.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitFails = 4;
constexpr int kExitIndeterminate = 5;

struct IndexRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

IndexRange parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw hli::DomainError("range must look like a:b, got '" + text + "'");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    std::string lo = text.substr(0, colon);
    std::string hi = text.substr(colon + 1);
    IndexRange r{std::stoull(lo, &used_lo), std::stoull(hi, &used_hi)};
    if (used_lo != lo.size() || used_hi != hi.size() || lo.front() == '-' || hi.front() == '-') throw std::exception();
    if (r.lo == 0 || r.hi < r.lo) throw hli::DomainError("range must satisfy 1 <= a <= b, got '" + text + "'");
    return r;
  } catch (const hli::DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw hli::DomainError("range must look like a:b with positive integers, got '" + text + "'");
  }
}

// Decimal ("0.25", "1e-3") or fraction ("1/3").
mpq_class parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return hli::parse_decimal(text);
  mpq_class den = hli::parse_decimal(text.substr(slash + 1));
  if (den == 0) throw hli::DomainError("zero denominator in '" + text + "'");
  mpq_class q = hli::parse_decimal(text.substr(0, slash)) / den;
  q.canonicalize();
  return q;
}

hli::GenericBound parse_custom(const std::string& text, int form) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 6) throw hli::DomainError("--custom expects M,alpha,C,t,r,lambda");
  hli::GenericBound b;
  b.M = parse_rational(parts[0]);
  b.alpha_exponent = parse_rational(parts[1]);
  b.C = parse_rational(parts[2]);
  b.t = hli::Shift::parse(parts[3]);
  b.r = parse_rational(parts[4]);
  b.lambda = parse_rational(parts[5]);
  b.form = static_cast<hli::InequalityForm>(form);
  if (b.M <= 0 || b.lambda <= 0) throw hli::DomainError("M and lambda must be positive");
  if (b.alpha_exponent <= 0 || b.alpha_exponent >= 1) throw hli::DomainError("alpha must lie in (0, 1)");
  if (b.r <= 0) throw hli::DomainError("r must be positive");
  return b;
}

struct Globals {
  std::optional<int> digits;
  int max_digits = 200;
  std::string cache_path;
  std::string format = "csv";
  std::string out;
};

class Output {
 public:
  explicit Output(const Globals& g) : globals_(g) {}
  std::ostream& stream() { return buffer_; }
  bool json() const { return globals_.format == "json"; }
  void json_value(const nlohmann::json& j) { buffer_ << j.dump(2) << '\n'; }

  void commit() {
    if (globals_.out.empty()) {
      std::cout << buffer_.str() << std::flush;
    } else {
      hli::write_file_atomic(globals_.out, buffer_.str());
    }
  }

 private:
  const Globals& globals_;
  std::ostringstream buffer_;
};

std::string cache_path_from(const Globals& g) {
  if (!g.cache_path.empty()) return g.cache_path;
  const char* env = std::getenv("HARMONIC_LI_CACHE");
  return env != nullptr ? std::string(env) : std::string();
}

class CounterSession {
 public:
  explicit CounterSession(const Globals& g) : path_(cache_path_from(g)) {
    if (!path_.empty() && !counter_.attach_cache(path_)) {
      std::cerr << "warning: prime count cache at " << path_ << " was corrupt; recomputed\n";
    }
  }
  hli::PrimeCounter& counter() { return counter_; }
  void finish() {
    if (!path_.empty()) counter_.flush();
  }

 private:
  std::string path_;
  hli::PrimeCounter counter_;
};

void run_constants(Output& out, int decimals) {
  struct Row {
    const char* name;
    hli::Interval value;
  };
  hli::Interval mu = hli::mu_constant();
  hli::Interval alpha = hli::alpha_star_constant();
  std::vector<Row> rows = {{"gamma", hli::gamma_constant()},
                           {"exp_gamma", hli::exp_gamma()},
                           {"mu", mu},
                           {"inv_log_mu", recip(log(mu))},
                           {"alpha_star", alpha},
                           {"log_alpha_star", log(alpha)}};
  if (out.json()) {
    nlohmann::json j = nlohmann::json::array();
    for (const Row& r : rows) {
      j.push_back({{"name", r.name}, {"lower", r.value.lower_decimal(decimals)},
                   {"upper", r.value.upper_decimal(decimals)}});
    }
    out.json_value(j);
    return;
  }
  out.stream() << "name,lower,upper\n";
  for (const Row& r : rows) {
    out.stream() << r.name << ',' << r.value.lower_decimal(decimals) << ',' << r.value.upper_decimal(decimals) << '\n';
  }
}

void run_beta(Output& out, const hli::Shift& t, std::optional<std::uint64_t> n, std::optional<mpq_class> r,
              int decimals) {
  std::uint64_t start = r ? hli::ceiling_index(*r) : hli::r_ceiling(t).R_t;
  hli::require_admissible_start(t, start);
  hli::ShiftContext ctx(t, start);
  std::uint64_t size = n ? *n : start;
  if (size < start) throw hli::DomainError("--n must be at least the summation start " + std::to_string(start));
  hli::Interval partial = hli::beta_n(ctx, size);
  hli::BoundPair b = hli::beta_bounds(ctx, size);
  if (out.json()) {
    out.json_value({{"t", t.label()},
                    {"start", start},
                    {"n", size},
                    {"beta_n_lower", partial.lower_decimal(decimals)},
                    {"beta_n_upper", partial.upper_decimal(decimals)},
                    {"beta_lower", b.lower.lower_decimal(decimals)},
                    {"beta_upper", b.upper.upper_decimal(decimals)}});
    return;
  }
  out.stream() << "t,start,n,beta_n_lower,beta_n_upper,beta_lower,beta_upper\n"
               << t.label() << ',' << start << ',' << size << ',' << partial.lower_decimal(decimals) << ','
               << partial.upper_decimal(decimals) << ',' << b.lower.lower_decimal(decimals) << ','
               << b.upper.upper_decimal(decimals) << '\n';
}

bool rows_have_errors(const std::vector<hli::BetaTableRow>& rows) {
  for (const auto& r : rows) {
    if (r.status != "ok") return true;
  }
  return false;
}

int run_table(Output& out, int which, bool estimate, int decimals) {
  if (which == 3) {
    auto rows = hli::table3();
    if (out.json()) out.json_value(hli::rho_table_json(rows, decimals));
    else hli::write_rho_table_csv(out.stream(), rows, decimals);
    for (const auto& r : rows) {
      if (r.status != "ok") return kExitPrecision;
    }
    return kExitOk;
  }
  std::vector<hli::BetaTableRow> rows = which == 1 ? hli::table1(estimate) : which == 2 ? hli::table2(estimate)
                                                                                          : hli::table4(estimate);
  if (out.json()) out.json_value(hli::beta_table_json(rows, decimals));
  else hli::write_beta_table_csv(out.stream(), rows, decimals, which != 4, estimate);
  return rows_have_errors(rows) ? kExitPrecision : kExitOk;
}

int run_verify(Output& out, const hli::InequalityPreset& preset, IndexRange range, hli::PrimeCounter& counter,
               unsigned threads) {
  hli::ScanReport report = hli::scan(preset, range.lo, range.hi, counter, {threads});
  if (out.json()) out.json_value(hli::scan_json(report));
  else hli::write_scan_csv(out.stream(), report);
  std::cerr << report.preset_id << " [" << report.n_lo << ", " << report.n_hi << "]: " << report.holds << " hold, "
            << report.fails << " fail, " << report.indeterminate << " indeterminate";
  if (report.conditional) std::cerr << " (range extends beyond the verified proof range)";
  std::cerr << '\n';
  if (report.fails > 0) return kExitFails;
  if (report.indeterminate > 0) return kExitIndeterminate;
  return kExitOk;
}

void run_pi(Output& out, const std::string& x_text, hli::PrimeCounter& counter) {
  mpq_class x = parse_rational(x_text);
  std::uint64_t count = counter.pi(x);
  if (out.json()) {
    out.json_value({{"x", x_text}, {"pi", count}});
    return;
  }
  out.stream() << "x,pi\n" << x_text << ',' << count << '\n';
}

void run_residuals(Output& out, const hli::Shift& t, std::uint64_t start, IndexRange range, std::uint64_t stride,
                   hli::PrimeCounter& counter) {
  auto rows = hli::residual_series(t, start, range.lo, range.hi, stride, counter);
  if (out.json()) out.json_value(hli::residuals_json(rows));
  else hli::write_residuals_csv(out.stream(), rows);
}

void run_rho(Output& out, std::uint64_t n, const std::string& width, int decimals) {
  hli::RhoSearchOptions options;
  options.width = parse_rational(width);
  hli::Interval rho = hli::rho_n_search(n, options);
  if (out.json()) {
    out.json_value({{"n", n}, {"rho_lower", rho.lower_decimal(decimals)}, {"rho_upper", rho.upper_decimal(decimals)}});
    return;
  }
  out.stream() << "n,rho_lower,rho_upper\n"
               << n << ',' << rho.lower_decimal(decimals) << ',' << rho.upper_decimal(decimals) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds for the harmonic discretisation of li(x) and explicit prime-counting inequalities"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--digits", g.digits, "Working precision in decimal digits (default: HARMONIC_LI_DIGITS or 40)")
      ->check(CLI::Range(5, 100000));
  app.add_option("--max-digits", g.max_digits, "Ceiling for automatic precision escalation")
      ->check(CLI::Range(5, 100000));
  app.add_option("--cache-path", g.cache_path, "Prime count cache file (default: HARMONIC_LI_CACHE)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Write output to FILE instead of stdout");

  auto* constants = app.add_subcommand("constants", "Enclosures of gamma, e^gamma, mu, 1/log mu, alpha*, log alpha*");
  std::optional<int> constant_decimals;
  constants->add_option("--decimals", constant_decimals, "Printed decimals (default: --digits)")
      ->check(CLI::Range(1, 100000));

  auto* beta = app.add_subcommand("beta", "Bounds on beta_n(t, r) and beta(t, r)");
  std::string beta_t;
  std::optional<std::uint64_t> beta_n_size;
  std::optional<std::string> beta_r;
  int beta_decimals = 10;
  beta->add_option("--t", beta_t, "Shift, e.g. 1, -0.5, gamma+1, log2, logmu, logalpha")->required();
  beta->add_option("--n", beta_n_size, "Truncation index (default: the summation start)")->check(CLI::PositiveNumber);
  beta->add_option("--r", beta_r, "Summation start r; the sum runs from ceil(r) (default: R_t)");
  beta->add_option("--decimals", beta_decimals, "Printed decimals")->check(CLI::Range(1, 100000));

  auto* table = app.add_subcommand(
      "table", "Table 1 (beta at n = R_t), 2 (n = 50), 3 (rho_n) or 4 (n = 100 near the maximum)");
  int table_which = 0;
  bool table_estimate = false;
  int table_decimals = 10;
  table->add_option("which", table_which, "Table number")->required()->check(CLI::IsMember({1, 2, 3, 4}));
  table->add_flag("--estimate", table_estimate, "Add an uncertified point estimate of beta(t) at n = 1000");
  table->add_option("--decimals", table_decimals, "Printed decimals")->check(CLI::Range(1, 100000));

  auto* verify = app.add_subcommand("verify", "Scan an explicit prime-counting inequality over n");
  std::string verify_preset;
  std::string verify_custom;
  std::string verify_range;
  int verify_form = 3;
  unsigned verify_threads = 0;
  auto* preset_opt = verify->add_option("--preset", verify_preset, "rh5, rh6, rh6b, rh7, rh8a or rh9");
  auto* custom_opt = verify->add_option("--custom", verify_custom, "M,alpha,C,t,r,lambda");
  preset_opt->excludes(custom_opt);
  verify->add_option("--form", verify_form, "Displayed form 1..4 (counting or density, log or harmonic)")
      ->check(CLI::Range(1, 4));
  verify->add_option("--range", verify_range, "Index range a:b (default: the preset's proof range)");
  verify->add_option("--threads", verify_threads, "Worker threads (0: hardware concurrency)");

  auto* pi = app.add_subcommand("pi", "Prime counting function pi(x)");
  std::string pi_x;
  pi->add_option("--x", pi_x, "Argument (decimal or fraction)")->required();

  auto* residuals = app.add_subcommand("residuals", "Residuals pi(e^t n) - e^t sum 1/(H_k - gamma + t)");
  std::string residual_t;
  std::uint64_t residual_start = 1;
  std::string residual_range;
  std::uint64_t residual_stride = 1;
  residuals->add_option("--t", residual_t, "Shift")->required();
  residuals->add_option("--N", residual_start, "First summation index")->check(CLI::PositiveNumber);
  residuals->add_option("--range", residual_range, "Index range a:b")->required();
  residuals->add_option("--stride", residual_stride, "Step between indices")->check(CLI::PositiveNumber);

  auto* rho = app.add_subcommand("rho", "Local maximiser rho_n of beta_n(t)");
  std::uint64_t rho_n = 0;
  std::string rho_width = "1e-6";
  int rho_decimals = 10;
  rho->add_option("--n", rho_n, "Truncation index")->required()->check(CLI::PositiveNumber);
  rho->add_option("--width", rho_width, "Target bracket width");
  rho->add_option("--decimals", rho_decimals, "Printed decimals")->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    // Flag validation that CLI11 cannot express happens before any computation.
    std::optional<int> env_digits = hli::digits_from_environment();
    const char* env_text = std::getenv("HARMONIC_LI_DIGITS");
    if (!g.digits && !env_digits && env_text != nullptr && *env_text != '\0') {
      std::cerr << "warning: ignoring HARMONIC_LI_DIGITS='" << env_text << "'; using 40 digits\n";
    }
    int digits = g.digits ? *g.digits : env_digits.value_or(40);
    // Constants may be printed at fewer digits than the library's working floor.
    int floor_digits = *constants ? 5 : 15;
    if (digits < floor_digits) {
      throw hli::DomainError("--digits must be at least " + std::to_string(floor_digits));
    }
    hli::set_precision_config({std::max(digits, 15), std::max({g.max_digits, digits, 15})});

    std::optional<hli::Shift> beta_shift;
    std::optional<mpq_class> beta_r_value;
    if (*beta) {
      beta_shift = hli::Shift::parse(beta_t);
      if (beta_r) beta_r_value = parse_rational(*beta_r);
    }
    std::optional<hli::InequalityPreset> preset;
    IndexRange range;
    if (*verify) {
      if (verify_preset.empty() == verify_custom.empty()) {
        throw hli::DomainError("verify needs exactly one of --preset or --custom");
      }
      if (!verify_preset.empty()) {
        preset = hli::presets::by_id(verify_preset);
        preset->form = static_cast<hli::InequalityForm>(verify_form);
        range = verify_range.empty() ? IndexRange{preset->proof_lo, preset->proof_hi} : parse_range(verify_range);
      } else {
        if (verify_range.empty()) throw hli::DomainError("--custom requires --range");
        hli::GenericBound b = parse_custom(verify_custom, verify_form);
        range = parse_range(verify_range);
        hli::require_admissible_start(b.t, hli::ceiling_index(b.r));
        if (!hli::beyond_threshold(b.C, b.t, range.lo)) {
          throw hli::DomainError("--range must start at or above C e^{-t}");
        }
        preset = b.as_preset();
      }
      preset->validate();
    }
    std::optional<hli::Shift> residual_shift;
    if (*residuals) {
      residual_shift = hli::Shift::parse(residual_t);
      range = parse_range(residual_range);
    }
    if (*pi) parse_rational(pi_x);
    if (*rho && parse_rational(rho_width) <= 0) throw hli::DomainError("--width must be positive");

    Output out(g);
    int status = kExitOk;
    if (*constants) {
      hli::PrecisionScope scope(digits);
      run_constants(out, constant_decimals.value_or(digits));
    } else if (*beta) {
      run_beta(out, *beta_shift, beta_n_size, beta_r_value, beta_decimals);
    } else if (*table) {
      status = run_table(out, table_which, table_estimate, table_decimals);
    } else if (*verify) {
      CounterSession session(g);
      status = run_verify(out, *preset, range, session.counter(), verify_threads);
      session.finish();
    } else if (*pi) {
      CounterSession session(g);
      run_pi(out, pi_x, session.counter());
      session.finish();
    } else if (*residuals) {
      CounterSession session(g);
      run_residuals(out, *residual_shift, residual_start, range, residual_stride, session.counter());
      session.finish();
    } else if (*rho) {
      run_rho(out, rho_n, rho_width, rho_decimals);
    }
    out.commit();
    return status;
  } catch (const hli::PrecisionExceeded& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const hli::IntegerBoundary& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const hli::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
