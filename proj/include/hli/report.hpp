// SPDX-License-Identifier: Apache-2.0
//
// CSV and JSON serialisation for scans, tables and residual series.  Output is
// locale-independent: endpoints are printed with directed rounding.
#ifndef HLI_REPORT_HPP
#define HLI_REPORT_HPP

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hli/rh_verifier.hpp"
#include "hli/tables.hpp"

namespace hli {

inline constexpr int kReportDigits = 17;

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

inline void write_scan_csv(std::ostream& os, const ScanReport& report) {
  os << "preset,n,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n";
  for (const CheckResult& r : report.results) {
    os << r.preset_id << ',' << r.n << ',' << r.lhs.lower_scientific(kReportDigits) << ','
       << r.lhs.upper_scientific(kReportDigits) << ',' << r.rhs.lower_scientific(kReportDigits) << ','
       << r.rhs.upper_scientific(kReportDigits) << ',' << to_string(r.verdict) << '\n';
  }
}

inline nlohmann::json scan_json(const ScanReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CheckResult& r : report.results) {
    rows.push_back({{"preset", r.preset_id},
                    {"n", r.n},
                    {"lhs_lo", r.lhs.lower_scientific(kReportDigits)},
                    {"lhs_hi", r.lhs.upper_scientific(kReportDigits)},
                    {"rhs_lo", r.rhs.lower_scientific(kReportDigits)},
                    {"rhs_hi", r.rhs.upper_scientific(kReportDigits)},
                    {"verdict", to_string(r.verdict)}});
  }
  nlohmann::json meta = {{"preset", report.preset_id},
                         {"range", {report.n_lo, report.n_hi}},
                         {"precision_digits", report.digits},
                         {"counts", {{"holds", report.holds}, {"fails", report.fails},
                                     {"indeterminate", report.indeterminate}}},
                         {"violations", report.violations},
                         {"unresolved", report.unresolved},
                         {"conditional", report.conditional},
                         {"wall_seconds", report.wall_seconds}};
  meta["cache_checksum"] = report.cache_checksum ? nlohmann::json(*report.cache_checksum) : nlohmann::json(nullptr);
  return {{"metadata", meta}, {"results", rows}};
}

inline void write_beta_table_csv(std::ostream& os, const std::vector<BetaTableRow>& rows, int decimals,
                                 bool with_scaled_li, bool estimate) {
  os << "t,n,beta_upper,beta_lower";
  if (with_scaled_li) os << ",scaled_li_lower,scaled_li_upper,R_t";
  if (estimate) os << ",estimate_uncertified";
  os << ",status\n";
  for (const BetaTableRow& r : rows) {
    os << r.t_label << ',' << r.n << ',';
    if (r.bounds) {
      os << r.bounds->upper.upper_decimal(decimals) << ',' << r.bounds->lower.lower_decimal(decimals);
    } else {
      os << ',';
    }
    if (with_scaled_li) {
      os << ',';
      if (r.scaled_li) os << r.scaled_li->lower_decimal(decimals) << ',' << r.scaled_li->upper_decimal(decimals);
      else os << ',';
      os << ',' << r.R_t;
    }
    if (estimate) {
      os << ',';
      if (r.estimate) os << r.estimate->lower_decimal(decimals);
    }
    os << ',' << (r.status == "ok" ? "ok" : "error: " + r.status) << '\n';
  }
}

inline nlohmann::json beta_table_json(const std::vector<BetaTableRow>& rows, int decimals) {
  nlohmann::json out = nlohmann::json::array();
  for (const BetaTableRow& r : rows) {
    nlohmann::json row = {{"t", r.t_label}, {"n", r.n}, {"R_t", r.R_t}, {"status", r.status}};
    if (r.bounds) {
      row["beta_upper"] = r.bounds->upper.upper_decimal(decimals);
      row["beta_lower"] = r.bounds->lower.lower_decimal(decimals);
    }
    if (r.scaled_li) {
      row["scaled_li_lower"] = r.scaled_li->lower_decimal(decimals);
      row["scaled_li_upper"] = r.scaled_li->upper_decimal(decimals);
    }
    if (r.estimate) row["estimate_uncertified"] = r.estimate->lower_decimal(decimals);
    out.push_back(std::move(row));
  }
  return out;
}

inline void write_rho_table_csv(std::ostream& os, const std::vector<RhoTableRow>& rows, int decimals) {
  os << "n,rho_lower,rho_upper,status\n";
  for (const RhoTableRow& r : rows) {
    os << r.n << ',';
    if (r.rho) os << r.rho->lower_decimal(decimals) << ',' << r.rho->upper_decimal(decimals);
    else os << ',';
    os << ',' << (r.status == "ok" ? "ok" : "error: " + r.status) << '\n';
  }
}

inline nlohmann::json rho_table_json(const std::vector<RhoTableRow>& rows, int decimals) {
  nlohmann::json out = nlohmann::json::array();
  for (const RhoTableRow& r : rows) {
    nlohmann::json row = {{"n", r.n}, {"status", r.status}};
    if (r.rho) {
      row["rho_lower"] = r.rho->lower_decimal(decimals);
      row["rho_upper"] = r.rho->upper_decimal(decimals);
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline void write_residuals_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
  os << "n,residual_lo,residual_hi,normalized_lo,normalized_hi\n";
  for (const ResidualRow& r : rows) {
    os << r.n << ',' << r.residual.lower_scientific(kReportDigits) << ','
       << r.residual.upper_scientific(kReportDigits) << ',' << r.normalized.lower_scientific(kReportDigits) << ','
       << r.normalized.upper_scientific(kReportDigits) << '\n';
  }
}

inline nlohmann::json residuals_json(const std::vector<ResidualRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const ResidualRow& r : rows) {
    out.push_back({{"n", r.n},
                   {"residual_lo", r.residual.lower_scientific(kReportDigits)},
                   {"residual_hi", r.residual.upper_scientific(kReportDigits)},
                   {"normalized_lo", r.normalized.lower_scientific(kReportDigits)},
                   {"normalized_hi", r.normalized.upper_scientific(kReportDigits)}});
  }
  return out;
}

}  // namespace hli

#endif  // HLI_REPORT_HPP
