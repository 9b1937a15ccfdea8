// SPDX-License-Identifier: Apache-2.0
//
// Row generators for the four reference tables: beta(t) bounds at n = R_t over
// integer t, bounds at n = 50 for distinguished shifts, the local maximisers
// rho_n, and bounds at n = 100 near the maximum of beta.
#ifndef HLI_TABLES_HPP
#define HLI_TABLES_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hli/discretized_li.hpp"
#include "hli/error.hpp"
#include "hli/shift.hpp"

namespace hli {

struct BetaTableRow {
  std::string t_label;
  std::uint64_t n = 0;
  std::uint64_t R_t = 0;
  std::optional<BoundPair> bounds;
  std::optional<Interval> scaled_li;  // li(e^t R_t)/e^t
  std::optional<Interval> estimate;   // uncertified midpoint at larger n
  std::string status = "ok";
};

struct RhoTableRow {
  std::uint64_t n = 0;
  std::optional<Interval> rho;
  std::string status = "ok";
};

inline std::vector<std::string> table1_shifts() {
  std::vector<std::string> out;
  for (int t = 15; t >= -15; --t) out.push_back(std::to_string(t));
  return out;
}

inline std::vector<std::string> table2_shifts() {
  return {"gamma+1", "logalpha", "1", "log2", "gamma", "logmu", "0", "-log2", "-1"};
}

inline std::vector<std::string> table4_shifts() {
  return {"1.274", "1.280", "1.281", "1.282", "1.283", "1.284", "1.285", "1.290"};
}

inline std::vector<std::uint64_t> table3_sizes() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 4000, 5000}; }

inline constexpr std::uint64_t kEstimateSize = 1000;

/// Bounds on beta(t) at truncation n (R_t when empty).  Failures are recorded
/// in the row's status instead of aborting the table.
inline BetaTableRow beta_table_row(const std::string& shift_text, std::optional<std::uint64_t> n, bool estimate) {
  BetaTableRow row;
  row.t_label = shift_text;
  try {
    Shift t = Shift::parse(shift_text);
    RCeiling rc = r_ceiling(t);
    row.R_t = rc.R_t;
    row.n = n ? std::max(*n, rc.R_t) : rc.R_t;
    ShiftContext ctx(t, rc.R_t);
    BoundPair b = beta_bounds(ctx, row.n);
    b.target = "beta(t)";
    row.bounds = b;
    row.scaled_li = ctx.scaled_li(rc.R_t);
    if (estimate) {
      BoundPair far = beta_bounds(ctx, std::max(kEstimateSize, rc.R_t));
      row.estimate = Interval::hull(far.lower, far.upper).midpoint();
    }
  } catch (const Error& e) {
    row.status = e.what();
  }
  return row;
}

inline std::vector<BetaTableRow> table1(bool estimate = false) {
  std::vector<BetaTableRow> rows;
  for (const auto& t : table1_shifts()) rows.push_back(beta_table_row(t, std::nullopt, estimate));
  return rows;
}

inline std::vector<BetaTableRow> table2(bool estimate = false) {
  std::vector<BetaTableRow> rows;
  for (const auto& t : table2_shifts()) rows.push_back(beta_table_row(t, 50, estimate));
  return rows;
}

inline std::vector<BetaTableRow> table4(bool estimate = false) {
  std::vector<BetaTableRow> rows;
  for (const auto& t : table4_shifts()) rows.push_back(beta_table_row(t, 100, estimate));
  return rows;
}

inline std::vector<RhoTableRow> table3(const RhoSearchOptions& options = {}) {
  std::vector<RhoTableRow> rows;
  for (std::uint64_t n : table3_sizes()) {
    RhoTableRow row;
    row.n = n;
    try {
      row.rho = rho_n_search(n, options);
    } catch (const Error& e) {
      row.status = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hli

#endif  // HLI_TABLES_HPP
