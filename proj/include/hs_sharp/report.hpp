#pragma once

// Report records shared by the CLI emitters. Numbers are written in shortest
// round-trip form, so CSV and JSON carry bit-identical values.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hs_sharp {

struct ReportRecord {
  int n = 2;
  std::string p;  ///< "1", "2.5", "inf"
  std::string method;
  double value = 0.0;
  double abs_err = 0.0;
  std::optional<double> argmax_beta;
  std::optional<double> closed_form;
  std::optional<double> rel_gap;  ///< present exactly when closed_form is
  std::optional<std::uint64_t> seed;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

inline constexpr std::string_view kConstantsCsvHeader =
    "n,p,method,value,abs_err,argmax_beta,closed_form,rel_gap";

/// The header plus ",seed" when the rows carry seeds.
std::string csv_header(bool with_seed);

/// Optional fields are empty cells; a seed adds a ninth column.
std::string to_csv_row(const ReportRecord& r);

/// Inverse of to_csv_row. Throws std::invalid_argument on malformed input.
ReportRecord parse_csv_row(std::string_view line);

nlohmann::json to_json(const ReportRecord& r);
ReportRecord record_from_json(const nlohmann::json& j);

/// Splits on commas; no quoting (no field ever contains a comma).
std::vector<std::string> split_csv(std::string_view line);

/// Exact inverse of format_double. Throws std::invalid_argument.
double parse_double(std::string_view text);

}  // namespace hs_sharp
