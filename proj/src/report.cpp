#include "hs_sharp/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "hs_sharp/types.hpp"

namespace hs_sharp {

namespace {

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> optional_parse(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return parse_double(cell);
}

}  // namespace

void ReportRecord::validate() const {
  if (n < 2) throw std::invalid_argument("record: n must be >= 2");
  if (p.empty() || method.empty()) throw std::invalid_argument("record: p and method required");
  if (!(value > 0.0)) throw std::invalid_argument("record: value must be positive");
  if (closed_form.has_value() != rel_gap.has_value()) {
    throw std::invalid_argument("record: rel_gap present iff closed_form present");
  }
}

std::string csv_header(bool with_seed) {
  std::string h(kConstantsCsvHeader);
  if (with_seed) h += ",seed";
  return h;
}

std::string to_csv_row(const ReportRecord& r) {
  std::string row = std::to_string(r.n) + ',' + r.p + ',' + r.method + ',' +
                    format_double(r.value) + ',' + format_double(r.abs_err) + ',' +
                    optional_cell(r.argmax_beta) + ',' + optional_cell(r.closed_form) + ',' +
                    optional_cell(r.rel_gap);
  if (r.seed) row += ',' + std::to_string(*r.seed);
  return row;
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(std::string_view text) {
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

ReportRecord parse_csv_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const std::vector<std::string> c = split_csv(line);
  if (c.size() != 8 && c.size() != 9) {
    throw std::invalid_argument("record row needs 8 or 9 fields, got " + std::to_string(c.size()));
  }
  ReportRecord r;
  std::size_t used = 0;
  r.n = std::stoi(c[0], &used);
  if (used != c[0].size()) throw std::invalid_argument("bad n: '" + c[0] + "'");
  r.p = c[1];
  r.method = c[2];
  r.value = parse_double(c[3]);
  r.abs_err = parse_double(c[4]);
  r.argmax_beta = optional_parse(c[5]);
  r.closed_form = optional_parse(c[6]);
  r.rel_gap = optional_parse(c[7]);
  if (c.size() == 9) r.seed = std::stoull(c[8]);
  r.validate();
  return r;
}

nlohmann::json to_json(const ReportRecord& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["method"] = r.method;
  j["value"] = r.value;
  j["abs_err"] = r.abs_err;
  j["argmax_beta"] = r.argmax_beta ? nlohmann::json(*r.argmax_beta) : nlohmann::json();
  j["closed_form"] = r.closed_form ? nlohmann::json(*r.closed_form) : nlohmann::json();
  j["rel_gap"] = r.rel_gap ? nlohmann::json(*r.rel_gap) : nlohmann::json();
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

ReportRecord record_from_json(const nlohmann::json& j) {
  ReportRecord r;
  r.n = j.at("n").get<int>();
  r.p = j.at("p").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.value = j.at("value").get<double>();
  r.abs_err = j.at("abs_err").get<double>();
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  r.argmax_beta = opt("argmax_beta");
  r.closed_form = opt("closed_form");
  r.rel_gap = opt("rel_gap");
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  r.validate();
  return r;
}

}  // namespace hs_sharp
