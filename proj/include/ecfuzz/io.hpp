#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecfuzz/curve.hpp"
#include "ecfuzz/fuzzy.hpp"

namespace ecfuzz {

/// Malformed curve/rule/workload file or value.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Decimal or 0x-prefixed hex, optional leading minus.
Int parse_int(const std::string& text);

// Curve files: whitespace-separated key=value pairs, '#' comments.
//   p=<hex> a=<hex> b=<hex> [gx=<hex> gy=<hex>]
// Values are hex with or without 0x. A present base point must lie on the curve.
struct CurveFile {
  CurveParams curve;
  std::optional<CurvePoint> base;
};

CurveFile parse_curve_text(std::istream& in, const std::string& origin = "curve");
CurveFile load_curve_file(const std::string& path);

// Rule files: one rule per line,
//   <storage> <pre_computing> <doubling> -> <action> [weight]
// with levels Mi | I | Mx | any and actions D | S | U; '#' comments.
RuleBase parse_rule_text(std::istream& in, const std::string& name);
RuleBase load_rule_file(const std::string& path);
// "full26" | "dominant9" | path to a rule file
RuleBase load_rule_base(const std::string& spec);
std::string serialize_rules(const RuleBase& rb);

// Workload files: one scalar per line, decimal or 0x hex, '#' comments.
std::vector<Int> parse_workload(std::istream& in);
std::vector<Int> load_workload(const std::string& path);

// Minimal RFC-4180 CSV: fields quoted when they contain comma/quote/newline.
std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// Shortest decimal that round-trips a double through istream>>.
std::string format_double(double v);

}  // namespace ecfuzz
