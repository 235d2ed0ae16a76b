#include "ecfuzz/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace ecfuzz {

Int parse_int(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.erase(0, 2);
  }
  if (s.empty()) throw ParseError("empty integer literal: '" + text + "'");
  // mpz_set_str ignores whitespace and accepts its own sign; require plain digits
  for (char c : s) {
    bool ok = base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                         : std::isdigit(static_cast<unsigned char>(c)) != 0;
    if (!ok) throw ParseError("bad integer literal: '" + text + "'");
  }
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), base) != 0)
    throw ParseError("bad integer literal: '" + text + "'");
  return neg ? Int(-v) : v;
}

namespace {

Int parse_hex(const std::string& text, const std::string& key) {
  std::string s = text;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.erase(0, 2);
  Int v;
  if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 16) != 0)
    throw ParseError("bad hex value for " + key + ": '" + text + "'");
  return v;
}

std::string strip_comment(std::string line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
  return line;
}

}  // namespace

CurveFile parse_curve_text(std::istream& in, const std::string& origin) {
  std::map<std::string, Int> kv;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(strip_comment(line));
    std::string token;
    while (ls >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ParseError(origin + ": expected key=value, got '" + token + "'");
      std::string key = token.substr(0, eq);
      if (key != "p" && key != "a" && key != "b" && key != "gx" && key != "gy")
        throw ParseError(origin + ": unknown key '" + key + "'");
      if (kv.count(key)) throw ParseError(origin + ": duplicate key '" + key + "'");
      kv[key] = parse_hex(token.substr(eq + 1), key);
    }
  }
  for (const char* req : {"p", "a", "b"})
    if (!kv.count(req)) throw ParseError(origin + ": missing required key '" + std::string(req) + "'");
  if (kv.count("gx") != kv.count("gy"))
    throw ParseError(origin + ": gx and gy must appear together");

  PrimeField field = make_field(kv.at("p"));
  CurveParams curve = make_curve(field.element(kv.at("a")), field.element(kv.at("b")));
  CurveFile out{curve, std::nullopt};
  if (kv.count("gx")) {
    CurvePoint g{field.element(kv.at("gx")), field.element(kv.at("gy"))};
    if (!on_curve(g, curve)) throw ParseError(origin + ": base point is not on the curve");
    out.base = g;
  }
  return out;
}

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open curve file: " + path);
  return parse_curve_text(in, path);
}

namespace {

Level parse_level(const std::string& tok, const std::string& where) {
  if (tok == "Mi") return Level::Min;
  if (tok == "I") return Level::Intermediate;
  if (tok == "Mx") return Level::Max;
  throw ParseError(where + ": bad level token '" + tok + "' (want Mi|I|Mx|any)");
}

Action parse_action(const std::string& tok, const std::string& where) {
  if (tok == "D") return Action::Down;
  if (tok == "S") return Action::Stay;
  if (tok == "U") return Action::Up;
  throw ParseError(where + ": bad action token '" + tok + "' (want D|S|U)");
}

}  // namespace

RuleBase parse_rule_text(std::istream& in, const std::string& name) {
  RuleBase rb;
  rb.name = name;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    std::istringstream ls(body);
    std::string s, p, d, arrow, a;
    if (!(ls >> s)) continue;  // blank
    const std::string where = name + ":" + std::to_string(lineno);
    if (!(ls >> p >> d >> arrow >> a) || arrow != "->")
      throw ParseError(where + ": expected '<storage> <pre> <doubling> -> <action> [weight]'");
    FuzzyRule r;
    if (s != "any") r.storage = parse_level(s, where);
    r.pre_computing = parse_level(p, where);
    r.doubling = parse_level(d, where);
    r.consequent = parse_action(a, where);
    double w;
    if (ls >> w) {
      if (!(w > 0.0 && w <= 1.0))
        throw ParseError(where + ": weight must lie in (0,1], got " + std::to_string(w));
      r.weight = w;
    }
    std::string trailing;
    if (ls >> trailing) throw ParseError(where + ": unexpected trailing token '" + trailing + "'");
    std::istringstream src(body);
    std::string tok, compact;
    while (src >> tok) compact += (compact.empty() ? "" : " ") + tok;
    r.source = compact;
    rb.rules.push_back(std::move(r));
  }
  if (rb.rules.empty()) throw ParseError(name + ": no rules found");
  return rb;
}

RuleBase load_rule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rule file: " + path);
  return parse_rule_text(in, path);
}

RuleBase load_rule_base(const std::string& spec) {
  if (spec == "full26") return RuleBase::full26();
  if (spec == "dominant9") return RuleBase::dominant9();
  return load_rule_file(spec);
}

std::string serialize_rules(const RuleBase& rb) {
  std::ostringstream out;
  for (const FuzzyRule& r : rb.rules) {
    out << (r.storage ? to_string(*r.storage) : "any") << ' ' << to_string(r.pre_computing)
        << ' ' << to_string(r.doubling) << " -> " << to_string(r.consequent);
    if (r.weight != 1.0) out << ' ' << format_double(r.weight);
    out << '\n';
  }
  return out.str();
}

std::vector<Int> parse_workload(std::istream& in) {
  std::vector<Int> ks;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string tok;
    while (ls >> tok) {
      Int k = parse_int(tok);
      if (k < 0)
        throw ParseError("workload line " + std::to_string(lineno) + ": negative scalar " + tok);
      ks.push_back(std::move(k));
    }
  }
  return ks;
}

std::vector<Int> load_workload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open workload file: " + path);
  return parse_workload(in);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << "\r\n";
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (char c; in.get(c);) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get(c);
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; any = true; break;
      case ',': row.push_back(std::move(field)); field.clear(); any = true; break;
      case '\r': break;
      case '\n':
        if (any || !field.empty() || !row.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        any = false;
        break;
      default: field += c; any = true; break;
    }
  }
  if (any || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  std::string s = out.str();
  // prefer the shortest representation that still round-trips
  for (int prec = 1; prec < 17; ++prec) {
    std::ostringstream trial;
    trial.precision(prec);
    trial << v;
    double back;
    std::istringstream(trial.str()) >> back;
    if (back == v) return trial.str();
  }
  return s;
}

}  // namespace ecfuzz
