#include "dwpap/trig_spec.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dwpap/errors.hpp"

namespace dwpap {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    ws();
    return pos >= s.size();
  }
  bool eat(char c) {
    ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  // Matches a keyword followed by a non-word boundary.
  bool eat_word(const char* w) {
    ws();
    std::size_t n = std::char_traits<char>::length(w);
    if (s.compare(pos, n, w) != 0) return false;
    std::size_t end = pos + n;
    if (end < s.size()) {
      char c = s[end];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    pos = end;
    return true;
  }
  bool number_ahead() {
    ws();
    if (pos >= s.size()) return false;
    char c = s[pos];
    return std::isdigit(static_cast<unsigned char>(c)) ||
           (c == '.' && pos + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[pos + 1])));
  }
};

[[noreturn]] void fail(const Cursor& c, const std::string& msg,
                       std::vector<std::string> expected) {
  throw ParseError(msg + " at offset " + std::to_string(c.pos), c.pos, std::move(expected));
}

double parse_number(Cursor& c) {
  c.ws();
  std::size_t start = c.pos;
  while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
  if (c.pos < c.s.size() && c.s[c.pos] == '.') {
    ++c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
  }
  if (c.pos == start || (c.pos == start + 1 && c.s[start] == '.'))
    fail(c, "expected a number", {"number"});
  return std::stod(c.s.substr(start, c.pos - start));
}

// freq := [+|-] ( "t" | (number | sqrt2 | sqrt(2)) [*] "t" )
double parse_freq(Cursor& c) {
  double sign = 1.0;
  if (c.eat('-'))
    sign = -1.0;
  else
    c.eat('+');
  if (c.eat_word("t")) return sign;
  double base;
  if (c.eat_word("sqrt2") || c.eat_word("sqrt(2)"))
    base = std::sqrt(2.0);
  else if (c.number_ahead())
    base = parse_number(c);
  else
    fail(c, "expected a frequency", {"number", "t", "sqrt2", "sqrt(2)"});
  c.eat('*');
  if (!c.eat_word("t")) fail(c, "frequency must multiply t", {"t", "*t"});
  return sign * base;
}

void push_cos(std::vector<TrigPoly::Term>& out, double a, double freq) {
  out.push_back({CVec{std::complex<double>(a / 2, 0)}, freq});
  out.push_back({CVec{std::complex<double>(a / 2, 0)}, -freq});
}

void push_sin(std::vector<TrigPoly::Term>& out, double b, double freq) {
  out.push_back({CVec{std::complex<double>(0, -b / 2)}, freq});
  out.push_back({CVec{std::complex<double>(0, b / 2)}, -freq});
}

// term := number [*] [trig] | trig        trig := (cos|sin) "(" freq ")"
void parse_term(Cursor& c, double sign, std::vector<TrigPoly::Term>& out) {
  double coef = 1.0;
  bool have_coef = false;
  bool ate_star = false;
  if (c.number_ahead()) {
    coef = parse_number(c);
    have_coef = true;
    ate_star = c.eat('*');
  }
  bool is_cos = c.eat_word("cos");
  bool is_sin = !is_cos && c.eat_word("sin");
  if (!is_cos && !is_sin) {
    if (ate_star) fail(c, "expected cos or sin after '*'", {"cos", "sin"});
    if (have_coef) {
      out.push_back({CVec{std::complex<double>(sign * coef, 0)}, 0.0});
      return;
    }
    fail(c, "expected a term", {"number", "cos", "sin"});
  }
  if (!c.eat('(')) fail(c, "expected '('", {"("});
  double freq = parse_freq(c);
  if (!c.eat(')')) fail(c, "expected ')'", {")"});
  if (is_cos)
    push_cos(out, sign * coef, freq);
  else
    push_sin(out, sign * coef, freq);
}

bool looks_like_trig(const std::string& part) {
  if (part.find("cos") != std::string::npos || part.find("sin") != std::string::npos) return true;
  for (char ch : part) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '+' || ch == '-';
  }
  return false;
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

TrigPoly parse_trig_text(const std::string& text) {
  Cursor c{text};
  std::vector<TrigPoly::Term> terms;
  if (c.done()) throw ParseError("empty trig spec", 0, {"number", "cos", "sin"});
  double sign = 1.0;
  if (c.eat('-'))
    sign = -1.0;
  else
    c.eat('+');
  parse_term(c, sign, terms);
  while (!c.done()) {
    if (c.eat('+'))
      sign = 1.0;
    else if (c.eat('-'))
      sign = -1.0;
    else
      fail(c, "expected '+' or '-'", {"+", "-"});
    parse_term(c, sign, terms);
  }
  return TrigPoly(1, terms);
}

TrigPoly parse_trig_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON term array: ") + e.what(),
                     static_cast<std::size_t>(e.byte > 0 ? e.byte - 1 : 0), {"json array"});
  }
  if (!j.is_array()) throw ParseError("JSON trig spec must be an array", 0, {"["});
  std::vector<TrigPoly::Term> terms;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("freq"))
      throw ParseError("each JSON term needs re/im/freq fields", 0, {"{\"re\":..,\"im\":..,\"freq\":..}"});
    double re = item.value("re", 0.0);
    double im = item.value("im", 0.0);
    double freq = item.at("freq").get<double>();
    terms.push_back({CVec{std::complex<double>(re, im)}, freq});
  }
  return TrigPoly(1, terms);
}

namespace {

struct SpecParts {
  TrigPoly trig;
  bool have_trig = false;
  std::vector<FunctionHandle> handles;
};

SpecParts parse_parts(const std::string& text) {
  // Split on " ++ " into additive parts.
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = text.find(" ++ ", start);
    if (at == std::string::npos) {
      parts.push_back(trimmed(text.substr(start)));
      break;
    }
    parts.push_back(trimmed(text.substr(start, at - start)));
    start = at + 4;
  }

  SpecParts out;
  for (const auto& part : parts) {
    if (part.empty()) throw ParseError("empty function spec part", 0, {"term"});
    if (part.front() == '[') {
      out.trig = out.have_trig ? add(out.trig, parse_trig_json(part)) : parse_trig_json(part);
      out.have_trig = true;
    } else if (looks_like_trig(part)) {
      out.trig = out.have_trig ? add(out.trig, parse_trig_text(part)) : parse_trig_text(part);
      out.have_trig = true;
    } else {
      out.handles.push_back(catalog_handle(part));
    }
  }
  return out;
}

}  // namespace

std::optional<TrigPoly> try_parse_pure_trig(const std::string& text) {
  SpecParts p = parse_parts(text);
  if (p.have_trig && p.handles.empty()) return p.trig;
  return std::nullopt;
}

FunctionHandle parse_function_spec(const std::string& text) {
  SpecParts parsed = parse_parts(text);
  TrigPoly trig_sum = std::move(parsed.trig);
  bool have_trig = parsed.have_trig;
  std::vector<FunctionHandle> handles = std::move(parsed.handles);

  if (have_trig && handles.empty()) return make_handle(trig_sum, text);
  FunctionHandle acc;
  bool started = false;
  if (have_trig) {
    acc = make_handle(trig_sum, "trig");
    started = true;
  }
  for (const auto& h : handles) {
    acc = started ? add_handles(acc, h) : h;
    started = true;
  }
  acc.label = text;
  return acc;
}

}  // namespace dwpap
