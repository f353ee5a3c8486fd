#include "dwpap/weight_expr.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace dwpap {

double Decimal::value() const {
  if (exponent >= 0) return static_cast<double>(mantissa) * std::pow(10.0, exponent);
  return static_cast<double>(mantissa) / std::pow(10.0, -exponent);
}

std::string Decimal::text() const {
  std::string digits = std::to_string(mantissa);
  if (exponent >= 0) return digits + std::string(exponent, '0');
  std::size_t frac = static_cast<std::size_t>(-exponent);
  if (digits.size() <= frac) digits.insert(0, frac + 1 - digits.size(), '0');
  digits.insert(digits.size() - frac, 1, '.');
  return digits;
}

namespace {

ExprPtr make_node(WeightExpr e) { return std::make_shared<const WeightExpr>(std::move(e)); }

}  // namespace

ExprPtr WeightExpr::constant(Decimal d) {
  WeightExpr e;
  e.kind = ExprKind::Constant;
  e.literal = d;
  e.literal_value = d.value();
  return make_node(std::move(e));
}

ExprPtr WeightExpr::constant(std::int64_t v) { return constant(Decimal{v, 0}); }

ExprPtr WeightExpr::var() {
  WeightExpr e;
  e.kind = ExprKind::Var;
  return make_node(std::move(e));
}

ExprPtr WeightExpr::abs(ExprPtr c) {
  WeightExpr e;
  e.kind = ExprKind::Abs;
  e.children = {std::move(c)};
  return make_node(std::move(e));
}

ExprPtr WeightExpr::exp(ExprPtr c) {
  WeightExpr e;
  e.kind = ExprKind::Exp;
  e.children = {std::move(c)};
  return make_node(std::move(e));
}

ExprPtr WeightExpr::sum(ExprPtr lhs, ExprPtr rhs, bool subtract) {
  WeightExpr e;
  e.kind = ExprKind::Sum;
  e.subtract = subtract;
  e.children = {std::move(lhs), std::move(rhs)};
  return make_node(std::move(e));
}

ExprPtr WeightExpr::product(ExprPtr lhs, ExprPtr rhs) {
  WeightExpr e;
  e.kind = ExprKind::Product;
  e.children = {std::move(lhs), std::move(rhs)};
  return make_node(std::move(e));
}

ExprPtr WeightExpr::power(ExprPtr base, int n) {
  if (n < 0) throw std::invalid_argument("weight expression: negative power");
  WeightExpr e;
  e.kind = ExprKind::Power;
  e.exponent = n;
  e.children = {std::move(base)};
  return make_node(std::move(e));
}

bool structurally_equal(const WeightExpr& a, const WeightExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Constant:
      if (!(a.literal == b.literal)) return false;
      break;
    case ExprKind::Sum:
      if (a.subtract != b.subtract) return false;
      break;
    case ExprKind::Power:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

namespace {

// Precedence used by the printer: Sum < Product < Power operand.
int precedence(const WeightExpr& e) {
  switch (e.kind) {
    case ExprKind::Sum: return 0;
    case ExprKind::Product: return 1;
    case ExprKind::Power: return 2;
    default: return 3;
  }
}

// min_prec is the weakest precedence printable without parentheses at this
// position.  Right operands of Sum/Product use own-precedence + 1 so that a
// right-nested tree round-trips through the left-associative parser.
void print_expr(const WeightExpr& e, int min_prec, std::string& out) {
  bool parens = precedence(e) < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case ExprKind::Constant:
      out += e.literal.text();
      break;
    case ExprKind::Var:
      out += 'x';
      break;
    case ExprKind::Abs:
      out += "abs(";
      print_expr(*e.children[0], 0, out);
      out += ')';
      break;
    case ExprKind::Exp:
      out += "exp(";
      print_expr(*e.children[0], 0, out);
      out += ')';
      break;
    case ExprKind::Sum:
      print_expr(*e.children[0], 0, out);
      out += e.subtract ? " - " : " + ";
      print_expr(*e.children[1], 1, out);
      break;
    case ExprKind::Product:
      print_expr(*e.children[0], 1, out);
      out += '*';
      print_expr(*e.children[1], 2, out);
      break;
    case ExprKind::Power:
      print_expr(*e.children[0], 3, out);
      out += '^';
      out += std::to_string(e.exponent);
      break;
  }
  if (parens) out += ')';
}

double ipow(double base, int n) {
  double r = 1.0, b = base;
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

std::string to_text(const WeightExpr& e) {
  std::string out;
  print_expr(e, 0, out);
  return out;
}

double eval_expr(const WeightExpr& e, double x) {
  switch (e.kind) {
    case ExprKind::Constant: return e.literal_value;
    case ExprKind::Var: return x;
    case ExprKind::Abs: return std::fabs(eval_expr(*e.children[0], x));
    case ExprKind::Exp: return std::exp(eval_expr(*e.children[0], x));
    case ExprKind::Sum: {
      double a = eval_expr(*e.children[0], x);
      double b = eval_expr(*e.children[1], x);
      return e.subtract ? a - b : a + b;
    }
    case ExprKind::Product:
      return eval_expr(*e.children[0], x) * eval_expr(*e.children[1], x);
    case ExprKind::Power:
      return ipow(eval_expr(*e.children[0], x), e.exponent);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

SLog slog_from_value(double v) {
  if (v > 0) return {1, std::log(v)};
  if (v < 0) return {-1, std::log(-v)};
  return {0, kNegInf};
}

// log(e^a + e^b), tolerant of -inf.
double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b, lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

SLog slog_eval(const WeightExpr& e, double x) {
  switch (e.kind) {
    case ExprKind::Constant:
      return slog_from_value(e.literal_value);
    case ExprKind::Var:
      return slog_from_value(x);
    case ExprKind::Abs: {
      SLog c = slog_eval(*e.children[0], x);
      return {c.sign == 0 ? 0 : 1, c.log_abs};
    }
    case ExprKind::Exp:
      // log(exp(g)) = g, no overflow however large g is.
      return {1, eval_expr(*e.children[0], x)};
    case ExprKind::Product: {
      SLog a = slog_eval(*e.children[0], x);
      SLog b = slog_eval(*e.children[1], x);
      if (a.sign == 0 || b.sign == 0) return {0, kNegInf};
      return {a.sign * b.sign, a.log_abs + b.log_abs};
    }
    case ExprKind::Power: {
      if (e.exponent == 0) return {1, 0.0};
      SLog a = slog_eval(*e.children[0], x);
      if (a.sign == 0) return {0, kNegInf};
      int sign = (a.sign < 0 && (e.exponent & 1)) ? -1 : 1;
      return {sign, static_cast<double>(e.exponent) * a.log_abs};
    }
    case ExprKind::Sum: {
      SLog a = slog_eval(*e.children[0], x);
      SLog b = slog_eval(*e.children[1], x);
      if (e.subtract) b.sign = -b.sign;
      if (a.sign == 0) return b;
      if (b.sign == 0) return a;
      if (a.sign == b.sign) return {a.sign, log_add(a.log_abs, b.log_abs)};
      // Opposite signs: subtract the smaller magnitude from the larger.
      if (a.log_abs == b.log_abs) return {0, kNegInf};
      const SLog& hi = a.log_abs > b.log_abs ? a : b;
      const SLog& lo = a.log_abs > b.log_abs ? b : a;
      double diff = std::exp(lo.log_abs - hi.log_abs);
      return {hi.sign, hi.log_abs + std::log1p(-diff)};
    }
  }
  return {0, kNegInf};
}

double log_eval_expr(const WeightExpr& e, double x) {
  SLog s = slog_eval(e, x);
  if (s.sign > 0) return s.log_abs;
  if (s.sign == 0) return kNegInf;
  return std::numeric_limits<double>::quiet_NaN();
}

bool contains_exp(const WeightExpr& e) {
  if (e.kind == ExprKind::Exp) return true;
  for (const auto& c : e.children)
    if (contains_exp(*c)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Type { Number, X, AbsName, ExpName, LParen, RParen, Plus, Minus, Star, Caret, End } type;
  std::size_t offset;
  Decimal number;   // Number
  bool is_integer;  // Number without a fractional part
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_.offset = pos_;
    if (pos_ >= text_.size()) {
      current_.type = Token::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': current_.type = Token::LParen; ++pos_; return;
      case ')': current_.type = Token::RParen; ++pos_; return;
      case '+': current_.type = Token::Plus; ++pos_; return;
      case '-': current_.type = Token::Minus; ++pos_; return;
      case '*': current_.type = Token::Star; ++pos_; return;
      case '^': current_.type = Token::Caret; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") { current_.type = Token::X; return; }
      if (word == "abs") { current_.type = Token::AbsName; return; }
      if (word == "exp") { current_.type = Token::ExpName; return; }
      fail(start, {"number", "x", "abs", "exp", "("},
           "unknown identifier '" + std::string(word) + "'");
    }
    fail(pos_, {"number", "x", "abs", "exp", "("},
         std::string("unexpected character '") + c + "'");
  }

  void lex_number() {
    std::size_t start = pos_;
    std::int64_t mantissa = 0;
    int exponent = 0;
    bool frac = false;
    int digits = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        if (++digits > 18) fail(start, {"number"}, "numeric literal too long");
        mantissa = mantissa * 10 + (c - '0');
        if (frac) --exponent;
        ++pos_;
      } else if (c == '.' && !frac) {
        frac = true;
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail(pos_, {"digit"}, "expected digit after decimal point");
      } else {
        break;
      }
    }
    current_.type = Token::Number;
    current_.offset = start;
    current_.number = Decimal{mantissa, exponent};
    current_.is_integer = !frac;
  }

  [[noreturn]] void fail(std::size_t offset, std::vector<std::string> expected,
                         const std::string& detail) {
    std::ostringstream msg;
    msg << "syntax error at offset " << offset << ": " << detail;
    throw ParseError(msg.str(), offset, std::move(expected));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{};
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    if (lex_.peek().type != Token::End)
      fail({"+", "-", "*", "^", "end of input"}, "trailing input");
    return e;
  }

 private:
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (lex_.peek().type == Token::Plus || lex_.peek().type == Token::Minus) {
      bool subtract = lex_.take().type == Token::Minus;
      lhs = WeightExpr::sum(std::move(lhs), parse_term(), subtract);
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (lex_.peek().type == Token::Star) {
      lex_.take();
      lhs = WeightExpr::product(std::move(lhs), parse_factor());
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_atom();
    if (lex_.peek().type == Token::Caret) {
      lex_.take();
      Token t = lex_.peek();
      if (t.type != Token::Number || !t.is_integer || t.number.mantissa > 1000000)
        fail({"nonnegative integer"}, "expected integer exponent");
      lex_.take();
      return WeightExpr::power(std::move(base), static_cast<int>(t.number.mantissa));
    }
    return base;
  }

  ExprPtr parse_atom() {
    Token t = lex_.peek();
    switch (t.type) {
      case Token::Number:
        lex_.take();
        return WeightExpr::constant(t.number);
      case Token::X:
        lex_.take();
        return WeightExpr::var();
      case Token::AbsName: {
        lex_.take();
        expect(Token::LParen, "(");
        ExprPtr inner = parse_expr();
        expect(Token::RParen, ")");
        return WeightExpr::abs(std::move(inner));
      }
      case Token::ExpName: {
        lex_.take();
        expect(Token::LParen, "(");
        ExprPtr inner = parse_expr();
        expect(Token::RParen, ")");
        return WeightExpr::exp(std::move(inner));
      }
      case Token::LParen: {
        lex_.take();
        ExprPtr inner = parse_expr();
        expect(Token::RParen, ")");
        return inner;
      }
      default:
        fail({"number", "x", "abs", "exp", "("}, "expected an operand");
    }
  }

  void expect(Token::Type type, const std::string& spelling) {
    if (lex_.peek().type != type) fail({spelling}, "expected '" + spelling + "'");
    lex_.take();
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) {
    std::size_t offset = lex_.peek().offset;
    std::ostringstream msg;
    msg << "syntax error at offset " << offset << ": " << detail;
    throw ParseError(msg.str(), offset, std::move(expected));
  }

  Lexer lex_;
};

}  // namespace

ExprPtr parse_weight(std::string_view text) { return Parser(text).parse(); }

}  // namespace dwpap
