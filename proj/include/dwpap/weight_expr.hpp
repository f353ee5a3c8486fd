#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dwpap/errors.hpp"

namespace dwpap {

// Decimal literal kept exact as mantissa * 10^exponent.  The binary value is
// produced once, when the node is built, so evaluation never re-rounds.
struct Decimal {
  std::int64_t mantissa = 0;
  int exponent = 0;

  double value() const;
  std::string text() const;  // canonical form; parsing it recovers mantissa/exponent
  bool operator==(const Decimal&) const = default;
};

enum class ExprKind { Constant, Var, Abs, Sum, Product, Power, Exp };

struct WeightExpr;
using ExprPtr = std::shared_ptr<const WeightExpr>;

// Immutable expression tree for the weight language:
//   expr   := term { ("+" | "-") term }
//   term   := factor { "*" factor }
//   factor := atom [ "^" integer ]
//   atom   := number | "x" | "abs" "(" expr ")" | "exp" "(" expr ")" | "(" expr ")"
// Sum nodes are binary and carry a subtract flag for the "-" spelling.
struct WeightExpr {
  ExprKind kind;
  Decimal literal;            // Constant
  double literal_value = 0;   // cached binary value of the literal
  bool subtract = false;      // Sum: lhs - rhs instead of lhs + rhs
  int exponent = 0;           // Power, always >= 0
  std::vector<ExprPtr> children;

  static ExprPtr constant(Decimal d);
  static ExprPtr constant(std::int64_t v);
  static ExprPtr var();
  static ExprPtr abs(ExprPtr e);
  static ExprPtr exp(ExprPtr e);
  static ExprPtr sum(ExprPtr lhs, ExprPtr rhs, bool subtract = false);
  static ExprPtr product(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr power(ExprPtr base, int n);
};

bool structurally_equal(const WeightExpr& a, const WeightExpr& b);

// Canonical text: whitespace-free except around "+"/"-", parenthesized so that
// parse(to_text(e)) is structurally identical to e.
std::string to_text(const WeightExpr& e);

double eval_expr(const WeightExpr& e, double x);

// Sign/log decomposition of a value: avoids overflow for exp-heavy trees,
// e.g. slog of exp(x^2) at x = 100 carries log = 10000 without ever forming
// the value.  sign is -1, 0 or +1.
struct SLog {
  int sign = 0;
  double log_abs = 0;  // log |value|; -inf when the value is 0
};

SLog slog_eval(const WeightExpr& e, double x);

// log of eval_expr(e, x); NaN when the value is negative, -inf when zero.
double log_eval_expr(const WeightExpr& e, double x);

// Whether the tree contains an Exp node anywhere (drives log-domain choices).
bool contains_exp(const WeightExpr& e);

// Throws ParseError (byte offset + expected-token set) on bad input.
ExprPtr parse_weight(std::string_view text);

}  // namespace dwpap
