#include "dwpap/cumulative.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dwpap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

BiPoly bp_const(double c) {
  BiPoly r;
  if (c != 0) r.by_abs_pow = {poly::Poly{c}};
  return r;
}

BiPoly bp_add(const BiPoly& a, const BiPoly& b, double sign_b) {
  BiPoly r;
  r.by_abs_pow.resize(std::max(a.by_abs_pow.size(), b.by_abs_pow.size()));
  for (std::size_t k = 0; k < r.by_abs_pow.size(); ++k) {
    poly::Poly pa = k < a.by_abs_pow.size() ? a.by_abs_pow[k] : poly::Poly{};
    poly::Poly pb = k < b.by_abs_pow.size() ? poly::scale(b.by_abs_pow[k], sign_b) : poly::Poly{};
    r.by_abs_pow[k] = poly::add(pa, pb);
  }
  while (!r.by_abs_pow.empty() && r.by_abs_pow.back().empty()) r.by_abs_pow.pop_back();
  return r;
}

BiPoly bp_mul(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  if (a.by_abs_pow.empty() || b.by_abs_pow.empty()) return r;
  r.by_abs_pow.resize(a.by_abs_pow.size() + b.by_abs_pow.size() - 1);
  for (std::size_t i = 0; i < a.by_abs_pow.size(); ++i)
    for (std::size_t j = 0; j < b.by_abs_pow.size(); ++j)
      r.by_abs_pow[i + j] = poly::add(r.by_abs_pow[i + j], poly::mul(a.by_abs_pow[i], b.by_abs_pow[j]));
  while (!r.by_abs_pow.empty() && r.by_abs_pow.back().empty()) r.by_abs_pow.pop_back();
  return r;
}

}  // namespace

bool BiPoly::zero() const { return by_abs_pow.empty(); }

int BiPoly::total_degree() const {
  int d = -1;
  for (std::size_t k = 0; k < by_abs_pow.size(); ++k) {
    int dj = poly::degree(by_abs_pow[k]);
    if (dj >= 0) d = std::max(d, dj + static_cast<int>(k));
  }
  return d;
}

double BiPoly::eval(double x) const {
  double ax = std::fabs(x);
  double r = 0, apow = 1;
  for (const auto& p : by_abs_pow) {
    r += apow * poly::eval(p, x);
    apow *= ax;
  }
  return r;
}

std::optional<BiPoly> extract_bipoly(const WeightExpr& e, int max_degree) {
  auto guard = [max_degree](const BiPoly& b) {
    if (b.total_degree() > max_degree)
      throw std::domain_error("polynomial degree exceeds the configured maximum of " +
                              std::to_string(max_degree));
    return b;
  };
  switch (e.kind) {
    case ExprKind::Constant:
      return bp_const(e.literal_value);
    case ExprKind::Var: {
      BiPoly r;
      r.by_abs_pow = {poly::Poly{0.0, 1.0}};
      return r;
    }
    case ExprKind::Abs: {
      const WeightExpr& c = *e.children[0];
      if (c.kind == ExprKind::Var) {
        BiPoly r;
        r.by_abs_pow = {poly::Poly{}, poly::Poly{1.0}};
        return r;
      }
      if (c.kind == ExprKind::Constant) return bp_const(std::fabs(c.literal_value));
      return std::nullopt;
    }
    case ExprKind::Exp:
      return std::nullopt;
    case ExprKind::Sum: {
      auto a = extract_bipoly(*e.children[0], max_degree);
      auto b = extract_bipoly(*e.children[1], max_degree);
      if (!a || !b) return std::nullopt;
      return guard(bp_add(*a, *b, e.subtract ? -1.0 : 1.0));
    }
    case ExprKind::Product: {
      auto a = extract_bipoly(*e.children[0], max_degree);
      auto b = extract_bipoly(*e.children[1], max_degree);
      if (!a || !b) return std::nullopt;
      return guard(bp_mul(*a, *b));
    }
    case ExprKind::Power: {
      auto base = extract_bipoly(*e.children[0], max_degree);
      if (!base) return std::nullopt;
      BiPoly r = bp_const(1.0);
      for (int i = 0; i < e.exponent; ++i) r = guard(bp_mul(r, *base));
      return r;
    }
  }
  return std::nullopt;
}

namespace {

// c * exp(rate * |x|); the shift exp(delta) is folded into c.
struct ExpAtom {
  double coeff = 0;
  double rate = 0;
};

struct Decomp {
  BiPoly poly_part;
  std::vector<ExpAtom> atoms;
};

// Recognize one summand: either a BiPoly or a product of constants and
// exp(linear in |x|) factors.
bool absorb_term(const WeightExpr& e, double sign, Decomp& d) {
  if (auto bp = extract_bipoly(e)) {
    d.poly_part = bp_add(d.poly_part, *bp, sign);
    return true;
  }

  double coeff = sign;
  double rate = 0, delta = 0;
  bool saw_exp = false;

  // Walk the product chain left-spine first.
  std::vector<const WeightExpr*> stack{&e};
  while (!stack.empty()) {
    const WeightExpr* f = stack.back();
    stack.pop_back();
    if (f->kind == ExprKind::Product) {
      stack.push_back(f->children[0].get());
      stack.push_back(f->children[1].get());
      continue;
    }
    int repeat = 1;
    if (f->kind == ExprKind::Power && f->children[0]->kind == ExprKind::Exp) {
      repeat = f->exponent;
      f = f->children[0].get();
    }
    if (f->kind == ExprKind::Exp) {
      auto inner = extract_bipoly(*f->children[0]);
      if (!inner) return false;
      // Require delta + gamma*|x|: nothing beyond |x|^1, nothing in plain x.
      double g = 0, dlt = 0;
      const auto& rows = inner->by_abs_pow;
      if (rows.size() > 2) return false;
      if (!rows.empty()) {
        if (poly::degree(rows[0]) > 0) return false;
        dlt = rows[0].empty() ? 0.0 : rows[0][0];
      }
      if (rows.size() == 2) {
        if (poly::degree(rows[1]) > 0) return false;
        g = rows[1].empty() ? 0.0 : rows[1][0];
      }
      rate += g * repeat;
      delta += dlt * repeat;
      saw_exp = true;
      continue;
    }
    auto bp = extract_bipoly(*f);
    if (!bp || bp->total_degree() > 0) return false;  // only constant cofactors
    coeff *= bp->zero() ? 0.0 : bp->by_abs_pow[0][0];
  }
  if (!saw_exp) return false;
  coeff *= std::exp(delta);
  if (rate == 0) {
    d.poly_part = bp_add(d.poly_part, bp_const(coeff), 1.0);
    return true;
  }
  d.atoms.push_back({coeff, rate});
  return true;
}

std::optional<Decomp> decompose(const WeightExpr& e) {
  Decomp d;
  // Flatten the Sum spine into signed terms.
  struct Item { const WeightExpr* node; double sign; };
  std::vector<Item> stack{{&e, 1.0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.node->kind == ExprKind::Sum) {
      stack.push_back({it.node->children[0].get(), it.sign});
      stack.push_back({it.node->children[1].get(),
                       it.node->subtract ? -it.sign : it.sign});
      continue;
    }
    if (!absorb_term(*it.node, it.sign, d)) return std::nullopt;
  }
  return d;
}

// integral over [-T,T] of sum c[k][j] x^j |x|^k: odd j cancels, even j gives
// 2 c T^{j+k+1} / (j+k+1).
poly::Poly cumulative_poly(const BiPoly& b) {
  poly::Poly cum;
  for (std::size_t k = 0; k < b.by_abs_pow.size(); ++k) {
    const poly::Poly& row = b.by_abs_pow[k];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j % 2 != 0 || row[j] == 0) continue;
      std::size_t pow = j + k + 1;
      if (cum.size() < pow + 1) cum.resize(pow + 1, 0.0);
      cum[pow] += 2.0 * row[j] / static_cast<double>(pow);
    }
  }
  return poly::trim(std::move(cum));
}

// log(e^a + s*e^b) accumulation on sign/log pairs.
SLog slog_accumulate(SLog acc, int sign, double log_abs) {
  if (sign == 0 || log_abs == kNegInf) return acc;
  if (acc.sign == 0) return {sign, log_abs};
  if (acc.sign == sign) {
    double hi = std::max(acc.log_abs, log_abs), lo = std::min(acc.log_abs, log_abs);
    return {sign, hi + std::log1p(std::exp(lo - hi))};
  }
  if (acc.log_abs == log_abs) return {0, kNegInf};
  if (acc.log_abs > log_abs)
    return {acc.sign, acc.log_abs + std::log1p(-std::exp(log_abs - acc.log_abs))};
  return {sign, log_abs + std::log1p(-std::exp(acc.log_abs - log_abs))};
}

}  // namespace

CumulativeForm exact_cumulative(const WeightExpr& e) {
  CumulativeForm form;
  auto d = decompose(e);
  if (!d) return form;

  poly::Poly cum = cumulative_poly(d->poly_part);
  std::vector<ExpAtom> atoms = d->atoms;

  form.available = true;
  form.value = [cum, atoms](double T) {
    double v = poly::eval(cum, T);
    for (const auto& a : atoms) v += 2.0 * a.coeff * std::expm1(a.rate * T) / a.rate;
    return v;
  };
  form.log_value = [cum, atoms](double T) {
    SLog acc{0, kNegInf};
    double pv = poly::eval(cum, T);
    if (std::isfinite(pv)) {
      acc = slog_accumulate(acc, pv > 0 ? 1 : (pv < 0 ? -1 : 0),
                            pv == 0 ? kNegInf : std::log(std::fabs(pv)));
    } else if (!cum.empty() && T > 0) {
      double lead = cum.back();
      acc = slog_accumulate(acc, lead > 0 ? 1 : -1,
                            std::log(std::fabs(lead)) + poly::degree(cum) * std::log(T));
    }
    for (const auto& a : atoms) {
      // log |2c (e^{rT} - 1)/r|, formed without the value itself.
      double body;
      if (a.rate * T > 0)
        body = a.rate * T + std::log1p(-std::exp(-a.rate * T));
      else
        body = std::log(-std::expm1(a.rate * T));
      // (e^{rT} - 1)/r is positive for T > 0 whatever the sign of r.
      int sign = a.coeff > 0 ? 1 : -1;
      if (a.coeff == 0) continue;
      acc = slog_accumulate(acc, sign,
                            std::log(std::fabs(2.0 * a.coeff / a.rate)) + body);
    }
    return acc.sign > 0 ? acc.log_abs
                        : (acc.sign == 0 ? kNegInf
                                         : std::numeric_limits<double>::quiet_NaN());
  };
  return form;
}

}  // namespace dwpap
