#include "dwpap/weight.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dwpap/errors.hpp"
#include "dwpap/quadrature.hpp"

namespace dwpap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b, lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

Weight::Weight(ExprPtr e) : expr_(std::move(e)) {
  if (!expr_) throw std::invalid_argument("weight: null expression");
  cum_ = exact_cumulative(*expr_);
  exp_family_ = contains_exp(*expr_);
}

double Weight::mu_qt(double T, double tol) const {
  if (!(T > 0)) throw std::invalid_argument("mu_qt: T must be positive");
  if (cum_.available) return cum_.value(T);
  if (exp_family_) return std::exp(log_mu_qt(T, tol));
  QuadOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  auto f = [this](double x) { return eval(x); };
  return integrate(f, -T, 0.0, opt) + integrate(f, 0.0, T, opt);
}

double Weight::log_mu_qt(double T, double tol) const {
  if (!(T > 0)) throw std::invalid_argument("mu_qt: T must be positive");
  if (cum_.available) return cum_.log_value(T);
  QuadOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  if (exp_family_) {
    auto lf = [this](double x) { return log_eval(x); };
    return log_add(integrate_log(lf, -T, 0.0, opt), integrate_log(lf, 0.0, T, opt));
  }
  double v = mu_qt(T, tol);
  if (!(v > 0)) throw EngineError("mu_qt: nonpositive measure for weight " + text());
  return std::log(v);
}

std::vector<double> Weight::log_mu_qt_ladder(const std::vector<double>& increasing_t,
                                             double tol) const {
  std::vector<double> out;
  out.reserve(increasing_t.size());
  if (cum_.available) {
    for (double T : increasing_t) out.push_back(cum_.log_value(T));
    return out;
  }
  QuadOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  double prev = 0;
  bool first = true;
  if (exp_family_) {
    auto lf = [this](double x) { return log_eval(x); };
    double acc = kNegInf;
    for (double T : increasing_t) {
      if (!(T > 0) || (!first && T <= prev))
        throw std::invalid_argument("mu_qt ladder: T values must be positive and increasing");
      if (first) {
        acc = log_add(integrate_log(lf, -T, 0.0, opt), integrate_log(lf, 0.0, T, opt));
        first = false;
      } else {
        acc = log_add(acc, log_add(integrate_log(lf, -T, -prev, opt),
                                   integrate_log(lf, prev, T, opt)));
      }
      prev = T;
      out.push_back(acc);
    }
    return out;
  }
  auto f = [this](double x) { return eval(x); };
  double acc = 0;
  for (double T : increasing_t) {
    if (!(T > 0) || (!first && T <= prev))
      throw std::invalid_argument("mu_qt ladder: T values must be positive and increasing");
    if (first) {
      acc = integrate(f, -T, 0.0, opt) + integrate(f, 0.0, T, opt);
      first = false;
    } else {
      acc += integrate(f, -T, -prev, opt) + integrate(f, prev, T, opt);
    }
    prev = T;
    if (!(acc > 0) || !std::isfinite(acc))
      throw EngineError("mu_qt ladder: measure not positive-finite for weight " + text());
    out.push_back(std::log(acc));
  }
  return out;
}

Weight make_weight(const std::string& text) { return Weight(parse_weight(text)); }
Weight make_weight(ExprPtr e) { return Weight(std::move(e)); }

Weight combine_sum(const Weight& a, const Weight& b) {
  return Weight(WeightExpr::sum(a.expr_ptr(), b.expr_ptr()));
}

Weight combine_product(const Weight& a, const Weight& b) {
  return Weight(WeightExpr::product(a.expr_ptr(), b.expr_ptr()));
}

}  // namespace dwpap
