#pragma once

#include <string>
#include <vector>

#include "dwpap/cumulative.hpp"
#include "dwpap/weight_expr.hpp"

namespace dwpap {

// A locally integrable weight on the real line, described by an expression
// tree.  mu_qt(T) is the measure of [-T, T].  When the expression sits in the
// closed-form catalog that form answers every cumulative query (bit-stable
// across runs); otherwise adaptive quadrature takes over, in log scale for
// exponential-family expressions so nothing overflows.
class Weight {
 public:
  Weight() = default;
  explicit Weight(ExprPtr e);

  double eval(double x) const { return eval_expr(*expr_, x); }
  double log_eval(double x) const { return log_eval_expr(*expr_, x); }
  bool exp_family() const { return exp_family_; }
  bool continuous() const { return true; }  // every expressible weight is continuous
  const CumulativeForm& cumulative() const { return cum_; }

  double mu_qt(double T, double tol = 1e-10) const;
  double log_mu_qt(double T, double tol = 1e-10) const;

  // log mu(Q_T) along an increasing sequence of T values; quadrature work is
  // shared between consecutive points (each step only integrates the two new
  // shells).
  std::vector<double> log_mu_qt_ladder(const std::vector<double>& increasing_t,
                                       double tol = 1e-10) const;

  const WeightExpr& expr() const { return *expr_; }
  const ExprPtr& expr_ptr() const { return expr_; }
  std::string text() const { return to_text(*expr_); }

 private:
  ExprPtr expr_;
  CumulativeForm cum_;
  bool exp_family_ = false;
};

Weight make_weight(const std::string& text);
Weight make_weight(ExprPtr e);
Weight combine_sum(const Weight& a, const Weight& b);
Weight combine_product(const Weight& a, const Weight& b);

}  // namespace dwpap
