#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwpap/poly.hpp"
#include "dwpap/weight_expr.hpp"

namespace dwpap {

enum class RejectReason { None, OddDegree, RealRoot, NegativeValues, NotPolynomial };

std::string to_string(RejectReason r);

// Irreducible real quadratic x^2 + a x + b (discriminant < 0) with its
// multiplicity in the factorization.
struct QuadraticFactor {
  double a = 0;
  double b = 0;
  int multiplicity = 1;
};

// Outcome of analyzing an expression as a candidate polynomial weight.
// A nonconstant polynomial is everywhere positive exactly when its degree is
// even, its leading coefficient is positive and it has no real roots; it then
// factors as leading * prod (x^2 + a_k x + b_k)^{m_k} with degree = 2*sum m_k,
// and its pointwise translation ratios tend to 1, which places it in the
// strong translation-stable weight class.
struct PolyClassification {
  bool is_polynomial = false;
  int degree = -1;
  bool is_weight = false;
  double leading = 0;
  std::vector<QuadraticFactor> factors;
  RejectReason reason = RejectReason::None;
  bool translation_stable = false;  // set for every accepted polynomial weight
  poly::Poly coefficients;          // present when is_polynomial
};

// Throws std::domain_error when the expanded degree exceeds max_degree.
PolyClassification classify_polynomial(const WeightExpr& e, int max_degree = 64);

// Expansion of the factored form back to coefficients (for verification).
poly::Poly reconstruct(const PolyClassification& c);

}  // namespace dwpap
