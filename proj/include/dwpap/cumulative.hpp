#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dwpap/poly.hpp"
#include "dwpap/weight_expr.hpp"

namespace dwpap {

// Polynomial in x and |x|: by_abs_pow[k] holds the coefficients (in x) that
// multiply |x|^k.  Covers plain polynomials (k = 0 only) and abs-polynomials
// such as 1 + |x| or (1 + |x|)^2.
struct BiPoly {
  std::vector<poly::Poly> by_abs_pow;

  bool zero() const;
  int total_degree() const;  // max j + k over nonzero monomials, -1 when zero
  double eval(double x) const;
};

// Structural extraction; nullopt when the expression is not a polynomial in
// x and |x| (Abs is only admitted directly over x or over constants).
std::optional<BiPoly> extract_bipoly(const WeightExpr& e, int max_degree = 64);

// Symmetric-interval antiderivative, exact where the catalog applies:
//   value(T)  = integral of the weight over [-T, T]
//   log_value = same in log scale, safe for exponential growth.
struct CumulativeForm {
  bool available = false;
  std::function<double(double)> value;
  std::function<double(double)> log_value;
};

// Closed form for sums of (a) polynomials in x and |x| and (b) constant
// multiples of exp(gamma*|x| + delta).  Everything else is unavailable and
// callers fall back to quadrature.
CumulativeForm exact_cumulative(const WeightExpr& e);

}  // namespace dwpap
