#pragma once

#include <complex>
#include <vector>

namespace dwpap {

using CVec = std::vector<std::complex<double>>;

// Finite sum  sum_k a_k e^{i lambda_k t}  with vector coefficients.
// Construction canonicalizes: frequencies within freq_tol merge (coefficients
// add), exact-zero coefficients drop, terms sort by frequency.
class TrigPoly {
 public:
  struct Term {
    CVec coeff;
    double freq = 0;
  };

  TrigPoly() : dim_(1) {}
  TrigPoly(int dim, std::vector<Term> terms, double freq_tol = 1e-9);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  CVec eval(double t) const;
  CVec mean() const;                        // coefficient at frequency 0
  CVec coefficient(double lambda, double freq_tol = 1e-9) const;
  std::vector<double> frequencies() const;
  double max_frequency() const;             // max |lambda_k|, 0 when empty
  double coeff_l1() const;                  // sum of coefficient norms (sup bound)

  TrigPoly translate(double alpha) const;   // t -> t + alpha
  TrigPoly scale(std::complex<double> c) const;

  friend TrigPoly add(const TrigPoly& a, const TrigPoly& b);

 private:
  int dim_;
  std::vector<Term> terms_;
};

TrigPoly add(const TrigPoly& a, const TrigPoly& b);

}  // namespace dwpap
