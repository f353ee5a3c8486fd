#pragma once

#include <complex>
#include <vector>

namespace dwpap::poly {

// Dense real polynomial, coeffs[i] is the coefficient of x^i.  The zero
// polynomial is the empty vector; otherwise the leading coefficient is
// nonzero after trim().
using Poly = std::vector<double>;

int degree(const Poly& p);  // -1 for the zero polynomial
Poly trim(Poly p, double rel_eps = 1e-12);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double c);
Poly derivative(const Poly& p);
double eval(const Poly& p, double x);
std::complex<double> eval(const Poly& p, std::complex<double> x);

// Remainder of a by b (degree(b) >= 0 required).
Poly rem(const Poly& a, const Poly& b);

// Number of distinct real roots, via sign variations of the Sturm chain at
// -inf and +inf.  Works for non-square-free input: the classical chain then
// terminates at a gcd and still counts distinct roots.
int distinct_real_roots(const Poly& p);

// All complex roots by the Durand-Kerner iteration (monic normalization
// internally).  Multiple roots come back as tight clusters.
std::vector<std::complex<double>> all_roots(const Poly& p, int max_iter = 400);

}  // namespace dwpap::poly
