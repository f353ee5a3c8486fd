#include "dwpap/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwpap {

namespace {

bool all_zero(const CVec& v) {
  for (const auto& c : v)
    if (c != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

}  // namespace

TrigPoly::TrigPoly(int dim, std::vector<Term> terms, double freq_tol) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("trig poly: dimension must be positive");
  for (const auto& t : terms)
    if (static_cast<int>(t.coeff.size()) != dim)
      throw std::invalid_argument("trig poly: coefficient dimension mismatch");
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.freq < b.freq; });
  for (auto& t : terms) {
    if (terms_.empty() || t.freq - terms_.back().freq > freq_tol) {
      terms_.push_back(std::move(t));
    } else {
      for (int k = 0; k < dim; ++k) terms_.back().coeff[k] += t.coeff[k];
    }
  }
  std::erase_if(terms_, [](const Term& t) { return all_zero(t.coeff); });
}

CVec TrigPoly::eval(double t) const {
  CVec out(dim_, 0.0);
  for (const auto& term : terms_) {
    std::complex<double> phase = std::polar(1.0, term.freq * t);
    for (int k = 0; k < dim_; ++k) out[k] += term.coeff[k] * phase;
  }
  return out;
}

CVec TrigPoly::mean() const { return coefficient(0.0); }

CVec TrigPoly::coefficient(double lambda, double freq_tol) const {
  for (const auto& term : terms_)
    if (std::fabs(term.freq - lambda) <= freq_tol) return term.coeff;
  return CVec(dim_, 0.0);
}

std::vector<double> TrigPoly::frequencies() const {
  std::vector<double> f;
  f.reserve(terms_.size());
  for (const auto& t : terms_) f.push_back(t.freq);
  return f;
}

double TrigPoly::max_frequency() const {
  double m = 0;
  for (const auto& t : terms_) m = std::max(m, std::fabs(t.freq));
  return m;
}

double TrigPoly::coeff_l1() const {
  double s = 0;
  for (const auto& t : terms_) {
    double n2 = 0;
    for (const auto& c : t.coeff) n2 += std::norm(c);
    s += std::sqrt(n2);
  }
  return s;
}

TrigPoly TrigPoly::translate(double alpha) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) {
    std::complex<double> phase = std::polar(1.0, t.freq * alpha);
    for (auto& c : t.coeff) c *= phase;
  }
  return TrigPoly(dim_, std::move(terms));
}

TrigPoly TrigPoly::scale(std::complex<double> c) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms)
    for (auto& a : t.coeff) a *= c;
  return TrigPoly(dim_, std::move(terms));
}

TrigPoly add(const TrigPoly& a, const TrigPoly& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trig poly: dimension mismatch in add");
  std::vector<TrigPoly::Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return TrigPoly(a.dim(), std::move(terms));
}

}  // namespace dwpap
