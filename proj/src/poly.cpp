#include "dwpap/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwpap::poly {

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly trim(Poly p, double rel_eps) {
  double scale = 0;
  for (double c : p) scale = std::max(scale, std::fabs(c));
  double cut = scale * rel_eps;
  while (!p.empty() && std::fabs(p.back()) <= cut) p.pop_back();
  return p;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(std::move(r));
}

Poly scale(const Poly& a, double c) {
  Poly r = a;
  for (double& v : r) v *= c;
  return trim(std::move(r));
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<double>(i);
  return trim(std::move(r));
}

double eval(const Poly& p, double x) {
  double r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

std::complex<double> eval(const Poly& p, std::complex<double> x) {
  std::complex<double> r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

Poly rem(const Poly& a, const Poly& b) {
  if (b.empty()) throw std::invalid_argument("poly: division by zero polynomial");
  Poly r = a;
  int db = degree(b);
  double lead = b.back();
  while (degree(r) >= db) {
    double q = r.back() / lead;
    int shift = degree(r) - db;
    for (int i = 0; i <= db; ++i) r[i + shift] -= q * b[i];
    r.pop_back();  // the leading term cancels by construction
    r = trim(std::move(r));
    if (r.empty()) break;
  }
  return r;
}

namespace {

int sign_at_infinity(const Poly& p, bool positive_end) {
  if (p.empty()) return 0;
  double lead = p.back();
  int s = lead > 0 ? 1 : (lead < 0 ? -1 : 0);
  if (!positive_end && (degree(p) & 1)) s = -s;
  return s;
}

int count_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

int distinct_real_roots(const Poly& p_in) {
  Poly p = trim(p_in);
  if (degree(p) <= 0) return 0;
  // Normalize to tame coefficient growth; positive scaling keeps signs.
  auto unit_scale = [](Poly q) {
    double m = 0;
    for (double c : q) m = std::max(m, std::fabs(c));
    if (m > 0)
      for (double& c : q) c /= m;
    return q;
  };
  std::vector<Poly> chain;
  chain.push_back(unit_scale(p));
  chain.push_back(unit_scale(derivative(p)));
  while (!chain.back().empty() && degree(chain.back()) > 0) {
    Poly r = rem(chain[chain.size() - 2], chain.back());
    r = scale(r, -1.0);
    double m = 0;
    for (double c : r) m = std::max(m, std::fabs(c));
    // Against unit-scaled inputs a remainder this small is an exact zero in
    // floating-point disguise: the chain has reached the gcd (multiple-root
    // case), where the classical chain terminates.
    if (m <= 1e-11) break;
    for (double& c : r) c /= m;
    chain.push_back(std::move(r));
  }
  std::vector<int> at_minus, at_plus;
  for (const Poly& q : chain) {
    at_minus.push_back(sign_at_infinity(q, false));
    at_plus.push_back(sign_at_infinity(q, true));
  }
  return count_variations(at_minus) - count_variations(at_plus);
}

std::vector<std::complex<double>> all_roots(const Poly& p_in, int max_iter) {
  Poly p = trim(p_in);
  int n = degree(p);
  if (n <= 0) return {};
  std::vector<double> monic(p.begin(), p.end());
  double lead = monic.back();
  for (double& c : monic) c /= lead;

  double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(monic[i]));
  bound = 1.0 + bound;

  std::vector<std::complex<double>> z(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc = seed;
  for (int i = 0; i < n; ++i) {
    z[i] = bound * acc;
    acc *= seed;
  }

  Poly pm(monic);
  for (int iter = 0; iter < max_iter; ++iter) {
    double max_step = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> num = eval(pm, z[i]);
      std::complex<double> den = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      if (std::abs(den) == 0) continue;
      std::complex<double> step = num / den;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-14 * bound) break;
  }
  return z;
}

}  // namespace dwpap::poly
