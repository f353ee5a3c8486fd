#include "dwpap/poly_classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwpap/errors.hpp"

namespace dwpap {

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::OddDegree: return "odd degree";
    case RejectReason::RealRoot: return "real root";
    case RejectReason::NegativeValues: return "negative values";
    case RejectReason::NotPolynomial: return "not polynomial";
  }
  return "unknown";
}

namespace {

// Expand the tree into dense coefficients; nullopt when the expression is not
// a polynomial in x (any Abs or Exp node disqualifies it).
std::optional<poly::Poly> expand(const WeightExpr& e, int max_degree) {
  auto guard = [max_degree](const poly::Poly& p) {
    if (poly::degree(p) > max_degree)
      throw std::domain_error("polynomial degree exceeds the configured maximum of " +
                              std::to_string(max_degree));
    return p;
  };
  switch (e.kind) {
    case ExprKind::Constant:
      if (e.literal_value == 0) return poly::Poly{};
      return poly::Poly{e.literal_value};
    case ExprKind::Var:
      return poly::Poly{0.0, 1.0};
    case ExprKind::Abs:
    case ExprKind::Exp:
      return std::nullopt;
    case ExprKind::Sum: {
      auto a = expand(*e.children[0], max_degree);
      auto b = expand(*e.children[1], max_degree);
      if (!a || !b) return std::nullopt;
      return guard(e.subtract ? poly::sub(*a, *b) : poly::add(*a, *b));
    }
    case ExprKind::Product: {
      auto a = expand(*e.children[0], max_degree);
      auto b = expand(*e.children[1], max_degree);
      if (!a || !b) return std::nullopt;
      return guard(poly::mul(*a, *b));
    }
    case ExprKind::Power: {
      auto base = expand(*e.children[0], max_degree);
      if (!base) return std::nullopt;
      if (e.exponent > 0 && poly::degree(*base) >= 0 &&
          static_cast<long>(poly::degree(*base)) * e.exponent > max_degree)
        throw std::domain_error("polynomial degree exceeds the configured maximum of " +
                                std::to_string(max_degree));
      poly::Poly r{1.0};
      for (int i = 0; i < e.exponent; ++i) r = guard(poly::mul(r, *base));
      return r;
    }
  }
  return std::nullopt;
}

struct Cluster {
  std::complex<double> center;
  int size = 0;
};

std::vector<Cluster> cluster_roots(std::vector<std::complex<double>> roots) {
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<Cluster> clusters;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> sum = roots[i];
    int count = 1;
    used[i] = true;
    double tol = 1e-3 * (1.0 + std::abs(roots[i]));
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= tol) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  return clusters;
}

// An m-fold root of p is a simple root of the (m-1)th derivative; Newton on
// that derivative converges quadratically where direct iteration on p stalls
// at the cluster noise floor.
std::complex<double> refine_root(const poly::Poly& p, std::complex<double> z, int multiplicity) {
  poly::Poly q = p;
  for (int i = 1; i < multiplicity; ++i) q = poly::derivative(q);
  poly::Poly dq = poly::derivative(q);
  for (int iter = 0; iter < 60; ++iter) {
    std::complex<double> f = poly::eval(q, z);
    std::complex<double> df = poly::eval(dq, z);
    if (std::abs(df) == 0) break;
    std::complex<double> step = f / df;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

}  // namespace

poly::Poly reconstruct(const PolyClassification& c) {
  poly::Poly r{c.leading};
  for (const auto& f : c.factors) {
    poly::Poly quad{f.b, f.a, 1.0};
    for (int i = 0; i < f.multiplicity; ++i) r = poly::mul(r, quad);
  }
  return r;
}

PolyClassification classify_polynomial(const WeightExpr& e, int max_degree) {
  PolyClassification out;
  auto expanded = expand(e, max_degree);
  if (!expanded) {
    out.reason = RejectReason::NotPolynomial;
    return out;
  }
  poly::Poly p = poly::trim(*expanded);
  out.is_polynomial = true;
  out.coefficients = p;
  out.degree = std::max(poly::degree(p), 0);

  if (poly::degree(p) <= 0) {
    double c = p.empty() ? 0.0 : p[0];
    out.leading = c;
    if (c > 0) {
      out.is_weight = true;
      out.translation_stable = true;
    } else {
      out.reason = RejectReason::NegativeValues;
    }
    return out;
  }

  if (out.degree % 2 != 0) {
    out.reason = RejectReason::OddDegree;
    return out;
  }
  if (poly::distinct_real_roots(p) > 0) {
    out.reason = RejectReason::RealRoot;
    return out;
  }
  if (p.back() < 0) {
    // Even degree, no real roots, negative at infinity: negative everywhere.
    out.reason = RejectReason::NegativeValues;
    return out;
  }

  out.leading = p.back();
  auto clusters = cluster_roots(poly::all_roots(p));
  for (auto& cl : clusters) cl.center = refine_root(p, cl.center, cl.size);

  std::vector<QuadraticFactor> factors;
  int half_degree_sum = 0;
  for (const auto& cl : clusters) {
    if (cl.center.imag() <= 0) continue;  // keep one representative per conjugate pair
    QuadraticFactor f;
    f.a = -2.0 * cl.center.real();
    f.b = std::norm(cl.center);
    f.multiplicity = cl.size;
    factors.push_back(f);
    half_degree_sum += cl.size;
  }
  if (2 * half_degree_sum != out.degree)
    throw EngineError("polynomial factorization lost roots (conjugate pairing failed)");
  std::sort(factors.begin(), factors.end(), [](const auto& x, const auto& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  out.factors = std::move(factors);

  // Verify the factored form against the input on a grid before accepting.
  PolyClassification candidate = out;
  candidate.is_weight = true;
  poly::Poly rec = reconstruct(candidate);
  double radius = 1.0;
  for (const auto& cl : clusters) radius = std::max(radius, std::abs(cl.center));
  radius = 2.0 * radius;
  for (int i = 0; i < 32; ++i) {
    double x = -radius + (2.0 * radius) * static_cast<double>(i) / 31.0;
    double want = poly::eval(p, x);
    double got = poly::eval(rec, x);
    if (std::fabs(want - got) > 1e-9 * std::fabs(want))
      throw EngineError("polynomial factorization failed verification at x=" + std::to_string(x));
  }

  out.is_weight = true;
  out.translation_stable = true;
  return out;
}

}  // namespace dwpap
