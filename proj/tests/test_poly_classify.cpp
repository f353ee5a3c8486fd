#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dwpap/poly.hpp"
#include "dwpap/poly_classify.hpp"
#include "dwpap/weight_expr.hpp"

using namespace dwpap;

namespace {

ExprPtr decimal_node(std::int64_t tenths) {
  return WeightExpr::constant(Decimal{tenths, -1});
}

// x^2 + a x + b with a = ai/10, b = bi/10.
ExprPtr quad_node(std::int64_t ai, std::int64_t bi) {
  ExprPtr x2 = WeightExpr::power(WeightExpr::var(), 2);
  ExprPtr ax = WeightExpr::product(decimal_node(ai), WeightExpr::var());
  return WeightExpr::sum(WeightExpr::sum(x2, ax), decimal_node(bi));
}

struct RandomWeightPoly {
  ExprPtr expr;
  int degree = 0;
  int factor_count = 0;  // sum of multiplicities
};

RandomWeightPoly random_weight_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_factors(1, 3);
  std::uniform_int_distribution<int> mult(1, 2);
  std::uniform_int_distribution<std::int64_t> lead(1, 50);
  int k = n_factors(rng);
  std::vector<std::pair<std::int64_t, std::int64_t>> picked;
  RandomWeightPoly out;
  out.expr = WeightExpr::constant(Decimal{lead(rng), -1});
  while (static_cast<int>(picked.size()) < k) {
    std::uniform_int_distribution<std::int64_t> bi_dist(5, 40);
    std::int64_t bi = bi_dist(rng);
    double b = static_cast<double>(bi) / 10.0;
    auto amax = static_cast<std::int64_t>(std::floor(10.0 * 2.0 * std::sqrt(b) * 0.9));
    std::uniform_int_distribution<std::int64_t> ai_dist(-amax, amax);
    std::int64_t ai = ai_dist(rng);
    bool clash = false;  // keep the conjugate root pairs clearly separated
    for (auto& p : picked)
      if (std::llabs(p.first - ai) + std::llabs(p.second - bi) < 4) clash = true;
    if (clash) continue;
    picked.emplace_back(ai, bi);
    int m = mult(rng);
    out.expr = WeightExpr::product(out.expr, WeightExpr::power(quad_node(ai, bi), m));
    out.degree += 2 * m;
    out.factor_count += m;
  }
  return out;
}

int multiplicity_sum(const PolyClassification& c) {
  int s = 0;
  for (const auto& f : c.factors) s += f.multiplicity;
  return s;
}

}  // namespace

TEST_CASE("catalog polynomial weights classify with expected factorizations") {
  PolyClassification c = classify_polynomial(*parse_weight("1+x^2"));
  CHECK(c.is_polynomial);
  CHECK(c.is_weight);
  CHECK(c.degree == 2);
  CHECK(c.leading == doctest::Approx(1.0));
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].a == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(c.factors[0].b == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.factors[0].multiplicity == 1);
  CHECK(c.translation_stable);

  PolyClassification sq = classify_polynomial(*parse_weight("(1+x^2)^2"));
  CHECK(sq.is_weight);
  CHECK(sq.degree == 4);
  CHECK(multiplicity_sum(sq) == 2);

  PolyClassification cst = classify_polynomial(*parse_weight("3"));
  CHECK(cst.is_weight);
  CHECK(cst.degree == 0);
  CHECK(cst.factors.empty());
}

TEST_CASE("rejections carry the discriminating reason") {
  CHECK(classify_polynomial(*parse_weight("x^3+1")).reason == RejectReason::OddDegree);
  CHECK(classify_polynomial(*parse_weight("x^2-1")).reason == RejectReason::RealRoot);
  CHECK(classify_polynomial(*parse_weight("0-1-x^2")).reason == RejectReason::NegativeValues);
  CHECK(classify_polynomial(*parse_weight("exp(abs(x))")).reason == RejectReason::NotPolynomial);
  CHECK(classify_polynomial(*parse_weight("1+abs(x)")).reason == RejectReason::NotPolynomial);
  CHECK(classify_polynomial(*parse_weight("0")).reason == RejectReason::NegativeValues);
}

TEST_CASE("degree cap raises instead of expanding unboundedly") {
  CHECK_THROWS_AS(classify_polynomial(*parse_weight("(1+x^2)^33")), std::domain_error);
}

TEST_CASE("random positive even polynomials: degree, factor count, reconstruction") {
  std::mt19937 rng(911);
  for (int i = 0; i < 60; ++i) {
    RandomWeightPoly rp = random_weight_poly(rng);
    PolyClassification c = classify_polynomial(*rp.expr);
    CAPTURE(to_text(*rp.expr));
    REQUIRE(c.is_polynomial);
    REQUIRE(c.is_weight);
    CHECK(c.degree == rp.degree);
    CHECK(multiplicity_sum(c) == rp.factor_count);

    // factored form reproduces the input on a grid
    poly::Poly rec = reconstruct(c);
    REQUIRE(static_cast<int>(rec.size()) == c.degree + 1);
    for (int g = 0; g <= 40; ++g) {
      double x = -10.0 + 0.5 * g;
      double want = eval_expr(*rp.expr, x);
      CHECK(std::abs(poly::eval(rec, x) - want) <= 1e-9 * std::max(std::abs(want), 1.0));
    }

    // positivity on a dense grid
    double min_val = 1e300;
    for (int g = 0; g <= 2000; ++g) {
      double x = -100.0 + 0.1 * g;
      min_val = std::min(min_val, eval_expr(*rp.expr, x));
    }
    CHECK(min_val > 0.0);
  }
}

TEST_CASE("random polynomials with planted defects reject for the planted reason") {
  std::mt19937 rng(912);
  std::uniform_int_distribution<std::int64_t> root(-30, 30);
  for (int i = 0; i < 40; ++i) {
    RandomWeightPoly rp = random_weight_poly(rng);
    // odd degree: multiply by a single linear factor
    ExprPtr lin = WeightExpr::sum(WeightExpr::var(), decimal_node(root(rng)), true);
    PolyClassification odd = classify_polynomial(*WeightExpr::product(rp.expr, lin));
    CHECK(odd.reason == RejectReason::OddDegree);
    CHECK_FALSE(odd.is_weight);

    // even degree with a planted real root pair
    ExprPtr lin2 = WeightExpr::sum(WeightExpr::var(), decimal_node(root(rng)), true);
    ExprPtr with_roots = WeightExpr::product(rp.expr, WeightExpr::product(lin, lin2));
    PolyClassification rooted = classify_polynomial(*with_roots);
    CHECK(rooted.reason == RejectReason::RealRoot);

    // globally negative: flip the sign
    ExprPtr neg = WeightExpr::product(WeightExpr::constant(Decimal{-1, 0}), rp.expr);
    PolyClassification negative = classify_polynomial(*neg);
    CHECK(negative.reason == RejectReason::NegativeValues);
  }
}

TEST_CASE("reconstruct multiplies factors back together") {
  PolyClassification c;
  c.leading = 2.0;
  c.factors = {{0.0, 1.0, 1}, {1.0, 2.0, 1}};
  poly::Poly p = reconstruct(c);
  // 2 (x^2+1)(x^2+x+2) = 2x^4 + 2x^3 + 6x^2 + 2x + 4
  REQUIRE(p.size() == 5);
  CHECK(p[4] == doctest::Approx(2.0));
  CHECK(p[3] == doctest::Approx(2.0));
  CHECK(p[2] == doctest::Approx(6.0));
  CHECK(p[1] == doctest::Approx(2.0));
  CHECK(p[0] == doctest::Approx(4.0));
}
