#include <doctest.h>

#include <cmath>
#include <string>

#include "dwpap/weight.hpp"
#include "dwpap/weight_classes.hpp"

using namespace dwpap;

namespace {

bool has_inclusion_evidence(const ClassReport& r) {
  for (const Evidence& e : r.evidence)
    if (e.name == "inclusion_w_inv" && e.value == 1.0) return true;
  return false;
}

}  // namespace

TEST_CASE("base class admits the catalog and rejects degenerate weights") {
  for (const char* text : {"1", "1+x^2", "1+abs(x)", "exp(abs(x))"})
    CHECK(check_w(make_weight(text)).verdict == Verdict::Member);
  // zero infimum at the origin
  CHECK(check_w(make_weight("x^2")).verdict == Verdict::NonMember);
  // decaying weight: infimum collapses and the cumulative stays bounded
  CHECK(check_w(make_weight("exp(0-abs(x))")).verdict == Verdict::NonMember);
}

TEST_CASE("bounded subclass separates bounded from growing weights") {
  CHECK(check_v(make_weight("2")).verdict == Verdict::Member);
  CHECK(check_v(make_weight("1+exp(0-abs(x))")).verdict == Verdict::Member);
  CHECK(check_v(make_weight("1+x^2")).verdict == Verdict::NonMember);
  CHECK(check_v(make_weight("exp(abs(x))")).verdict == Verdict::NonMember);
}

TEST_CASE("translation-controlled class membership") {
  for (const char* text : {"1", "1+x^2", "1+abs(x)", "exp(abs(x))", "(1+abs(x))^2"}) {
    CAPTURE(text);
    CHECK(check_w_inv(make_weight(text)).verdict == Verdict::Member);
  }
  // pointwise translation ratio e^{2 tau x + tau^2} runs away
  CHECK(check_w_inv(make_weight("exp(x^2)")).verdict == Verdict::NonMember);
}

TEST_CASE("strong class membership implies the translation-controlled class") {
  for (const char* text : {"1+x^2", "1+abs(x)", "exp(abs(x))"}) {
    CAPTURE(text);
    ClassReport r = check_w_s(make_weight(text));
    CHECK(r.verdict == Verdict::Member);
    CHECK(has_inclusion_evidence(r));
    CHECK(check_w_inv(make_weight(text)).verdict == Verdict::Member);
  }
  CHECK(check_w_s(make_weight("exp(x^2)")).verdict == Verdict::NonMember);
}

TEST_CASE("equivalence is reflexive and symmetric on the catalog") {
  for (const char* text : {"1", "1+x^2", "exp(abs(x))"}) {
    CAPTURE(text);
    Weight w = make_weight(text);
    CHECK(equivalent(w, w).verdict == Verdict::Member);
  }
  struct Pair {
    const char* a;
    const char* b;
    Verdict want;
  };
  const Pair pairs[] = {{"1+x^2", "2+x^2", Verdict::Member},
                        {"1+abs(x)", "2+abs(x)", Verdict::Member},
                        {"1", "1+x^2", Verdict::NonMember}};
  for (const Pair& p : pairs) {
    CAPTURE(p.a);
    CAPTURE(p.b);
    Verdict ab = equivalent(make_weight(p.a), make_weight(p.b)).verdict;
    Verdict ba = equivalent(make_weight(p.b), make_weight(p.a)).verdict;
    CHECK(ab == p.want);
    CHECK(ab == ba);
  }
}

TEST_CASE("closure instances: product stays strong, sum stays translation-controlled") {
  Weight p = combine_product(make_weight("1+x^2"), make_weight("2+x^2"));
  CHECK(check_w_s(p).verdict == Verdict::Member);
  Weight sum_poly = combine_sum(make_weight("1+x^2"), make_weight("2+x^2"));
  CHECK(check_w_inv(sum_poly).verdict == Verdict::Member);
  Weight sum_abs = combine_sum(make_weight("1+abs(x)"), make_weight("2+abs(x)"));
  CHECK(check_w_inv(sum_abs).verdict == Verdict::Member);
}

TEST_CASE("cumulative translation ratios against closed-form limits") {
  Schedule s;
  struct Case {
    const char* text;
    double shift;
    double power;
    LimitKind want_kind;
    double want_limit;
    double tol;  // absolute tolerance on the extrapolated limit
  };
  const Case cases[] = {
      {"1", 3.0, 1.0, LimitKind::ConvergesTo, 1.0, 1e-3},
      {"1+x^2", 3.0, 1.0, LimitKind::ConvergesTo, 1.0, 1e-3},
      {"exp(abs(x))", 3.0, 1.0, LimitKind::ConvergesTo, std::exp(3.0), 2e-2},
      {"exp(abs(x))", 1.0, 1.0, LimitKind::ConvergesTo, std::exp(1.0), 1e-3},
      {"exp(abs(x))", -1.0, 1.0, LimitKind::ConvergesTo, std::exp(-1.0), 1e-3},
      {"1", 3.0, 0.5, LimitKind::ConvergesToZero, 0.0, 0.0},
  };
  for (const Case& c : cases) {
    CAPTURE(c.text);
    CAPTURE(c.shift);
    CumulativeRatioLimit r = cumulative_ratio_limit(make_weight(c.text), c.shift, c.power, s);
    CHECK(r.kind == c.want_kind);
    if (c.want_kind == LimitKind::ConvergesTo)
      CHECK(std::abs(r.limit - c.want_limit) <= c.tol);
  }
}

TEST_CASE("translation reports record every probed offset") {
  ClassReport r = check_w_inv(make_weight("exp(abs(x))"));
  CHECK(r.limits.size() == 6);  // default tau probes
  for (const auto& [tau, lim] : r.limits) {
    CAPTURE(tau);
    CHECK(lim.cumulative_kind != LimitKind::Undecided);
    CHECK(lim.pointwise_kind != LimitKind::Undecided);
  }
}
