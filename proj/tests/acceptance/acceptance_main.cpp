// One-shot acceptance gate: each criterion prints exactly one line,
//   criterion N (<name>): pass
// or
//   [FAIL] criterion N (<name>): <what broke>
// The process exit code is the number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dwpap/bohr.hpp"
#include "dwpap/ergodic.hpp"
#include "dwpap/poly_classify.hpp"
#include "dwpap/transforms.hpp"
#include "dwpap/trig_spec.hpp"
#include "dwpap/weight.hpp"
#include "dwpap/weight_classes.hpp"
#include "instances.hpp"

using namespace dwpap;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  if (ok) {
    std::cout << "criterion " << number << " (" << name << "): pass\n";
  } else {
    std::cout << "[FAIL] criterion " << number << " (" << name << "): " << detail << "\n";
    ++failures;
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- criterion 1
void criterion_running_example() {
  auto start = std::chrono::steady_clock::now();
  std::ostringstream bad;

  Weight mu = make_weight("exp(abs(x))");
  Weight nu = make_weight("1+abs(x)");
  Schedule s;

  ThetaResult th = theta(mu, nu, s);
  double theta_est = th.value.value_or(std::abs(th.curve.r.back()[0]));
  if (!(theta_est <= 1e-3)) bad << "weight-ratio estimate " << theta_est << " above 1e-3; ";

  TrigPoly f = parse_trig_text("1 + cos(1*t) + sin(sqrt2*t)");
  MeanResult m = dw_mean(f, mu, nu, s);
  double mean_mag = std::abs(m.mean_estimate[0]);
  if (!(mean_mag <= 1e-3)) bad << "weighted mean magnitude " << mean_mag << " above 1e-3; ";

  // log-domain cumulative against the exact normalizer 2(e^T - 1)
  for (double T : {1.0, 5.0, 20.0, 100.0, 500.0}) {
    double want = 2.0 * (std::exp(T) - 1.0);
    double got = mu.mu_qt(T);
    if (!(std::abs(got - want) <= 1e-8 * want)) {
      bad << "normalizer at T=" << T << " off by " << std::abs(got - want) / want << " rel; ";
      break;
    }
  }
  double big_log = mu.log_mu_qt(800.0);
  double want_log = std::log(2.0) + 800.0 + std::log1p(-std::exp(-800.0));
  if (!(std::abs(big_log - want_log) <= 1e-8))
    bad << "log normalizer at T=800 off by " << std::abs(big_log - want_log) << "; ";

  double elapsed = seconds_since(start);
  if (!(elapsed < 5.0)) bad << "took " << elapsed << " s (budget 5 s); ";

  report(1, "running example", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 2
TrigPoly random_trig(std::mt19937& rng) {
  std::uniform_int_distribution<int> extra(1, 5);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> freq(-5.0, 5.0);
  std::vector<TrigPoly::Term> terms;
  terms.push_back({CVec{std::complex<double>(coef(rng), coef(rng))}, 0.0});
  int n = extra(rng);
  std::vector<double> used{0.0};
  while (static_cast<int>(terms.size()) < 1 + n) {
    double lambda = freq(rng);
    bool clash = false;  // keep frequencies separated so finite-T cross terms decay
    for (double u : used)
      if (std::abs(lambda - u) < 0.3) clash = true;
    if (clash) continue;
    used.push_back(lambda);
    terms.push_back({CVec{std::complex<double>(coef(rng), coef(rng))}, lambda});
  }
  return TrigPoly(1, terms);
}

void criterion_mean_factorization() {
  auto start = std::chrono::steady_clock::now();
  std::ostringstream bad;
  std::mt19937 rng(424242);
  Schedule s;
  Weight one = make_weight("1");
  Weight mu_poly = make_weight("1+x^2");
  Weight nu_poly = make_weight("2+x^2");

  for (int i = 0; i < 10 && bad.str().empty(); ++i) {
    TrigPoly p = random_trig(rng);
    MeanResult unit_pair = dw_mean(p, one, one, s);
    if (!(unit_pair.residual <= 5e-3))
      bad << "poly " << i << " unit pair residual " << unit_pair.residual << "; ";
    MeanResult poly_pair = dw_mean(p, mu_poly, nu_poly, s);
    if (!(poly_pair.residual <= 5e-3))
      bad << "poly " << i << " polynomial pair residual " << poly_pair.residual << "; ";
  }

  double elapsed = seconds_since(start);
  if (!(elapsed < 30.0)) bad << "took " << elapsed << " s (budget 30 s); ";

  report(2, "mean factorization on random inputs", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_frequency_analysis() {
  std::ostringstream bad;
  TrigPoly p = parse_trig_text("1 + 2*cos(3*t) + 0.5*sin(sqrt2*t)");

  for (double lambda : p.frequencies()) {
    CVec want = p.coefficient(lambda);
    CVec got = bohr_transform(p, lambda);
    if (!(got[0] == want[0])) {
      bad << "stored coefficient at " << lambda << " not recovered exactly; ";
      break;
    }
  }
  CVec off_exact = bohr_transform(p, 2.2);
  if (!(off_exact[0] == std::complex<double>(0.0, 0.0)))
    bad << "exact transform nonzero off the spectrum; ";

  Schedule s;
  BohrCoefficient off = bohr_transform(make_handle(p), 1.3, s);
  if (!(off.curve.verdict.decay_exponent >= 0.8))
    bad << "off-spectrum fitted decay exponent " << -off.curve.verdict.decay_exponent
        << " above -0.8; ";

  report(3, "frequency analysis exactness", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 4
ExprPtr decimal_node(std::int64_t tenths) { return WeightExpr::constant(Decimal{tenths, -1}); }

ExprPtr quad_node(std::int64_t ai, std::int64_t bi) {
  ExprPtr x2 = WeightExpr::power(WeightExpr::var(), 2);
  ExprPtr ax = WeightExpr::product(decimal_node(ai), WeightExpr::var());
  return WeightExpr::sum(WeightExpr::sum(x2, ax), decimal_node(bi));
}

struct BuiltPoly {
  ExprPtr expr;
  int degree = 0;
  int factor_count = 0;
};

BuiltPoly build_positive_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_factors(1, 3);
  std::uniform_int_distribution<int> mult(1, 2);
  std::uniform_int_distribution<std::int64_t> lead(1, 50);
  BuiltPoly out;
  out.expr = WeightExpr::constant(Decimal{lead(rng), -1});
  std::vector<std::pair<std::int64_t, std::int64_t>> picked;
  int k = n_factors(rng);
  while (static_cast<int>(picked.size()) < k) {
    std::uniform_int_distribution<std::int64_t> bi_dist(5, 40);
    std::int64_t bi = bi_dist(rng);
    double b = static_cast<double>(bi) / 10.0;
    auto amax = static_cast<std::int64_t>(std::floor(10.0 * 2.0 * std::sqrt(b) * 0.9));
    std::uniform_int_distribution<std::int64_t> ai_dist(-amax, amax);
    std::int64_t ai = ai_dist(rng);
    bool clash = false;
    for (auto& q : picked)
      if (std::llabs(q.first - ai) + std::llabs(q.second - bi) < 4) clash = true;
    if (clash) continue;
    picked.emplace_back(ai, bi);
    int m = mult(rng);
    out.expr = WeightExpr::product(out.expr, WeightExpr::power(quad_node(ai, bi), m));
    out.degree += 2 * m;
    out.factor_count += m;
  }
  return out;
}

void criterion_polynomial_classification() {
  std::ostringstream bad;
  std::mt19937 rng(31415);
  std::uniform_int_distribution<std::int64_t> root(-30, 30);

  int accepted_ok = 0;
  for (int i = 0; i < 200; ++i) {
    BuiltPoly bp = build_positive_poly(rng);
    PolyClassification c = classify_polynomial(*bp.expr);
    int mult_sum = 0;
    for (const auto& f : c.factors) mult_sum += f.multiplicity;
    if (c.is_weight && c.degree == bp.degree && mult_sum == bp.factor_count) {
      ++accepted_ok;
    } else if (bad.str().empty()) {
      bad << "accepted poly " << i << ": is_weight=" << c.is_weight << " degree=" << c.degree
          << " (want " << bp.degree << ") factors=" << mult_sum << " (want " << bp.factor_count
          << "); ";
    }
  }
  if (accepted_ok != 200) bad << (200 - accepted_ok) << "/200 positive polynomials misjudged; ";

  int rejected_ok = 0;
  for (int i = 0; i < 200; ++i) {
    BuiltPoly bp = build_positive_poly(rng);
    ExprPtr expr;
    RejectReason want;
    switch (i % 3) {
      case 0:  // odd degree
        expr = WeightExpr::product(bp.expr,
                                   WeightExpr::sum(WeightExpr::var(), decimal_node(root(rng)),
                                                   true));
        want = RejectReason::OddDegree;
        break;
      case 1: {  // planted real roots, even degree
        ExprPtr l1 = WeightExpr::sum(WeightExpr::var(), decimal_node(root(rng)), true);
        ExprPtr l2 = WeightExpr::sum(WeightExpr::var(), decimal_node(root(rng)), true);
        expr = WeightExpr::product(bp.expr, WeightExpr::product(l1, l2));
        want = RejectReason::RealRoot;
        break;
      }
      default:  // globally negative
        expr = WeightExpr::product(WeightExpr::constant(Decimal{-1, 0}), bp.expr);
        want = RejectReason::NegativeValues;
        break;
    }
    PolyClassification c = classify_polynomial(*expr);
    if (!c.is_weight && c.reason == want) {
      ++rejected_ok;
    } else if (bad.str().empty()) {
      bad << "defective poly " << i << ": reason '" << to_string(c.reason) << "' want '"
          << to_string(want) << "'; ";
    }
  }
  if (rejected_ok != 200) bad << (200 - rejected_ok) << "/200 defective polynomials misjudged; ";

  report(4, "polynomial weight classification", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion_class_closures() {
  std::ostringstream bad;
  const std::array<const char*, 5> strong_catalog = {"1", "1+x^2", "1+abs(x)", "exp(abs(x))",
                                                     "(1+abs(x))^2"};
  for (const char* text : strong_catalog) {
    ClassReport ws = check_w_s(make_weight(text));
    if (ws.verdict != Verdict::Member) {
      bad << "strong-class catalog weight " << text << ": " << to_string(ws.verdict) << "; ";
      continue;
    }
    ClassReport wi = check_w_inv(make_weight(text));
    if (wi.verdict != Verdict::Member)
      bad << text << " in the strong class but not translation-controlled; ";
  }

  const std::array<std::pair<const char*, const char*>, 3> product_pairs = {
      {{"1+x^2", "2+x^2"}, {"1+abs(x)", "2+abs(x)"}, {"1", "1+x^2"}}};
  for (const auto& [a, b] : product_pairs) {
    Weight prod = combine_product(make_weight(a), make_weight(b));
    if (check_w_s(prod).verdict != Verdict::Member)
      bad << "product (" << a << ")*(" << b << ") left the strong class; ";
  }

  const std::array<std::pair<const char*, const char*>, 2> sum_pairs = {
      {{"1+x^2", "2+x^2"}, {"1+abs(x)", "2+abs(x)"}}};
  for (const auto& [a, b] : sum_pairs) {
    Weight mu = make_weight(a), nu = make_weight(b);
    if (equivalent(mu, nu).verdict != Verdict::Member) {
      bad << a << " and " << b << " not judged equivalent; ";
      continue;
    }
    if (check_w_inv(combine_sum(mu, nu)).verdict != Verdict::Member)
      bad << "sum " << a << " + " << b << " left the translation-controlled class; ";
  }

  report(5, "class closure instances", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_membership_oracle() {
  std::ostringstream bad;
  Schedule s;
  Weight one = make_weight("1");
  FunctionHandle lor = catalog_handle("lorentz");

  ErgodicCurve plain = membership_pap0(lor, one, one, s);
  for (std::size_t j = 0; j < plain.t.size(); ++j) {
    double want = std::atan(plain.t[j]) / plain.t[j];
    if (!(std::abs(plain.r[j][0].real() - want) <= 1e-6)) {
      bad << "plain average off by " << std::abs(plain.r[j][0].real() - want) << " at T="
          << plain.t[j] << "; ";
      break;
    }
  }

  ErgodicCurve att = ergodic_curve(lor, one, one, s, AverageMode::Norm, KappaParam(0.5));
  for (std::size_t j = 0; j < att.t.size(); ++j) {
    double want = 2.0 * std::atan(att.t[j]) / std::sqrt(2.0 * att.t[j]);
    if (!(std::abs(att.r[j][0].real() - want) <= 1e-6)) {
      bad << "attenuated average off by " << std::abs(att.r[j][0].real() - want) << " at T="
          << att.t[j] << "; ";
      break;
    }
  }

  report(6, "membership curve closed forms", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion_convolution_oracle() {
  std::ostringstream bad;
  Schedule s;
  TrigPoly cosine = parse_trig_text("cos(1*t)");
  FunctionHandle h = make_handle(cosine);
  Kernel k = Kernel::laplace(1.0);

  for (int i = 0; i < 20; ++i) {
    double t = -9.5 + i;
    CVec got = convolve_value(h, k, t);
    double want = std::cos(t) / 2.0;
    if (!(std::abs(got[0].real() - want) <= 1e-6 && std::abs(got[0].imag()) <= 1e-6)) {
      bad << "cosine convolution off by " << std::abs(got[0].real() - want) << " at t=" << t
          << "; ";
      break;
    }
  }

  Weight one = make_weight("1");
  ConvMembershipResult r = conv_membership(catalog_handle("lorentz"), Kernel::gauss(1.0), one,
                                           one, s);
  if (!r.preconditions_ok) bad << "convolution membership preconditions failed; ";
  if (r.curve.verdict.kind != LimitKind::ConvergesToZero)
    bad << "convolved curve verdict " << to_string(r.curve.verdict.kind) << "; ";

  report(7, "convolution closed form and membership", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 8
void criterion_decomposition_recovery() {
  std::ostringstream bad;
  Schedule s;
  FunctionHandle f = parse_function_spec("2+3*cos(1*t) ++ lorentz");
  SpectrumSet rec = decomposition_recovery(f, {0.0, 1.0}, s);
  const std::array<std::complex<double>, 2> want = {{{2.0, 0.0}, {1.5, 0.0}}};
  if (rec.points.size() != 2) {
    bad << "expected 2 recovered points, got " << rec.points.size() << "; ";
  } else {
    for (std::size_t j = 0; j < 2; ++j) {
      double err = std::abs(rec.points[j].value[0] - want[j]);
      if (!(err <= 5e-3)) {
        bad << "coefficient at frequency " << rec.points[j].lambda << " off by " << err << "; ";
      }
    }
  }
  report(8, "decomposition recovery", bad.str().empty(), bad.str());
}

// ---------------------------------------------------------------- criterion 9
void criterion_composition_bound() {
  std::ostringstream bad;
  Schedule s;
  for (const CompositionInstance& inst : composition_instances()) {
    CompositionResult r = composition_check(inst.F, inst.h1, inst.h2, make_weight(inst.mu_text),
                                            make_weight(inst.nu_text), s, 12345);
    if (!r.lipschitz_ok) {
      bad << inst.name << ": sampled Lipschitz violation; ";
      continue;
    }
    if (!r.bound_ok || !(r.slack <= 1.1))
      bad << inst.name << ": slack " << r.slack << " (bound " << r.bound_value << "); ";
  }
  report(9, "composition remainder bound", bad.str().empty(), bad.str());
}

// --------------------------------------------------------------- criterion 10
std::string run_cli(const std::string& args, int& exit_code) {
  std::string cmd = std::string(DWPAP_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void criterion_suite_determinism() {
  std::ostringstream bad;
  int rc_a = 0, rc_b = 0;
  std::string a = run_cli("verify-suite", rc_a);
  std::string b = run_cli("verify-suite", rc_b);
  if (rc_a != 0 || rc_b != 0) bad << "suite runs exited " << rc_a << " and " << rc_b << "; ";
  if (a.empty()) bad << "suite produced no output; ";
  if (a != b) bad << "two identically configured runs differ; ";
  report(10, "verification suite determinism", bad.str().empty(), bad.str());
}

}  // namespace

int main() {
  criterion_running_example();
  criterion_mean_factorization();
  criterion_frequency_analysis();
  criterion_polynomial_classification();
  criterion_class_closures();
  criterion_membership_oracle();
  criterion_convolution_oracle();
  criterion_decomposition_recovery();
  criterion_composition_bound();
  criterion_suite_determinism();

  std::cout << (10 - failures) << "/10 criteria passed\n";
  return failures;
}
