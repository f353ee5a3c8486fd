#include "dwpap/ergodic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dwpap/errors.hpp"
#include "dwpap/quadrature.hpp"

namespace dwpap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b, lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

double norm2(const CVec& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

// Quadrature step respecting the oscillation bound: at most an eighth of the
// fastest period present in the integrand.
double step_for(double osc_bound, const Schedule& s) {
  if (osc_bound <= 0) return s.max_step;
  return std::min(s.max_step, std::numbers::pi / (4.0 * osc_bound));
}

}  // namespace

KappaParam::KappaParam(double k) : k_(k) {
  if (!(k > 0.0) || !(k < 1.0))
    throw std::invalid_argument("kappa must lie strictly between 0 and 1");
}

ErgodicCurve ergodic_curve(const FunctionHandle& f, const Weight& mu, const Weight& nu,
                           const Schedule& s, AverageMode mode,
                           std::optional<KappaParam> kappa) {
  s.validate();
  if (!f.eval) throw std::invalid_argument("ergodic_curve: empty function handle");
  const std::vector<double> ts = s.points();
  const int dim = mode == AverageMode::Norm ? 1 : f.dim;

  QuadOptions opt;
  opt.abs_tol = s.quad_tol;
  opt.rel_tol = s.quad_tol;
  opt.max_step = step_for(f.osc_bound, s);
  opt.noise_floor = f.eval_noise;

  // Denominator ladder, always in log scale.
  std::vector<double> log_d = mu.log_mu_qt_ladder(ts, s.quad_tol);
  for (std::size_t j = 1; j < log_d.size(); ++j)
    if (!(log_d[j] > log_d[j - 1]))
      throw EngineError("ergodic_curve: cumulative weight not strictly increasing");
  const double k = kappa ? kappa->value() : 1.0;

  ErgodicCurve curve;
  curve.dim = dim;
  curve.t = ts;
  curve.r.reserve(ts.size());

  const bool log_numerator = mode == AverageMode::Norm && nu.exp_family();

  if (log_numerator) {
    auto log_g = [&](double t) {
      double n = norm2(f.eval(t));
      return (n > 0 ? std::log(n) : kNegInf) + nu.log_eval(t);
    };
    double acc = kNegInf, prev = 0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      double T = ts[j];
      if (j == 0)
        acc = log_add(integrate_log(log_g, -T, 0.0, opt), integrate_log(log_g, 0.0, T, opt));
      else
        acc = log_add(acc, log_add(integrate_log(log_g, -T, -prev, opt),
                                   integrate_log(log_g, prev, T, opt)));
      prev = T;
      double r = std::exp(acc - k * log_d[j]);
      if (!std::isfinite(r))
        throw EngineError("ergodic_curve: non-finite average at T=" + std::to_string(T));
      curve.r.push_back(CVec{std::complex<double>(r, 0.0)});
    }
  } else if (mode == AverageMode::Norm) {
    auto g = [&](double t) { return norm2(f.eval(t)) * nu.eval(t); };
    double acc = 0, prev = 0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      double T = ts[j];
      if (j == 0)
        acc = integrate(g, -T, 0.0, opt) + integrate(g, 0.0, T, opt);
      else
        acc += integrate(g, -T, -prev, opt) + integrate(g, prev, T, opt);
      prev = T;
      double r = acc * std::exp(-k * log_d[j]);
      if (!std::isfinite(r))
        throw EngineError("ergodic_curve: non-finite average at T=" + std::to_string(T));
      curve.r.push_back(CVec{std::complex<double>(r, 0.0)});
    }
  } else {
    // Raw mode: coordinate-wise complex shell sums.
    CVec acc(dim, 0.0);
    double prev = 0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      double T = ts[j];
      for (int c = 0; c < dim; ++c) {
        auto g = [&](double t) { return f.eval(t)[c] * nu.eval(t); };
        if (j == 0)
          acc[c] = integrate_c(g, -T, 0.0, opt) + integrate_c(g, 0.0, T, opt);
        else
          acc[c] += integrate_c(g, -T, -prev, opt) + integrate_c(g, prev, T, opt);
      }
      prev = T;
      double scale = std::exp(-k * log_d[j]);
      CVec r(dim);
      for (int c = 0; c < dim; ++c) {
        r[c] = acc[c] * scale;
        if (!std::isfinite(std::abs(r[c])))
          throw EngineError("ergodic_curve: non-finite average at T=" + std::to_string(T));
      }
      curve.r.push_back(std::move(r));
    }
  }

  std::ostringstream label;
  label << (mode == AverageMode::Norm ? "norm_average" : "raw_average");
  if (kappa) label << "_kappa";
  label << "[f=" << f.label << ",mu=" << mu.text() << ",nu=" << nu.text() << "]";
  curve.label = label.str();
  curve.verdict = judge_limit(curve.t, curve.r, s);
  return curve;
}

ThetaResult theta(const Weight& mu, const Weight& nu, const Schedule& s) {
  s.validate();
  const std::vector<double> ts = s.points();
  std::vector<double> log_mu = mu.log_mu_qt_ladder(ts, s.quad_tol);
  std::vector<double> log_nu = nu.log_mu_qt_ladder(ts, s.quad_tol);

  ThetaResult out;
  out.curve.dim = 1;
  out.curve.t = ts;
  out.curve.label = "theta_ratio[mu=" + mu.text() + ",nu=" + nu.text() + "]";
  for (std::size_t j = 0; j < ts.size(); ++j) {
    double r = std::exp(log_nu[j] - log_mu[j]);
    out.curve.r.push_back(CVec{std::complex<double>(r, 0.0)});
  }
  out.curve.verdict = judge_limit(out.curve.t, out.curve.r, s);
  if (out.curve.verdict.kind == LimitKind::ConvergesTo)
    out.value = out.curve.verdict.estimate[0].real();
  else if (out.curve.verdict.kind == LimitKind::ConvergesToZero)
    out.value = 0.0;
  return out;
}

OscillationAverage oscillation_average(const Weight& mu, const Weight& nu, double lambda, const Schedule& s) {
  FunctionHandle osc;
  osc.eval = [lambda](double t) { return CVec{std::polar(1.0, lambda * t)}; };
  osc.dim = 1;
  osc.osc_bound = std::fabs(lambda);
  osc.sup_bound = 1.0;
  {
    std::ostringstream l;
    l << "e^(i*" << lambda << "*t)";
    osc.label = l.str();
  }
  ErgodicCurve raw = ergodic_curve(osc, mu, nu, s, AverageMode::Raw);

  OscillationAverage out;
  out.lambda = lambda;
  out.curve.dim = 1;
  out.curve.t = raw.t;
  out.curve.label = "oscillation_average[lambda=" + std::to_string(lambda) + ",mu=" + mu.text() +
                    ",nu=" + nu.text() + "]";
  for (const auto& v : raw.r)
    out.curve.r.push_back(CVec{std::complex<double>(norm2(v), 0.0)});
  out.curve.verdict = judge_limit(out.curve.t, out.curve.r, s);
  return out;
}

MeanResult dw_mean(const FunctionHandle& f, const Weight& mu, const Weight& nu,
                   const Schedule& s) {
  MeanResult out;
  out.curve = ergodic_curve(f, mu, nu, s, AverageMode::Raw);
  out.mean_estimate = out.curve.verdict.estimate;
  out.classical_mean = CVec(f.dim, 0.0);
  return out;
}

MeanResult dw_mean(const TrigPoly& p, const Weight& mu, const Weight& nu, const Schedule& s) {
  MeanResult out = dw_mean(make_handle(p), mu, nu, s);
  out.classical_mean = p.mean();
  ThetaResult th = theta(mu, nu, s);
  out.theta_curve = th.curve;
  out.theta_value = th.value;
  if (th.value) {
    double r2 = 0;
    for (int k = 0; k < p.dim(); ++k)
      r2 += std::norm(out.mean_estimate[k] - *th.value * out.classical_mean[k]);
    out.residual = std::sqrt(r2);
  }
  return out;
}

ErgodicCurve membership_pap0(const FunctionHandle& f, const Weight& mu, const Weight& nu,
                             const Schedule& s, std::optional<KappaParam> kappa) {
  return ergodic_curve(f, mu, nu, s, AverageMode::Norm, kappa);
}

MeanFactorizationCheck verify_mean_factorization(const TrigPoly& p, const Weight& mu, const Weight& nu,
                                     const Schedule& s) {
  MeanFactorizationCheck out;
  ThetaResult th = theta(mu, nu, s);
  if (!th.value) {
    out.skipped = true;
    out.skip_reason = "limit ratio of the cumulative weights is " +
                      to_string(th.curve.verdict.kind);
    out.result.theta_curve = th.curve;
    return out;
  }
  for (double lambda : p.frequencies()) {
    if (lambda == 0) continue;
    OscillationAverage avg = oscillation_average(mu, nu, lambda, s);
    bool ok = avg.passes();
    out.oscillation.push_back(std::move(avg));
    if (!ok) {
      out.skipped = true;
      std::ostringstream r;
      r << "cross-oscillation condition not satisfied at lambda=" << lambda << " ("
        << to_string(out.oscillation.back().curve.verdict.kind) << ")";
      out.skip_reason = r.str();
      return out;
    }
  }
  out.result = dw_mean(p, mu, nu, s);
  return out;
}

}  // namespace dwpap
