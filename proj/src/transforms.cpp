#include "dwpap/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dwpap/errors.hpp"
#include "dwpap/quadrature.hpp"

namespace dwpap {

namespace {

double norm2(const CVec& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

double final_r(const ErgodicCurve& c) {
  if (c.r.empty()) return 0;
  return norm2(c.r.back());
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Default shifts probed by the cumulative-ratio hypotheses.
const std::vector<double> kDefaultShifts{0.5, 1.0, 3.0};

}  // namespace

CVec convolve_value(const FunctionHandle& f, const Kernel& k, double t, double tol) {
  if (!f.eval) throw std::invalid_argument("convolve: empty function handle");
  if (!f.sup_bound)
    throw std::invalid_argument("convolve: input must declare a sup bound");
  if (!(tol > 0)) throw std::invalid_argument("convolve: tolerance must be positive");
  const double sup = *f.sup_bound;
  if (sup <= 0) return CVec(f.dim, 0.0);

  const double r = k.solve_radius(tol / sup);
  QuadOptions opt;
  opt.abs_tol = tol / 4;
  opt.rel_tol = tol / 4;
  opt.max_step = f.osc_bound > 0
                     ? std::min(0.25, std::numbers::pi / (4.0 * f.osc_bound))
                     : std::max(r / 16.0, 0.25);
  opt.noise_floor = f.eval_noise;

  CVec out(f.dim);
  for (int c = 0; c < f.dim; ++c) {
    auto g = [&](double s) { return k.eval(s) * f.eval(t - s)[c]; };
    out[c] = integrate_c(g, -r, 0.0, opt) + integrate_c(g, 0.0, r, opt);
  }
  return out;
}

FunctionHandle convolve(const FunctionHandle& f, const Kernel& k, double tol) {
  if (!f.sup_bound)
    throw std::invalid_argument("convolve: input must declare a sup bound");
  FunctionHandle h;
  h.eval = [f, k, tol](double t) { return convolve_value(f, k, t, tol); };
  h.dim = f.dim;
  h.osc_bound = f.osc_bound;
  h.sup_bound = *f.sup_bound * k.l1_bound();
  h.eval_noise = tol + f.eval_noise * k.l1_bound();
  h.label = k.label() + "*" + f.label;
  return h;
}

TrigPoly convolve_trig(const TrigPoly& p, const Kernel& k) {
  std::vector<TrigPoly::Term> terms;
  for (const auto& term : p.terms()) {
    std::complex<double> factor = k.fourier(term.freq);
    TrigPoly::Term t;
    t.freq = term.freq;
    t.coeff.reserve(term.coeff.size());
    for (const auto& c : term.coeff) t.coeff.push_back(c * factor);
    terms.push_back(std::move(t));
  }
  return TrigPoly(p.dim(), terms);
}

std::vector<double> small_horizon_probes() { return {0.01, 0.05, 0.1, 0.25, 0.5, 1.0}; }

namespace {

// Sorted union of the small horizons and the schedule points.
std::vector<double> sup_inf_grid(const Schedule& s) {
  std::vector<double> t = small_horizon_probes();
  for (double p : s.points()) t.push_back(p);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end(),
                      [](double a, double b) { return std::fabs(a - b) <= 1e-12 * (1 + b); }),
          t.end());
  return t;
}

}  // namespace

RatioSupCheck bounded_ratio_check(const Weight& mu, const Weight& nu, const Schedule& s) {
  s.validate();
  RatioSupCheck out;
  out.t = sup_inf_grid(s);
  out.sup_ratio = -std::numeric_limits<double>::infinity();
  for (double T : out.t) {
    double lr = nu.log_mu_qt(T, s.quad_tol) - mu.log_mu_qt(T, s.quad_tol);
    double r = std::exp(lr);
    out.ratio.push_back(r);
    if (r > out.sup_ratio) {
      out.sup_ratio = r;
      out.at_t = T;
    }
  }
  std::vector<double> tail_logs;
  for (double T : s.points()) tail_logs.push_back(nu.log_mu_qt(T, s.quad_tol) - mu.log_mu_qt(T, s.quad_tol));
  auto v = judge_log_sequence(tail_logs, s);
  out.tail_kind = v.kind;
  out.bounded =
      v.kind == LimitKind::ConvergesTo || v.kind == LimitKind::ConvergesToZero;
  return out;
}

WindowRatioCheck window_ratio_check(const Weight& mu, const std::vector<double>& shifts,
                                    const Schedule& s, std::optional<KappaParam> kappa) {
  s.validate();
  WindowRatioCheck out;
  if (kappa) out.kappa = kappa->value();
  double power = kappa ? kappa->value() : 1.0;
  out.finite = true;
  for (double shift : shifts) {
    double a = std::fabs(shift);
    out.shifts.push_back(a);
    out.per_shift.push_back(cumulative_ratio_limit(mu, a, power, s));
    const auto& lim = out.per_shift.back();
    if (lim.kind != LimitKind::ConvergesTo && lim.kind != LimitKind::ConvergesToZero)
      out.finite = false;
  }
  return out;
}

UniquenessCheck uniqueness_precondition(const Weight& mu, const Weight& nu, const Schedule& s,
                                        std::optional<KappaParam> kappa) {
  s.validate();
  UniquenessCheck out;
  if (kappa) out.kappa = kappa->value();
  double power = kappa ? kappa->value() : 1.0;
  out.t = sup_inf_grid(s);
  out.estimate = std::numeric_limits<double>::infinity();
  for (double T : out.t) {
    double lr = nu.log_mu_qt(T, s.quad_tol) - power * mu.log_mu_qt(T, s.quad_tol);
    double r = std::exp(lr);
    out.ratio.push_back(r);
    if (r < out.estimate) {
      out.estimate = r;
      out.at_t = T;
    }
  }
  out.positive = out.estimate > 1e-12;
  return out;
}

namespace {

PreconditionReport ratio_sup_report(const Weight& mu, const Weight& nu, const Schedule& s) {
  RatioSupCheck c = bounded_ratio_check(mu, nu, s);
  PreconditionReport r;
  r.name = "bounded_cumulative_ratio";
  r.pass = c.bounded;
  r.detail = "sup~" + fmt(c.sup_ratio) + " at T=" + fmt(c.at_t) +
             ", tail " + to_string(c.tail_kind);
  return r;
}

PreconditionReport nu_class_report(const Weight& nu, const Schedule& s) {
  ClassCheckConfig cfg;
  cfg.schedule = s;
  ClassReport rep = check_w_inv(nu, cfg);
  PreconditionReport r;
  r.name = "nu_translation_controlled";
  r.pass = rep.verdict == Verdict::Member;
  r.detail = to_string(rep.verdict);
  return r;
}

PreconditionReport window_ratio_report(const Weight& mu, const std::vector<double>& shifts,
                                       const Schedule& s) {
  WindowRatioCheck c = window_ratio_check(mu, shifts, s);
  PreconditionReport r;
  r.name = "window_growth_ratio";
  r.pass = c.finite;
  std::ostringstream d;
  for (std::size_t i = 0; i < c.per_shift.size(); ++i) {
    if (i) d << ", ";
    d << "shift " << c.shifts[i] << ": " << to_string(c.per_shift[i].kind);
    if (c.per_shift[i].kind == LimitKind::ConvergesTo) d << " " << c.per_shift[i].limit;
  }
  r.detail = d.str();
  return r;
}

void relax_slow_decay(ErgodicCurve* curve, const Schedule& s) {
  LimitVerdict& v = curve->verdict;
  if (v.kind == LimitKind::Undecided && v.final_magnitude <= 10.0 * s.zero_threshold &&
      v.decay_exponent > 0.5)
    v.kind = LimitKind::ConvergesToZero;
}

}  // namespace

ConvMembershipResult conv_membership(const FunctionHandle& f, const Kernel& k, const Weight& mu,
                                     const Weight& nu, const Schedule& s, bool slow_decay) {
  s.validate();
  ConvMembershipResult out;
  out.preconditions.push_back(ratio_sup_report(mu, nu, s));
  out.preconditions.push_back(nu_class_report(nu, s));
  out.preconditions.push_back(window_ratio_report(mu, kDefaultShifts, s));
  out.preconditions_ok =
      std::all_of(out.preconditions.begin(), out.preconditions.end(),
                  [](const PreconditionReport& p) { return p.pass; });

  out.curve = membership_pap0(convolve(f, k), mu, nu, s);
  if (slow_decay) relax_slow_decay(&out.curve, s);
  return out;
}

TranslationCheck translation_invariance_check(const FunctionHandle& phi, double shift,
                                              const Weight& mu, const Weight& nu,
                                              const Schedule& s) {
  s.validate();
  TranslationCheck out;
  out.original = membership_pap0(phi, mu, nu, s);
  PreconditionReport input;
  input.name = "input_membership";
  input.pass = out.original.verdict.kind == LimitKind::ConvergesToZero;
  input.detail = to_string(out.original.verdict.kind);
  out.preconditions.push_back(std::move(input));
  out.preconditions.push_back(nu_class_report(nu, s));
  out.preconditions.push_back(window_ratio_report(mu, {std::fabs(shift)}, s));
  out.preconditions_ok =
      std::all_of(out.preconditions.begin(), out.preconditions.end(),
                  [](const PreconditionReport& p) { return p.pass; });

  out.shifted = membership_pap0(shift_handle(phi, shift), mu, nu, s);
  return out;
}

SpectrumSet decomposition_recovery(const FunctionHandle& f, const std::vector<double>& lambda_grid,
                                   const Schedule& s) {
  s.validate();
  SpectrumSet set;
  set.threshold = 0;
  for (double lambda : lambda_grid) {
    BohrCoefficient c = bohr_transform(f, lambda, s);
    SpectrumPoint p;
    p.lambda = lambda;
    p.value = c.value;
    p.magnitude = norm2(c.value);
    set.points.push_back(std::move(p));
  }
  std::sort(set.points.begin(), set.points.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.lambda < b.lambda; });
  return set;
}

CompositionResult composition_check(const TwoVarFunction& F, const TrigPoly& h1,
                                    const FunctionHandle& h2, const Weight& mu, const Weight& nu,
                                    const Schedule& s, std::uint64_t seed) {
  s.validate();
  if (!F.f || !F.g || !F.phi)
    throw std::invalid_argument("composition_check: F must supply f, g, and phi evaluators");
  if (h1.dim() != F.u_dim || h2.dim != F.u_dim)
    throw std::invalid_argument("composition_check: inner dimension mismatch");

  CompositionResult out;

  // Sampled Lipschitz verification in the declared box.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(-F.probe_t_range, F.probe_t_range);
  std::uniform_real_distribution<double> ub(-F.probe_radius, F.probe_radius);
  out.lipschitz_ok = true;
  for (int trial = 0; trial < 2000; ++trial) {
    double t = ut(rng);
    CVec u(F.u_dim), v(F.u_dim);
    for (int i = 0; i < F.u_dim; ++i) {
      u[i] = ub(rng);
      v[i] = ub(rng);
    }
    double du = 0;
    for (int i = 0; i < F.u_dim; ++i) du += std::norm(u[i] - v[i]);
    du = std::sqrt(du);
    if (du < 1e-12) continue;
    CVec fu = F.f(t, u), fv = F.f(t, v);
    double dv = 0;
    for (int i = 0; i < F.out_dim; ++i) dv += std::norm(fu[i] - fv[i]);
    double q = std::sqrt(dv) / du;
    if (q > out.lipschitz_worst) out.lipschitz_worst = q;
    if (q > F.lipschitz * (1.0 + 1e-9)) {
      out.lipschitz_ok = false;
      out.witness_t = t;
      out.witness_u = u;
      out.witness_v = v;
      return out;
    }
  }

  // Membership curves for h2, the ergodic part along h1, and the remainder.
  out.h2_curve = membership_pap0(h2, mu, nu, s);
  out.h2_member = out.h2_curve.verdict.kind == LimitKind::ConvergesToZero;

  FunctionHandle phi_h1;
  phi_h1.eval = [phi = F.phi, h1](double t) { return phi(t, h1.eval(t)); };
  phi_h1.dim = F.out_dim;
  phi_h1.osc_bound = F.osc_bound + h1.max_frequency();
  phi_h1.label = "phi(t,h1(t))[" + F.label + "]";
  out.phi_curve = membership_pap0(phi_h1, mu, nu, s);

  FunctionHandle rem;
  rem.eval = [full_f = F.f, ap_g = F.g, h1, h2, od = F.out_dim](double t) {
    CVec a = h1.eval(t);
    CVec b = h2.eval(t);
    CVec sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
    CVec full = full_f(t, sum);
    CVec ap = ap_g(t, a);
    for (int i = 0; i < od; ++i) full[i] -= ap[i];
    return full;
  };
  rem.dim = F.out_dim;
  rem.osc_bound = F.osc_bound + h1.max_frequency() + h2.osc_bound;
  rem.eval_noise = h2.eval_noise * F.lipschitz;
  rem.label = "composition_remainder[" + F.label + "]";
  out.remainder_curve = membership_pap0(rem, mu, nu, s);

  out.uniqueness = uniqueness_precondition(mu, nu, s);

  out.bound_value = F.lipschitz * final_r(out.h2_curve) + final_r(out.phi_curve) + s.spread_tol;
  double rem_final = final_r(out.remainder_curve);
  out.slack = out.bound_value > 0 ? rem_final / out.bound_value : 0.0;
  out.bound_ok = out.slack <= 1.1;
  return out;
}

}  // namespace dwpap
