#include "dwpap/weight_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dwpap/errors.hpp"

namespace dwpap {

namespace {

constexpr double kLogCap = 13.815510557964274;  // log(1e6)

std::string fmt_tau(double tau) {
  std::ostringstream os;
  os << tau;
  return os.str();
}

// All probe locations used for pointwise scans: the dense grid plus a few
// far-out samples on both sides.
std::vector<double> probe_points(const ClassCheckConfig& cfg) {
  std::vector<double> xs;
  long n = std::lround((cfg.grid_max - cfg.grid_min) / cfg.grid_step);
  xs.reserve(static_cast<size_t>(n) + 2 * cfg.tail_pow_max + 1);
  for (long i = 0; i <= n; ++i) xs.push_back(cfg.grid_min + static_cast<double>(i) * cfg.grid_step);
  double p = 1.0;
  for (int k = 1; k <= cfg.tail_pow_max; ++k) {
    p *= 10.0;
    xs.push_back(p);
    xs.push_back(-p);
  }
  return xs;
}

struct ScanResult {
  bool clean = true;       // no NaN / nonpositive values encountered
  double bad_probe = 0;    // first offending location when !clean
  double bad_value = 0;
  double min_log = std::numeric_limits<double>::infinity();
  double min_at = 0;
  double max_log = -std::numeric_limits<double>::infinity();
  double max_at = 0;
};

ScanResult scan_log(const Weight& w, const ClassCheckConfig& cfg) {
  ScanResult r;
  for (double x : probe_points(cfg)) {
    double lg = w.log_eval(x);
    if (std::isnan(lg) || lg == std::numeric_limits<double>::infinity()) {
      r.clean = false;
      r.bad_probe = x;
      r.bad_value = w.eval(x);
      return r;
    }
    if (lg < r.min_log) { r.min_log = lg; r.min_at = x; }
    if (lg > r.max_log) { r.max_log = lg; r.max_at = x; }
  }
  return r;
}

// Decide whether a monotone cumulative log-ladder heads to infinity.  The
// ladder is judged unbounded when it grew by a solid factor and the final
// window is still advancing at a steady per-step rate; it is judged bounded
// when the final window has stabilized.
enum class GrowthCall { Unbounded, Bounded, Unclear };

GrowthCall judge_cumulative_growth(const std::vector<double>& logs, const Schedule& s) {
  if (logs.size() < 2) return GrowthCall::Unclear;
  size_t n = logs.size();
  size_t w = std::min<size_t>(s.window, n);
  double wmin = logs[n - w], wmax = logs[n - w];
  for (size_t j = n - w; j < n; ++j) {
    wmin = std::min(wmin, logs[j]);
    wmax = std::max(wmax, logs[j]);
  }
  if (wmax - wmin <= s.spread_tol) return GrowthCall::Bounded;
  double total = logs.back() - logs.front();
  double min_inc = std::numeric_limits<double>::infinity();
  for (size_t j = n - w; j + 1 < n; ++j) min_inc = std::min(min_inc, logs[j + 1] - logs[j]);
  // Steady growth means each step in the last window still gains at least a
  // quarter of the step that a linear-in-T cumulative would gain.
  if (total >= std::log(100.0) && min_inc >= 0.25 * std::log(s.ratio)) return GrowthCall::Unbounded;
  return GrowthCall::Unclear;
}

// Sorted, deduplicated union of requested ladder points, with a lookup that
// tolerates round-off in the requests.
struct MergedLadder {
  std::vector<double> ts;
  std::vector<double> logs;

  double log_at(double t) const {
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    size_t i = static_cast<size_t>(it - ts.begin());
    double best = std::numeric_limits<double>::infinity();
    size_t best_i = ts.size();
    for (size_t j : {i, i > 0 ? i - 1 : i}) {
      if (j < ts.size() && std::abs(ts[j] - t) < best) {
        best = std::abs(ts[j] - t);
        best_i = j;
      }
    }
    if (best_i == ts.size() || best > 1e-9 * (1.0 + std::abs(t)))
      throw EngineError("internal ladder lookup failed");
    return logs[best_i];
  }
};

MergedLadder merged_ladder(const Weight& w, std::vector<double> ts, double tol) {
  std::sort(ts.begin(), ts.end());
  std::vector<double> uniq;
  for (double t : ts) {
    if (uniq.empty() || t - uniq.back() > 1e-12 * (1.0 + std::abs(t))) uniq.push_back(t);
  }
  MergedLadder m;
  m.ts = uniq;
  m.logs = w.log_mu_qt_ladder(uniq, tol);
  return m;
}

bool settles(LimitKind k) {
  return k == LimitKind::ConvergesTo || k == LimitKind::ConvergesToZero;
}

// Pointwise translation-ratio sequence log w(x+tau) - log w(x) along the
// schedule points, judged as a log sequence.  Returns false when a probe hit
// an invalid value.
bool pointwise_tau_limit(const Weight& w, double tau, const Schedule& s, TauLimits* out) {
  std::vector<double> xs = s.points();
  std::vector<double> diff;
  diff.reserve(xs.size());
  for (double x : xs) {
    double a = w.log_eval(x + tau);
    double b = w.log_eval(x);
    double d = a - b;
    if (std::isnan(d)) return false;
    diff.push_back(d);
  }
  auto v = judge_log_sequence(diff, s);
  out->pointwise_kind = v.kind;
  out->pointwise = v.limit;
  return true;
}

bool cumulative_tau_limit(const Weight& w, double tau, const Schedule& s, TauLimits* out) {
  CumulativeRatioLimit r = cumulative_ratio_limit(w, tau, 1.0, s);
  if (r.t.empty()) return false;
  out->has_cumulative = true;
  out->cumulative_kind = r.kind;
  out->cumulative = r.limit;
  return true;
}

// Shared core of check_w: positivity of the infimum and growth of the
// cumulative.  Returns the verdict and appends evidence.
Verdict base_class_core(const Weight& w, const ClassCheckConfig& cfg, std::vector<Evidence>* ev) {
  // Symbolic route for polynomials: the factorization decides positivity for
  // every point at once, and a positive polynomial's cumulative grows without
  // bound.
  PolyClassification pc = classify_polynomial(w.expr());
  if (pc.is_polynomial) {
    if (!pc.is_weight) {
      ev->push_back({"polynomial_reject:" + to_string(pc.reason), 0, 0});
      return Verdict::NonMember;
    }
    ev->push_back({"symbolic_positive_definite", 0, 1});
    return Verdict::Member;
  }

  ScanResult sc = scan_log(w, cfg);
  if (!sc.clean) {
    ev->push_back({"invalid_value", sc.bad_probe, sc.bad_value});
    return Verdict::NonMember;
  }
  ev->push_back({"pointwise_min", sc.min_at, std::exp(sc.min_log)});
  if (sc.min_log < std::log(cfg.mu0_min)) return Verdict::NonMember;

  std::vector<double> ts = cfg.schedule.points();
  std::vector<double> logs = w.log_mu_qt_ladder(ts, cfg.schedule.quad_tol);
  ev->push_back({"log_cumulative_final", ts.back(), logs.back()});
  ev->push_back({"cumulative_growth_factor", ts.back(), std::exp(logs.back() - logs.front())});
  switch (judge_cumulative_growth(logs, cfg.schedule)) {
    case GrowthCall::Unbounded: return Verdict::Member;
    case GrowthCall::Bounded: return Verdict::NonMember;
    default: return Verdict::Undecided;
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NonMember: return "non-member";
    default: return "undecided";
  }
}

CumulativeRatioLimit cumulative_ratio_limit(const Weight& w, double shift, double num_power,
                                            const Schedule& s) {
  CumulativeRatioLimit out;
  std::vector<double> want;
  std::vector<double> keep;
  for (double t : s.points()) {
    if (t + shift <= 0.05) continue;  // shifted window collapses; skip the probe
    keep.push_back(t);
    want.push_back(t);
    want.push_back(t + shift);
  }
  if (keep.size() < static_cast<size_t>(std::min<int>(s.count, 4))) return out;
  MergedLadder m = merged_ladder(w, want, s.quad_tol);
  out.t = keep;
  out.log_ratio.reserve(keep.size());
  for (double t : keep) out.log_ratio.push_back(num_power * m.log_at(t + shift) - m.log_at(t));
  auto v = judge_log_sequence(out.log_ratio, s);
  out.kind = v.kind;
  out.limit = v.limit;
  return out;
}

ClassReport check_w(const Weight& w, const ClassCheckConfig& cfg) {
  ClassReport rep;
  rep.class_name = "W";
  rep.verdict = base_class_core(w, cfg, &rep.evidence);
  return rep;
}

ClassReport check_v(const Weight& w, const ClassCheckConfig& cfg) {
  ClassReport rep;
  rep.class_name = "V";
  Verdict base = base_class_core(w, cfg, &rep.evidence);
  if (base != Verdict::Member) {
    rep.verdict = base;
    return rep;
  }

  // Symbolic route: a polynomial-in-(x,|x|) weight is bounded iff constant.
  if (auto bp = extract_bipoly(w.expr())) {
    if (bp->total_degree() == 0) {
      rep.evidence.push_back({"symbolic_constant", 0, bp->eval(0.0)});
      rep.verdict = Verdict::Member;
    } else {
      rep.evidence.push_back({"symbolic_unbounded_degree", 0, static_cast<double>(bp->total_degree())});
      rep.verdict = Verdict::NonMember;
    }
    return rep;
  }

  ScanResult sc = scan_log(w, cfg);
  if (!sc.clean) {
    rep.evidence.push_back({"invalid_value", sc.bad_probe, sc.bad_value});
    rep.verdict = Verdict::NonMember;
    return rep;
  }
  // Compare the far-tail sup against the dense-grid sup.
  double grid_max = -std::numeric_limits<double>::infinity(), grid_at = 0;
  double tail_max = -std::numeric_limits<double>::infinity(), tail_at = 0;
  for (double x : probe_points(cfg)) {
    double lg = w.log_eval(x);
    if (x >= cfg.grid_min && x <= cfg.grid_max) {
      if (lg > grid_max) { grid_max = lg; grid_at = x; }
    } else if (lg > tail_max) {
      tail_max = lg;
      tail_at = x;
    }
  }
  rep.evidence.push_back({"log_sup_grid", grid_at, grid_max});
  rep.evidence.push_back({"log_sup_tail", tail_at, tail_max});
  if (tail_max >= grid_max + kLogCap) {
    rep.verdict = Verdict::NonMember;
  } else if (tail_max <= grid_max + std::log1p(1e-3)) {
    rep.verdict = Verdict::Member;
  } else {
    rep.verdict = Verdict::Undecided;
  }
  return rep;
}

namespace {

// Shared tau-limit sweep used by the translation-controlled checks.
Verdict tau_sweep(const Weight& w, const ClassCheckConfig& cfg, bool with_cumulative,
                  std::map<std::string, TauLimits>* limits, std::vector<Evidence>* ev) {
  bool all_settle = true;
  bool any_diverge = false;
  for (double tau : cfg.taus) {
    TauLimits tl;
    if (!pointwise_tau_limit(w, tau, cfg.schedule, &tl)) {
      ev->push_back({"invalid_ratio_probe", tau, 0});
      all_settle = false;
      (*limits)[fmt_tau(tau)] = tl;
      continue;
    }
    if (with_cumulative) {
      if (!cumulative_tau_limit(w, tau, cfg.schedule, &tl)) {
        ev->push_back({"cumulative_ratio_unavailable", tau, 0});
        all_settle = false;
      }
    }
    (*limits)[fmt_tau(tau)] = tl;
    if (!settles(tl.pointwise_kind)) all_settle = false;
    if (tl.pointwise_kind == LimitKind::Diverges) any_diverge = true;
    if (with_cumulative && tl.has_cumulative) {
      if (!settles(tl.cumulative_kind)) all_settle = false;
      if (tl.cumulative_kind == LimitKind::Diverges) any_diverge = true;
    }
  }
  if (any_diverge) return Verdict::NonMember;
  if (all_settle) return Verdict::Member;
  return Verdict::Undecided;
}

}  // namespace

ClassReport check_w_inv(const Weight& w, const ClassCheckConfig& cfg) {
  ClassReport rep;
  rep.class_name = "W_inv";
  Verdict base = base_class_core(w, cfg, &rep.evidence);
  if (base != Verdict::Member) {
    rep.verdict = base;
    return rep;
  }
  rep.verdict = tau_sweep(w, cfg, /*with_cumulative=*/true, &rep.limits, &rep.evidence);
  return rep;
}

ClassReport check_w_s(const Weight& w, const ClassCheckConfig& cfg) {
  ClassReport rep;
  rep.class_name = "W_s";
  Verdict base = base_class_core(w, cfg, &rep.evidence);
  if (base != Verdict::Member) {
    rep.verdict = base;
    return rep;
  }
  rep.evidence.push_back({"continuous", 0, w.continuous() ? 1.0 : 0.0});
  if (!w.continuous()) {
    rep.verdict = Verdict::NonMember;
    return rep;
  }
  rep.verdict = tau_sweep(w, cfg, /*with_cumulative=*/false, &rep.limits, &rep.evidence);
  if (rep.verdict == Verdict::Member) {
    // Instance-level inclusion into the translation-invariant class: a member
    // here must also pass the cumulative-ratio sweep.
    ClassReport inv = check_w_inv(w, cfg);
    rep.evidence.push_back({"inclusion_w_inv", 0, inv.verdict == Verdict::Member ? 1.0 : 0.0});
  }
  return rep;
}

ClassReport equivalent(const Weight& mu, const Weight& nu, const ClassCheckConfig& cfg) {
  ClassReport rep;
  rep.class_name = "equivalent";

  double lmin = std::numeric_limits<double>::infinity(), lmin_at = 0;
  double lmax = -std::numeric_limits<double>::infinity(), lmax_at = 0;
  for (double x : probe_points(cfg)) {
    double d = mu.log_eval(x) - nu.log_eval(x);
    if (std::isnan(d)) {
      rep.evidence.push_back({"invalid_ratio_probe", x, 0});
      rep.verdict = Verdict::Undecided;
      return rep;
    }
    if (d < lmin) { lmin = d; lmin_at = x; }
    if (d > lmax) { lmax = d; lmax_at = x; }
  }
  rep.evidence.push_back({"log_ratio_min", lmin_at, lmin});
  rep.evidence.push_back({"log_ratio_max", lmax_at, lmax});
  if (lmax >= kLogCap || lmin <= -kLogCap) {
    rep.verdict = Verdict::NonMember;
    return rep;
  }

  // Tail behavior on both sides: the log-ratio must settle to a finite value.
  bool all_settle = true;
  bool any_escape = false;
  for (int sign : {1, -1}) {
    std::vector<double> diff;
    for (double t : cfg.schedule.points()) {
      double x = sign * t;
      diff.push_back(mu.log_eval(x) - nu.log_eval(x));
    }
    auto v = judge_log_sequence(diff, cfg.schedule);
    rep.evidence.push_back({sign > 0 ? "ratio_limit_pos_tail" : "ratio_limit_neg_tail",
                            sign * cfg.schedule.points().back(),
                            v.kind == LimitKind::ConvergesTo ? v.limit : 0});
    if (v.kind != LimitKind::ConvergesTo) all_settle = false;
    if (v.kind == LimitKind::Diverges || v.kind == LimitKind::ConvergesToZero) any_escape = true;
  }
  if (any_escape) rep.verdict = Verdict::NonMember;
  else if (all_settle) rep.verdict = Verdict::Member;
  else rep.verdict = Verdict::Undecided;
  return rep;
}

}  // namespace dwpap
