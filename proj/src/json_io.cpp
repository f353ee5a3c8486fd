#include "dwpap/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "dwpap/errors.hpp"

namespace dwpap {

namespace {

ordered_json opt_num(std::optional<double> v) {
  if (v) return *v;
  return nullptr;
}

ordered_json limits_json(const std::map<std::string, TauLimits>& limits) {
  ordered_json j = ordered_json::object();
  for (const auto& [tau, l] : limits) j[tau] = to_json(l);
  return j;
}

}  // namespace

ordered_json cvec_json(const CVec& v) {
  ordered_json j = ordered_json::array();
  for (const auto& c : v) j.push_back(ordered_json::array({c.real(), c.imag()}));
  return j;
}

ordered_json to_json(const Schedule& s) {
  return ordered_json{{"t0", s.t0},
                      {"ratio", s.ratio},
                      {"count", s.count},
                      {"window", s.window},
                      {"quad_tol", s.quad_tol},
                      {"spread_tol", s.spread_tol},
                      {"zero_threshold", s.zero_threshold},
                      {"max_step", s.max_step}};
}

ordered_json to_json(const LimitVerdict& v) {
  return ordered_json{{"kind", to_string(v.kind)},
                      {"estimate", cvec_json(v.estimate)},
                      {"final_magnitude", v.final_magnitude},
                      {"window_spread", v.window_spread},
                      {"decay_exponent", v.decay_exponent}};
}

ordered_json to_json(const ErgodicCurve& c) {
  ordered_json r = ordered_json::array();
  for (const auto& v : c.r) r.push_back(cvec_json(v));
  return ordered_json{{"label", c.label},
                      {"dim", c.dim},
                      {"verdict", to_json(c.verdict)},
                      {"t", c.t},
                      {"r", std::move(r)}};
}

ordered_json to_json(const Evidence& e) {
  return ordered_json{{"name", e.name}, {"probe", e.probe}, {"value", e.value}};
}

ordered_json to_json(const TauLimits& l) {
  ordered_json j{{"pointwise", ordered_json{{"kind", to_string(l.pointwise_kind)},
                                            {"limit", l.pointwise}}}};
  if (l.has_cumulative)
    j["cumulative"] =
        ordered_json{{"kind", to_string(l.cumulative_kind)}, {"limit", l.cumulative}};
  else
    j["cumulative"] = nullptr;
  return j;
}

ordered_json to_json(const ClassReport& r) {
  ordered_json ev = ordered_json::array();
  for (const auto& e : r.evidence) ev.push_back(to_json(e));
  return ordered_json{{"class", r.class_name},
                      {"verdict", to_string(r.verdict)},
                      {"evidence", std::move(ev)},
                      {"limits", limits_json(r.limits)}};
}

ordered_json to_json(const PolyClassification& c) {
  ordered_json factors = ordered_json::array();
  for (const auto& f : c.factors)
    factors.push_back(
        ordered_json{{"a", f.a}, {"b", f.b}, {"multiplicity", f.multiplicity}});
  return ordered_json{{"is_polynomial", c.is_polynomial},
                      {"degree", c.degree},
                      {"is_weight", c.is_weight},
                      {"leading", c.leading},
                      {"factors", std::move(factors)},
                      {"reason", to_string(c.reason)},
                      {"translation_stable", c.translation_stable}};
}

ordered_json to_json(const ThetaResult& t) {
  return ordered_json{{"value", opt_num(t.value)}, {"curve", to_json(t.curve)}};
}

ordered_json to_json(const MeanResult& m) {
  ordered_json j{{"mean_estimate", cvec_json(m.mean_estimate)},
                 {"classical_mean", cvec_json(m.classical_mean)},
                 {"theta", opt_num(m.theta_value)},
                 {"residual", m.residual},
                 {"curve", to_json(m.curve)}};
  j["theta_curve"] = m.theta_curve ? to_json(*m.theta_curve) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const OscillationAverage& o) {
  return ordered_json{{"lambda", o.lambda}, {"passes", o.passes()}, {"curve", to_json(o.curve)}};
}

ordered_json to_json(const MeanFactorizationCheck& c) {
  ordered_json osc = ordered_json::array();
  for (const auto& o : c.oscillation) osc.push_back(to_json(o));
  return ordered_json{{"skipped", c.skipped},
                      {"skip_reason", c.skip_reason},
                      {"oscillation", std::move(osc)},
                      {"result", to_json(c.result)}};
}

ordered_json to_json(const BohrCoefficient& b) {
  return ordered_json{{"lambda", b.lambda}, {"value", cvec_json(b.value)}, {"curve", to_json(b.curve)}};
}

ordered_json to_json(const SpectrumPoint& p) {
  return ordered_json{{"lambda", p.lambda}, {"value", cvec_json(p.value)}, {"magnitude", p.magnitude}};
}

ordered_json to_json(const SpectrumSet& s) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : s.points) pts.push_back(to_json(p));
  return ordered_json{{"threshold", s.threshold}, {"points", std::move(pts)}};
}

ordered_json to_json(const CumulativeRatioLimit& l) {
  return ordered_json{{"kind", to_string(l.kind)},
                      {"limit", l.limit},
                      {"t", l.t},
                      {"log_ratio", l.log_ratio}};
}

ordered_json to_json(const RatioSupCheck& c) {
  return ordered_json{{"tail_kind", to_string(c.tail_kind)},
                      {"bounded", c.bounded},
                      {"sup_ratio", c.sup_ratio},
                      {"at_t", c.at_t},
                      {"t", c.t},
                      {"ratio", c.ratio}};
}

ordered_json to_json(const WindowRatioCheck& c) {
  ordered_json per = ordered_json::array();
  for (std::size_t i = 0; i < c.per_shift.size(); ++i) {
    ordered_json item = to_json(c.per_shift[i]);
    item["shift"] = c.shifts[i];
    per.push_back(std::move(item));
  }
  return ordered_json{{"finite", c.finite}, {"kappa", opt_num(c.kappa)}, {"per_shift", std::move(per)}};
}

ordered_json to_json(const UniquenessCheck& c) {
  return ordered_json{{"kappa", opt_num(c.kappa)},
                      {"estimate", c.estimate},
                      {"at_t", c.at_t},
                      {"positive", c.positive},
                      {"t", c.t},
                      {"ratio", c.ratio}};
}

ordered_json to_json(const PreconditionReport& p) {
  return ordered_json{{"name", p.name}, {"pass", p.pass}, {"detail", p.detail}};
}

ordered_json to_json(const ConvMembershipResult& r) {
  ordered_json pre = ordered_json::array();
  for (const auto& p : r.preconditions) pre.push_back(to_json(p));
  return ordered_json{{"preconditions", std::move(pre)},
                      {"preconditions_ok", r.preconditions_ok},
                      {"curve", to_json(r.curve)}};
}

ordered_json to_json(const TranslationCheck& t) {
  ordered_json pre = ordered_json::array();
  for (const auto& p : t.preconditions) pre.push_back(to_json(p));
  return ordered_json{{"preconditions", std::move(pre)},
                      {"preconditions_ok", t.preconditions_ok},
                      {"original", to_json(t.original)},
                      {"shifted", to_json(t.shifted)}};
}

ordered_json to_json(const CompositionResult& r) {
  ordered_json j{{"lipschitz_ok", r.lipschitz_ok}, {"lipschitz_worst", r.lipschitz_worst}};
  if (!r.lipschitz_ok) {
    j["witness"] = ordered_json{{"t", r.witness_t},
                                {"u", cvec_json(r.witness_u)},
                                {"v", cvec_json(r.witness_v)}};
    return j;
  }
  j["h2_member"] = r.h2_member;
  j["h2_curve"] = to_json(r.h2_curve);
  j["phi_curve"] = to_json(r.phi_curve);
  j["remainder_curve"] = to_json(r.remainder_curve);
  j["uniqueness"] = to_json(r.uniqueness);
  j["bound_value"] = r.bound_value;
  j["slack"] = r.slack;
  j["bound_ok"] = r.bound_ok;
  return j;
}

ordered_json make_envelope(const std::string& command, ordered_json inputs, const Schedule& s,
                           ordered_json results) {
  return ordered_json{{"command", command},
                      {"inputs", std::move(inputs)},
                      {"schedule", to_json(s)},
                      {"results", std::move(results)},
                      {"version", kToolVersion}};
}

void write_curve_csv(const ErgodicCurve& c, std::ostream& os) {
  if (c.dim <= 1) {
    os << "T,R_re,R_im\n";
  } else {
    os << "T";
    for (int k = 0; k < c.dim; ++k) os << ",R" << k << "_re,R" << k << "_im";
    os << "\n";
  }
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (std::size_t j = 0; j < c.t.size(); ++j) {
    put(c.t[j]);
    for (const auto& z : c.r[j]) {
      os << ',';
      put(z.real());
      os << ',';
      put(z.imag());
    }
    os << "\n";
  }
}

void write_curve_csv(const ErgodicCurve& c, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw EngineError("cannot open '" + path + "' for writing");
  write_curve_csv(c, f);
  if (!f.good()) throw EngineError("write failure on '" + path + "'");
}

}  // namespace dwpap
