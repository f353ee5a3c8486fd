#pragma once

#include <map>
#include <string>
#include <vector>

#include "dwpap/poly_classify.hpp"
#include "dwpap/schedule.hpp"
#include "dwpap/weight.hpp"

namespace dwpap {

enum class Verdict { Member, NonMember, Undecided };

std::string to_string(Verdict v);

struct Evidence {
  std::string name;
  double probe = 0;
  double value = 0;
};

// Estimated translation limits for one offset tau: the pointwise ratio
// w(x+tau)/w(x) as x grows, and the cumulative ratio w(Q_{T+tau})/w(Q_T).
struct TauLimits {
  LimitKind pointwise_kind = LimitKind::Undecided;
  double pointwise = 0;
  bool has_cumulative = false;
  LimitKind cumulative_kind = LimitKind::Undecided;
  double cumulative = 0;
};

struct ClassReport {
  std::string class_name;
  Verdict verdict = Verdict::Undecided;
  std::vector<Evidence> evidence;
  std::map<std::string, TauLimits> limits;  // keyed by the printed tau
};

struct ClassCheckConfig {
  double grid_min = -50.0;
  double grid_max = 50.0;
  double grid_step = 1e-2;
  int tail_pow_max = 4;     // extra probes at +-10^k, k = 1..tail_pow_max
  double mu0_min = 1e-8;    // smallest admissible pointwise infimum
  std::vector<double> taus{0.5, -0.5, 1.0, -1.0, 3.0, -3.0};
  Schedule schedule{};
};

// Base weight class: pointwise infimum positive and cumulative measure
// unbounded.  Polynomials are settled by the positivity certificate; the
// numeric evidence is attached either way.
ClassReport check_w(const Weight& w, const ClassCheckConfig& cfg = {});

// Bounded subclass: additionally sup w finite.
ClassReport check_v(const Weight& w, const ClassCheckConfig& cfg = {});

// Translation-controlled subclass: pointwise and cumulative translation
// ratios settle to finite limits for every probed tau.
ClassReport check_w_inv(const Weight& w, const ClassCheckConfig& cfg = {});

// Strong subclass: continuous members of the base class whose pointwise
// translation ratios settle for every probed tau.
ClassReport check_w_s(const Weight& w, const ClassCheckConfig& cfg = {});

// mu ~ nu when mu/nu is bounded above and below by positive constants along
// the probes and its tail ratios settle to positive limits.
ClassReport equivalent(const Weight& mu, const Weight& nu, const ClassCheckConfig& cfg = {});

// Limit of w(Q_{T+shift})^num_power / w(Q_T) along the schedule, judged in
// log scale.  Shared by the translation-ratio membership conditions and the
// cumulative-ratio hypotheses of the transform theorems.  Points where the
// shifted window would collapse (T+shift <= 0.05) are skipped; when too few
// points survive, the verdict stays Undecided with empty curves.
struct CumulativeRatioLimit {
  LimitKind kind = LimitKind::Undecided;
  double limit = 0;
  std::vector<double> t;
  std::vector<double> log_ratio;
};

CumulativeRatioLimit cumulative_ratio_limit(const Weight& w, double shift, double num_power,
                                            const Schedule& s);

}  // namespace dwpap
