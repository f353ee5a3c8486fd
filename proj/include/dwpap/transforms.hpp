#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwpap/bohr.hpp"
#include "dwpap/ergodic.hpp"
#include "dwpap/function_handle.hpp"
#include "dwpap/kernel.hpp"
#include "dwpap/trig_poly.hpp"
#include "dwpap/weight_classes.hpp"

namespace dwpap {

// ---------------- convolution ----------------

// (k * f)(t), truncated at the radius where the kernel envelope tail times
// the declared sup bound of f drops below tol; adaptive quadrature inside.
// Requires f.sup_bound (throws std::invalid_argument without it).
CVec convolve_value(const FunctionHandle& f, const Kernel& k, double t, double tol = 1e-8);

// Handle evaluating t -> (k * f)(t) on demand; carries the combined sup
// bound, the input's oscillation bound, and tol as its evaluation noise.
FunctionHandle convolve(const FunctionHandle& f, const Kernel& k, double tol = 1e-8);

// Exact convolution of a trig polynomial: each coefficient is multiplied by
// the kernel transform at its frequency, so the result stays a trig
// polynomial with the same frequencies.
TrigPoly convolve_trig(const TrigPoly& p, const Kernel& k);

// ---------------- weight-ratio hypotheses ----------------

// Horizons probed in addition to the schedule whenever a sup/inf over all
// T > 0 is intended.
std::vector<double> small_horizon_probes();

// Boundedness of T -> nu(Q_T)/mu(Q_T) over the schedule plus small horizons.
struct RatioSupCheck {
  LimitKind tail_kind = LimitKind::Undecided;
  bool bounded = false;
  double sup_ratio = 0;
  double at_t = 0;
  std::vector<double> t;
  std::vector<double> ratio;
};
RatioSupCheck bounded_ratio_check(const Weight& mu, const Weight& nu, const Schedule& s = {});

// Per-shift limits of mu(Q_{T+|shift|})^power / mu(Q_T); power is 1 or the
// attenuation exponent kappa.  finite when every shift settles.
struct WindowRatioCheck {
  bool finite = false;
  std::optional<double> kappa;
  std::vector<double> shifts;
  std::vector<CumulativeRatioLimit> per_shift;
};
WindowRatioCheck window_ratio_check(const Weight& mu, const std::vector<double>& shifts,
                                    const Schedule& s = {},
                                    std::optional<KappaParam> kappa = std::nullopt);

// Measured infimum of nu(Q_T)/mu(Q_T)^kappa over schedule + small horizons;
// the quantity whose positivity the decomposition-uniqueness results assume.
struct UniquenessCheck {
  std::optional<double> kappa;
  double estimate = 0;
  double at_t = 0;
  bool positive = false;  // estimate above 1e-12
  std::vector<double> t;
  std::vector<double> ratio;
};
UniquenessCheck uniqueness_precondition(const Weight& mu, const Weight& nu, const Schedule& s = {},
                                        std::optional<KappaParam> kappa = std::nullopt);

// ---------------- theorem-level checks ----------------

struct PreconditionReport {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Stability of the vanishing-average class under convolution: hypothesis
// reports plus the norm-mode curve of k * f.  slow_decay relaxes the
// zero-limit call for inputs decaying like 1/(1+|t|), whose curve carries a
// logarithmic factor the power-law fit underestimates.
struct ConvMembershipResult {
  std::vector<PreconditionReport> preconditions;
  bool preconditions_ok = false;
  ErgodicCurve curve;
};
ConvMembershipResult conv_membership(const FunctionHandle& f, const Kernel& k, const Weight& mu,
                                     const Weight& nu, const Schedule& s = {},
                                     bool slow_decay = false);

// Stability under translation: membership curves of phi and phi(. + shift).
struct TranslationCheck {
  std::vector<PreconditionReport> preconditions;
  bool preconditions_ok = false;
  ErgodicCurve original;
  ErgodicCurve shifted;
};
TranslationCheck translation_invariance_check(const FunctionHandle& phi, double shift,
                                              const Weight& mu, const Weight& nu,
                                              const Schedule& s = {});

// Frequency-coefficient recovery for f = p + phi: scans the grid and returns
// every probed frequency with its estimated coefficient (the vanishing part
// contributes 0 to each, so p's coefficients come back).
SpectrumSet decomposition_recovery(const FunctionHandle& f, const std::vector<double>& lambda_grid,
                                   const Schedule& s = {});

// ---------------- composition ----------------

// Two-variable map F(t, u) = G(t, u) + Phi(t, u) supplied in split form with
// a declared Lipschitz constant in u.  Evaluators take and return complex
// vectors; probe fields configure the randomized Lipschitz verification.
struct TwoVarFunction {
  std::function<CVec(double, const CVec&)> f;
  std::function<CVec(double, const CVec&)> g;
  std::function<CVec(double, const CVec&)> phi;
  double lipschitz = 1.0;
  double osc_bound = 1.0;     // oscillation rate of t -> F(t, .)
  double probe_radius = 3.0;  // Lipschitz probe box half-width per coordinate
  double probe_t_range = 50.0;
  int u_dim = 1;
  int out_dim = 1;
  std::string label;
};

// Verifies that t -> F(t, h1(t)+h2(t)) - G(t, h1(t)) has vanishing weighted
// average, and that its final average obeys the three-term bound
//   L * final(h2 curve) + final(Phi(., h1(.)) curve) + spread_tol.
// A sampled Lipschitz violation short-circuits with the witnessing probe.
struct CompositionResult {
  bool lipschitz_ok = false;
  double lipschitz_worst = 0;
  double witness_t = 0;
  CVec witness_u, witness_v;
  bool h2_member = false;
  ErgodicCurve h2_curve;
  ErgodicCurve phi_curve;
  ErgodicCurve remainder_curve;
  UniquenessCheck uniqueness;  // reported alongside, not asserted
  double bound_value = 0;
  double slack = 0;  // final(remainder) / bound_value
  bool bound_ok = false;
};
CompositionResult composition_check(const TwoVarFunction& F, const TrigPoly& h1,
                                    const FunctionHandle& h2, const Weight& mu, const Weight& nu,
                                    const Schedule& s = {}, std::uint64_t seed = 12345);

}  // namespace dwpap
