#pragma once

#include <limits>
#include <optional>
#include <string>

#include "dwpap/function_handle.hpp"
#include "dwpap/schedule.hpp"
#include "dwpap/weight.hpp"

namespace dwpap {

// Exponent for the power-attenuated averages; restricted to (0, 1).
class KappaParam {
 public:
  explicit KappaParam(double k);
  double value() const { return k_; }

 private:
  double k_;
};

enum class AverageMode { Norm, Raw };

// R(T_j) = (1 / mu(Q_T)^kappa) * integral over [-T, T] of
//   ||f(t)|| nu(t)        (Norm)
//   f(t) nu(t)            (Raw, coordinate-wise)
// computed shell-by-shell along the schedule.  Denominators are always formed
// in log scale; a norm-mode numerator with an exponential nu moves to log
// scale as well, so nothing overflows for horizons far past exp range.
ErgodicCurve ergodic_curve(const FunctionHandle& f, const Weight& mu, const Weight& nu,
                           const Schedule& s, AverageMode mode,
                           std::optional<KappaParam> kappa = std::nullopt);

// Ratio nu(Q_T)/mu(Q_T) along the schedule with its limit; a curve that slides
// to zero yields value 0.
struct ThetaResult {
  std::optional<double> value;
  ErgodicCurve curve;
};

ThetaResult theta(const Weight& mu, const Weight& nu, const Schedule& s);

// |(1 / mu(Q_T)) * integral e^{i lambda t} nu(t) dt|: the cross-oscillation
// condition holds at lambda when this tends to zero.
struct OscillationAverage {
  double lambda = 0;
  ErgodicCurve curve;
  bool passes() const { return curve.verdict.kind == LimitKind::ConvergesToZero; }
};

OscillationAverage oscillation_average(const Weight& mu, const Weight& nu, double lambda,
                                       const Schedule& s);

// Doubly weighted mean of f.  For trig polynomials the result also carries
// theta, the exact unweighted mean, and the residual
// || mean_estimate - theta * classical_mean ||.
struct MeanResult {
  CVec mean_estimate;
  ErgodicCurve curve;
  std::optional<double> theta_value;
  std::optional<ErgodicCurve> theta_curve;
  CVec classical_mean;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

MeanResult dw_mean(const FunctionHandle& f, const Weight& mu, const Weight& nu,
                   const Schedule& s);
MeanResult dw_mean(const TrigPoly& p, const Weight& mu, const Weight& nu, const Schedule& s);

// Vanishing weighted average: f belongs to the ergodic remainder class when
// the norm-mode curve converges to zero.
ErgodicCurve membership_pap0(const FunctionHandle& f, const Weight& mu, const Weight& nu,
                             const Schedule& s, std::optional<KappaParam> kappa = std::nullopt);

// End-to-end check of the product formula M(f, mu, nu) = theta * M(f) for a
// trig polynomial: validates the limit ratio and the cross-oscillation
// condition at every nonzero frequency first; failures surface as skipped.
struct MeanFactorizationCheck {
  bool skipped = false;
  std::string skip_reason;
  MeanResult result;
  std::vector<OscillationAverage> oscillation;
};

MeanFactorizationCheck verify_mean_factorization(const TrigPoly& p, const Weight& mu,
                                                 const Weight& nu, const Schedule& s);

}  // namespace dwpap
