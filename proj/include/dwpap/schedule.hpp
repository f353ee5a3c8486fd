#pragma once

#include <complex>
#include <string>
#include <vector>

namespace dwpap {

// Geometric grid of horizon values T_j = t0 * ratio^j together with the
// tolerances that turn a finite curve into a limit verdict.
struct Schedule {
  double t0 = 1.0;
  double ratio = 1.5;
  int count = 24;
  int window = 5;           // trailing points examined for stabilization
  double quad_tol = 1e-9;   // per-shell quadrature tolerance
  double spread_tol = 1e-3; // relative spread for "the limit exists"
  double zero_threshold = 1e-3;
  double max_step = 0.25;   // quadrature oscillation cap

  std::vector<double> points() const;
  void validate() const;  // throws std::invalid_argument
};

enum class LimitKind { ConvergesToZero, ConvergesTo, Diverges, Undecided };

std::string to_string(LimitKind k);

// Decision per curve, in order:
//   1. trailing values all below zero_threshold with a positive fitted decay
//      exponent  -> ConvergesToZero
//   2. trailing window relative spread within spread_tol -> ConvergesTo
//   3. magnitude grown monotonically past 1e6, or monotonically through two
//      orders of magnitude without stabilizing -> Diverges
//   4. otherwise Undecided.
// The decay exponent p comes from a log-log least-squares fit of the running
// tail envelope max_{k>=j} |R_k| against T, which stays meaningful when an
// oscillating factor passes through zero.
struct LimitVerdict {
  LimitKind kind = LimitKind::Undecided;
  std::vector<std::complex<double>> estimate;  // trailing-window mean
  double final_magnitude = 0;
  double window_spread = 0;
  double decay_exponent = 0;  // p in |R| ~ C T^{-p}
};

struct ErgodicCurve {
  std::string label;
  int dim = 1;
  std::vector<double> t;
  std::vector<std::vector<std::complex<double>>> r;  // r[j] has dim entries
  LimitVerdict verdict;

  std::vector<double> magnitudes() const;
};

LimitVerdict judge_limit(const std::vector<double>& t,
                         const std::vector<std::vector<std::complex<double>>>& r,
                         const Schedule& s);

// Same idea for a plain positive sequence given in log scale (ratio curves).
// kind ConvergesTo carries exp(limit of the logs).  Two extra rules suit
// monotone ratio ladders: a geometrically contracting tail is extrapolated to
// its limit (catches c/T-style approaches), and a sequence sliding steadily
// down (or below -log(1e6)) counts as converging to 0 -- a finite limit --
// while the mirrored climb counts as divergence.
struct LogSeqVerdict {
  LimitKind kind = LimitKind::Undecided;
  double limit = 0;  // meaningful for the converging kinds
};

LogSeqVerdict judge_log_sequence(const std::vector<double>& logs, const Schedule& s);

}  // namespace dwpap
