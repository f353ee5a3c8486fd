#include "dwpap/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dwpap {

namespace {

constexpr double kDivergeThreshold = 1e6;
constexpr double kGrowthFactor = 100.0;
constexpr double kLogFloor = -690.0;  // clamp for log of underflowed magnitudes

double norm2(const std::vector<std::complex<double>>& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

double dist2(const std::vector<std::complex<double>>& a,
             const std::vector<std::complex<double>>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) return 0;
  return (n * sxy - sx * sy) / denom;
}

bool monotone_nondecreasing(const std::vector<double>& v, std::size_t from) {
  for (std::size_t j = from + 1; j < v.size(); ++j)
    if (v[j] < v[j - 1] * (1.0 - 1e-12)) return false;
  return true;
}

}  // namespace

std::vector<double> Schedule::points() const {
  validate();
  std::vector<double> t(count);
  double v = t0;
  for (int j = 0; j < count; ++j) {
    t[j] = v;
    v *= ratio;
  }
  return t;
}

void Schedule::validate() const {
  if (!(t0 > 0)) throw std::invalid_argument("schedule: t0 must be positive");
  if (!(ratio > 1)) throw std::invalid_argument("schedule: ratio must exceed 1");
  if (window < 3) throw std::invalid_argument("schedule: window must be at least 3");
  if (count < window) throw std::invalid_argument("schedule: count must be at least window");
  if (!(quad_tol > 0) || !(spread_tol > 0) || !(zero_threshold > 0))
    throw std::invalid_argument("schedule: tolerances must be positive");
}

std::string to_string(LimitKind k) {
  switch (k) {
    case LimitKind::ConvergesToZero: return "converges-to-zero";
    case LimitKind::ConvergesTo: return "converges";
    case LimitKind::Diverges: return "diverges";
    case LimitKind::Undecided: return "undecided";
  }
  return "unknown";
}

std::vector<double> ErgodicCurve::magnitudes() const {
  std::vector<double> m;
  m.reserve(r.size());
  for (const auto& v : r) m.push_back(norm2(v));
  return m;
}

LimitVerdict judge_limit(const std::vector<double>& t,
                         const std::vector<std::vector<std::complex<double>>>& r,
                         const Schedule& s) {
  LimitVerdict v;
  const std::size_t n = r.size();
  const std::size_t w = static_cast<std::size_t>(s.window);
  if (n < w || t.size() != n) throw std::invalid_argument("judge_limit: curve shorter than window");

  std::vector<double> mag(n);
  for (std::size_t j = 0; j < n; ++j) mag[j] = norm2(r[j]);

  const std::size_t dim = r[0].size();
  std::vector<std::complex<double>> mean(dim, 0.0);
  double window_max = 0;
  for (std::size_t j = n - w; j < n; ++j) {
    for (std::size_t k = 0; k < dim; ++k) mean[k] += r[j][k];
    window_max = std::max(window_max, mag[j]);
  }
  for (auto& c : mean) c /= static_cast<double>(w);

  double spread = 0;
  for (std::size_t i = n - w; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) spread = std::max(spread, dist2(r[i], r[j]));
  v.window_spread = window_max > 0 ? spread / window_max : 0.0;
  v.estimate = mean;
  v.final_magnitude = mag.back();

  // Tail-envelope decay fit over the last three quarters of the curve.
  std::size_t fit_from = n / 4;
  std::vector<double> lx, ly;
  double env = 0;
  std::vector<double> envelope(n);
  for (std::size_t j = n; j-- > 0;) {
    env = std::max(env, mag[j]);
    envelope[j] = env;
  }
  for (std::size_t j = fit_from; j < n; ++j) {
    lx.push_back(std::log(t[j]));
    ly.push_back(std::log(std::max(envelope[j], std::exp(kLogFloor))));
  }
  v.decay_exponent = lx.size() >= 2 ? -ls_slope(lx, ly) : 0.0;

  if (window_max <= 1e-15) {
    v.kind = LimitKind::ConvergesToZero;
    return v;
  }
  if (v.final_magnitude <= s.zero_threshold && v.decay_exponent > 0) {
    v.kind = LimitKind::ConvergesToZero;
    return v;
  }
  if (v.window_spread <= s.spread_tol) {
    v.kind = LimitKind::ConvergesTo;
    return v;
  }
  bool tail_monotone = monotone_nondecreasing(mag, n - w);
  bool all_monotone = monotone_nondecreasing(mag, 0);
  if ((tail_monotone && mag.back() >= kDivergeThreshold) ||
      (all_monotone && mag.back() >= kGrowthFactor * std::max(mag.front(), 1e-300) &&
       v.window_spread > s.spread_tol)) {
    v.kind = LimitKind::Diverges;
    return v;
  }
  v.kind = LimitKind::Undecided;
  return v;
}

LogSeqVerdict judge_log_sequence(const std::vector<double>& logs, const Schedule& s) {
  LogSeqVerdict v;
  const std::size_t n = logs.size();
  const std::size_t w = static_cast<std::size_t>(s.window);
  if (n < w) return v;  // too short to judge

  double lmax = -std::numeric_limits<double>::infinity();
  double lmin = std::numeric_limits<double>::infinity();
  double lsum = 0;
  bool window_all_ninf = true;
  for (std::size_t j = n - w; j < n; ++j) {
    lmax = std::max(lmax, logs[j]);
    lmin = std::min(lmin, logs[j]);
    lsum += logs[j];
    if (logs[j] != -std::numeric_limits<double>::infinity()) window_all_ninf = false;
  }
  if (window_all_ninf) {
    v.kind = LimitKind::ConvergesToZero;
    v.limit = 0;
    return v;
  }
  const double cap = std::log(kDivergeThreshold);

  if (lmax - lmin <= s.spread_tol) {
    v.kind = LimitKind::ConvergesTo;
    v.limit = std::exp(lsum / static_cast<double>(w));
    return v;
  }

  // Geometrically contracting tail: successive differences shrink by a solid
  // factor and the last one is already small, so extrapolate the remaining
  // geometric sum (Aitken-style).  Catches limits approached like c/T, whose
  // window spread alone can sit just above tolerance.
  if (w >= 3) {
    bool contracting = true;
    for (std::size_t j = n - w; j + 2 < n; ++j) {
      double d0 = logs[j + 1] - logs[j];
      double d1 = logs[j + 2] - logs[j + 1];
      if (!(std::abs(d1) <= 0.9 * std::abs(d0) + 1e-15)) {
        contracting = false;
        break;
      }
    }
    double d_prev = logs[n - 2] - logs[n - 3];
    double d_last = logs[n - 1] - logs[n - 2];
    if (contracting && std::isfinite(d_last) && std::abs(d_last) <= s.spread_tol) {
      double rho = d_prev != 0 ? d_last / d_prev : 0.0;
      rho = std::clamp(rho, -0.95, 0.95);
      v.kind = LimitKind::ConvergesTo;
      v.limit = std::exp(logs.back() + d_last * rho / (1.0 - rho));
      return v;
    }
  }

  bool upward = true, downward = true;
  for (std::size_t j = 1; j < n; ++j) {
    if (logs[j] < logs[j - 1] - 1e-12) upward = false;
    if (logs[j] > logs[j - 1] + 1e-12) downward = false;
  }
  // Steady escape: the whole sequence moves one way, has covered at least two
  // orders of magnitude, and the last window still advances at a rate no
  // slower than a quarter of a linear-in-T trend -- or it has already crossed
  // the hard cap.
  double step_floor = 0.25 * std::log(s.ratio);
  double min_step = std::numeric_limits<double>::infinity();
  double max_step_seen = -std::numeric_limits<double>::infinity();
  for (std::size_t j = n - w; j + 1 < n; ++j) {
    double d = logs[j + 1] - logs[j];
    min_step = std::min(min_step, d);
    max_step_seen = std::max(max_step_seen, d);
  }
  double total = logs.back() - logs.front();
  if (upward && (logs.back() >= cap || (total >= std::log(kGrowthFactor) && min_step >= step_floor))) {
    v.kind = LimitKind::Diverges;
    return v;
  }
  if (downward &&
      (logs.back() <= -cap || (total <= -std::log(kGrowthFactor) && max_step_seen <= -step_floor))) {
    // Sliding to -inf: the ratio tends to zero, a finite limit.
    v.kind = LimitKind::ConvergesToZero;
    v.limit = 0;
    return v;
  }
  v.kind = LimitKind::Undecided;
  return v;
}

}  // namespace dwpap
