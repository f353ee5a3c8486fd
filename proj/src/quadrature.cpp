#include "dwpap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dwpap/errors.hpp"

namespace dwpap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename V>
double magnitude(V v) {
  if constexpr (std::is_same_v<V, double>) return std::fabs(v);
  else return std::abs(v);
}

template <typename V>
struct Refiner {
  const std::function<V(double)>& f;
  int max_depth;
  double noise_floor;
  double worst_excess = 0;  // largest unresolved error estimate
  long evals = 0;

  V sample(double x) {
    ++evals;
    V v = f(x);
    if (!std::isfinite(magnitude(v)))
      throw EngineError("quadrature: non-finite integrand sample at t=" + std::to_string(x));
    return v;
  }

  V refine(double a, double b, V fa, V fm, V fb, V whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    V flm = sample(lm), frm = sample(rm);
    double h = b - a;
    V left = (h / 12.0) * (fa + 4.0 * flm + fm);
    V right = (h / 12.0) * (fm + 4.0 * frm + fb);
    V delta = left + right - whole;
    double err = magnitude(delta) / 15.0;
    double floor = noise_floor * h;
    if (err <= std::max(tol, floor) || depth >= max_depth) {
      if (err > 10.0 * std::max(tol, floor)) worst_excess = std::max(worst_excess, err);
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

template <typename V>
V integrate_impl(const std::function<V(double)>& f, double a, double b, const QuadOptions& opt) {
  if (!(b > a)) return V{};
  Refiner<V> r{f, opt.max_depth, opt.noise_floor};
  long n = std::max(1L, static_cast<long>(std::ceil((b - a) / opt.max_step)));
  double h = (b - a) / static_cast<double>(n);

  // First pass: crude Simpson per panel to apportion the tolerance.
  std::vector<V> fa(n), fm(n), fb(n), crude(n);
  double total_mag = 0;
  for (long i = 0; i < n; ++i) {
    double x0 = a + h * static_cast<double>(i);
    double x1 = i + 1 == n ? b : x0 + h;
    fa[i] = i == 0 ? r.sample(x0) : fb[i - 1];
    fm[i] = r.sample(0.5 * (x0 + x1));
    fb[i] = r.sample(x1);
    crude[i] = ((x1 - x0) / 6.0) * (fa[i] + 4.0 * fm[i] + fb[i]);
    total_mag += magnitude(crude[i]);
  }

  V sum{};
  for (long i = 0; i < n; ++i) {
    double x0 = a + h * static_cast<double>(i);
    double x1 = i + 1 == n ? b : x0 + h;
    double tol = opt.abs_tol * (x1 - x0) / (b - a) + opt.rel_tol * magnitude(crude[i]);
    tol = std::max(tol, std::numeric_limits<double>::epsilon() * total_mag);
    sum += r.refine(x0, x1, fa[i], fm[i], fb[i], crude[i], tol, 0);
  }

  double target = opt.abs_tol + opt.rel_tol * magnitude(sum);
  if (r.worst_excess > 100.0 * std::max(target, opt.noise_floor * (b - a)))
    throw EngineError("quadrature did not converge: achieved error ~" +
                      std::to_string(r.worst_excess) + " on [" + std::to_string(a) + ", " +
                      std::to_string(b) + "]");
  return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  return integrate_impl<double>(f, a, b, opt);
}

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f,
                                 double a, double b, const QuadOptions& opt) {
  return integrate_impl<std::complex<double>>(f, a, b, opt);
}

double integrate_log(const std::function<double(double)>& log_f, double a, double b,
                     const QuadOptions& opt) {
  if (!(b > a)) return kNegInf;
  long n = std::max(1L, static_cast<long>(std::ceil((b - a) / opt.max_step)));
  double h = (b - a) / static_cast<double>(n);
  double acc = kNegInf;
  for (long i = 0; i < n; ++i) {
    double x0 = a + h * static_cast<double>(i);
    double x1 = i + 1 == n ? b : x0 + h;
    // Shift by the panel's max so the scaled integrand stays within [0, 1].
    double shift = std::max({log_f(x0), log_f(0.5 * (x0 + x1)), log_f(x1)});
    if (shift == kNegInf) continue;
    if (std::isnan(shift))
      throw EngineError("log-domain quadrature: integrand undefined near t=" + std::to_string(x0));
    QuadOptions panel = opt;
    panel.abs_tol = opt.rel_tol;  // relative accuracy on the scaled panel
    panel.max_step = x1 - x0;
    double scaled = integrate([&](double t) { return std::exp(log_f(t) - shift); }, x0, x1, panel);
    if (scaled <= 0) continue;
    double panel_log = shift + std::log(scaled);
    if (acc == kNegInf) acc = panel_log;
    else {
      double hi = std::max(acc, panel_log), lo = std::min(acc, panel_log);
      acc = hi + std::log1p(std::exp(lo - hi));
    }
  }
  return acc;
}

}  // namespace dwpap
