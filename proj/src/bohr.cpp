#include "dwpap/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwpap {

namespace {

const Weight& unit_weight() {
  static const Weight one = make_weight("1");
  return one;
}

double norm2(const CVec& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

CVec bohr_transform(const TrigPoly& p, double lambda) { return p.coefficient(lambda); }

CVec bohr_mean_exact(const TrigPoly& p) { return p.mean(); }

BohrCoefficient bohr_transform(const FunctionHandle& f, double lambda, const Schedule& s) {
  FunctionHandle g;
  g.eval = [e = f.eval, lambda, d = f.dim](double t) {
    CVec v = e(t);
    std::complex<double> phase = std::polar(1.0, -lambda * t);
    for (int k = 0; k < d; ++k) v[k] *= phase;
    return v;
  };
  g.dim = f.dim;
  g.osc_bound = f.osc_bound + std::fabs(lambda);
  g.sup_bound = f.sup_bound;
  {
    std::ostringstream l;
    l << f.label << "*e^(-i*" << lambda << "*t)";
    g.label = l.str();
  }
  BohrCoefficient out;
  out.lambda = lambda;
  out.curve = ergodic_curve(g, unit_weight(), unit_weight(), s, AverageMode::Raw);
  out.value = out.curve.verdict.estimate;
  return out;
}

SpectrumSet bohr_spectrum_scan(const TrigPoly& p, const std::vector<double>& grid,
                               double threshold) {
  SpectrumSet out;
  out.threshold = threshold;
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (double lambda : sorted) {
    CVec a = p.coefficient(lambda);
    double m = norm2(a);
    if (m > threshold) out.points.push_back({lambda, std::move(a), m});
  }
  return out;
}

SpectrumSet bohr_spectrum_scan(const FunctionHandle& f, const std::vector<double>& grid,
                               double threshold, const Schedule& s) {
  SpectrumSet out;
  out.threshold = threshold;
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (double lambda : sorted) {
    BohrCoefficient c = bohr_transform(f, lambda, s);
    double m = norm2(c.value);
    if (m > threshold) out.points.push_back({lambda, std::move(c.value), m});
  }
  return out;
}

double sup_error(const FunctionHandle& f, const TrigPoly& p, const std::vector<double>& grid) {
  if (f.dim != p.dim()) throw std::invalid_argument("sup_error: dimension mismatch");
  double worst = 0;
  for (double t : grid) {
    CVec a = f.eval(t), b = p.eval(t);
    double s = 0;
    for (int k = 0; k < f.dim; ++k) s += std::norm(a[k] - b[k]);
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace dwpap
