#pragma once

#include "dwpap/ergodic.hpp"

namespace dwpap {

// Frequency coefficient a(f, lambda) = lim (1/2T) integral f e^{-i lambda t}.
// The trig-poly overload is exact (stored coefficient or zero); the handle
// overload runs the averaging engine against the unit weight pair.
struct BohrCoefficient {
  double lambda = 0;
  CVec value;
  ErgodicCurve curve;
};

CVec bohr_transform(const TrigPoly& p, double lambda);
CVec bohr_mean_exact(const TrigPoly& p);
BohrCoefficient bohr_transform(const FunctionHandle& f, double lambda, const Schedule& s);

struct SpectrumPoint {
  double lambda = 0;
  CVec value;
  double magnitude = 0;
};

// Grid scan keeping the points whose coefficient magnitude clears the
// detection threshold; points come back sorted by frequency.
struct SpectrumSet {
  double threshold = 0;
  std::vector<SpectrumPoint> points;
};

SpectrumSet bohr_spectrum_scan(const TrigPoly& p, const std::vector<double>& grid,
                               double threshold);
SpectrumSet bohr_spectrum_scan(const FunctionHandle& f, const std::vector<double>& grid,
                               double threshold, const Schedule& s);

// max over the grid of || f(t) - p(t) ||.
double sup_error(const FunctionHandle& f, const TrigPoly& p, const std::vector<double>& grid);

}  // namespace dwpap
