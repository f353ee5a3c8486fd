#pragma once

#include <complex>
#include <functional>

namespace dwpap {

// Adaptive composite Simpson settings.
//
// The interval is first cut into uniform panels no wider than max_step (the
// oscillation bound: integrands containing e^{i lambda t} use
// max_step <= pi / (4 * lambda) so a panel never spans more than an eighth of
// a period), then each panel is refined until the Richardson error estimate
// meets its share of the tolerance.  noise_floor is an error-per-unit-length
// floor for integrands that are themselves computed numerically; refinement
// below that level would chase noise.
struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.25;
  int max_depth = 28;
  double noise_floor = 0.0;
};

// Throws EngineError when the refinement budget is exhausted with the
// achieved error still far from the target, or on non-finite samples.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt);

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f,
                                 double a, double b, const QuadOptions& opt);

// log of the integral of exp(log_f) over [a, b]: each panel is shifted by its
// own maximum before exponentiating, so exponentially growing integrands never
// overflow.  Returns -inf when the integrand is zero throughout.
double integrate_log(const std::function<double(double)>& log_f, double a, double b,
                     const QuadOptions& opt);

}  // namespace dwpap
