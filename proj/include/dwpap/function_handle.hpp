#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dwpap/trig_poly.hpp"

namespace dwpap {

// Black-box bounded continuous function fed to the averaging engine.
// osc_bound is the largest frequency the evaluator can contain; the engine
// derives its quadrature step from it (0 means "no oscillation declared").
// sup_bound is a declared bound on the Euclidean norm, required by the
// convolution operations.
struct FunctionHandle {
  std::function<CVec(double)> eval;
  int dim = 1;
  double osc_bound = 0.0;
  std::optional<double> sup_bound;
  double eval_noise = 0.0;  // absolute evaluator noise (e.g. an inner quadrature
                            // tolerance); averaging stops refining below it
  std::string label;
};

FunctionHandle make_handle(const TrigPoly& p, std::string label = "trig-poly");
FunctionHandle make_scalar_handle(std::function<double(double)> f, std::string label,
                                  std::optional<double> sup_bound = std::nullopt,
                                  double osc_bound = 0.0);
FunctionHandle add_handles(const FunctionHandle& a, const FunctionHandle& b);
FunctionHandle shift_handle(const FunctionHandle& f, double s);

// Named test functions understood by the command line tool:
//   lorentz   1/(1+t^2)        abs_decay  1/(1+|t|)
//   exp_decay e^{-|t|}         one        1          zero  0
FunctionHandle catalog_handle(const std::string& name);

}  // namespace dwpap
