#include "dwpap/function_handle.hpp"

#include <cmath>
#include <stdexcept>

namespace dwpap {

FunctionHandle make_handle(const TrigPoly& p, std::string label) {
  FunctionHandle h;
  h.eval = [p](double t) { return p.eval(t); };
  h.dim = p.dim();
  h.osc_bound = p.max_frequency();
  h.sup_bound = p.coeff_l1();
  h.label = std::move(label);
  return h;
}

FunctionHandle make_scalar_handle(std::function<double(double)> f, std::string label,
                                  std::optional<double> sup_bound, double osc_bound) {
  FunctionHandle h;
  h.eval = [f = std::move(f)](double t) { return CVec{std::complex<double>(f(t), 0.0)}; };
  h.dim = 1;
  h.osc_bound = osc_bound;
  h.sup_bound = sup_bound;
  h.label = std::move(label);
  return h;
}

FunctionHandle add_handles(const FunctionHandle& a, const FunctionHandle& b) {
  if (a.dim != b.dim) throw std::invalid_argument("function handles: dimension mismatch");
  FunctionHandle h;
  h.eval = [ea = a.eval, eb = b.eval, d = a.dim](double t) {
    CVec va = ea(t), vb = eb(t);
    for (int k = 0; k < d; ++k) va[k] += vb[k];
    return va;
  };
  h.dim = a.dim;
  h.osc_bound = std::max(a.osc_bound, b.osc_bound);
  if (a.sup_bound && b.sup_bound) h.sup_bound = *a.sup_bound + *b.sup_bound;
  h.eval_noise = a.eval_noise + b.eval_noise;
  h.label = a.label + "+" + b.label;
  return h;
}

FunctionHandle shift_handle(const FunctionHandle& f, double s) {
  FunctionHandle h = f;
  h.eval = [e = f.eval, s](double t) { return e(t + s); };
  h.label = f.label + "(shifted)";
  return h;
}

FunctionHandle catalog_handle(const std::string& name) {
  if (name == "lorentz")
    return make_scalar_handle([](double t) { return 1.0 / (1.0 + t * t); }, "lorentz", 1.0);
  if (name == "abs_decay")
    return make_scalar_handle([](double t) { return 1.0 / (1.0 + std::fabs(t)); }, "abs_decay", 1.0);
  if (name == "exp_decay")
    return make_scalar_handle([](double t) { return std::exp(-std::fabs(t)); }, "exp_decay", 1.0);
  if (name == "one") return make_scalar_handle([](double) { return 1.0; }, "one", 1.0);
  if (name == "zero") return make_scalar_handle([](double) { return 0.0; }, "zero", 0.0);
  throw std::invalid_argument("unknown catalog function '" + name + "'");
}

}  // namespace dwpap
