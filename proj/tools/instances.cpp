#include "instances.hpp"

#include <cmath>

#include "dwpap/trig_spec.hpp"

namespace dwpap {

namespace {

CompositionInstance make_sin_product() {
  CompositionInstance inst;
  inst.name = "sin-product";
  inst.description = "F(t,u) = sin(u) cos(t), no split remainder; h1 = cos(t), h2 = 1/(1+t^2)";
  inst.F.g = [](double t, const CVec& u) { return CVec{std::sin(u[0].real()) * std::cos(t)}; };
  inst.F.phi = [](double, const CVec&) { return CVec{0.0}; };
  inst.F.f = [](double t, const CVec& u) { return CVec{std::sin(u[0].real()) * std::cos(t)}; };
  inst.F.lipschitz = 1.0;
  inst.F.osc_bound = 1.0;
  inst.F.label = "sin(u)*cos(t)";
  inst.h1 = parse_trig_text("cos(1*t)");
  inst.h2 = catalog_handle("lorentz");
  return inst;
}

CompositionInstance make_zero_tail() {
  CompositionInstance inst = make_sin_product();
  inst.name = "zero-tail";
  inst.description = "same map with h2 = 0: the remainder vanishes identically";
  inst.h2 = catalog_handle("zero");
  return inst;
}

CompositionInstance make_linear_drift() {
  CompositionInstance inst;
  inst.name = "linear-drift";
  inst.description =
      "F(t,u) = u(2+cos(t)) + u e^{-|t|} split as G(t,u) = u(2+cos(t)); h1 = sin(t), h2 = 1/(1+t^2)";
  inst.F.g = [](double t, const CVec& u) { return CVec{u[0] * (2.0 + std::cos(t))}; };
  inst.F.phi = [](double t, const CVec& u) { return CVec{u[0] * std::exp(-std::fabs(t))}; };
  inst.F.f = [](double t, const CVec& u) {
    return CVec{u[0] * (2.0 + std::cos(t) + std::exp(-std::fabs(t)))};
  };
  inst.F.lipschitz = 4.0;
  inst.F.osc_bound = 1.0;
  inst.F.label = "u*(2+cos(t))+u*exp(-|t|)";
  inst.h1 = parse_trig_text("sin(1*t)");
  inst.h2 = catalog_handle("lorentz");
  return inst;
}

}  // namespace

const std::vector<CompositionInstance>& composition_instances() {
  static const std::vector<CompositionInstance> catalog = {
      make_sin_product(), make_zero_tail(), make_linear_drift()};
  return catalog;
}

const CompositionInstance* find_composition_instance(const std::string& name) {
  for (const auto& inst : composition_instances())
    if (inst.name == name) return &inst;
  return nullptr;
}

}  // namespace dwpap
