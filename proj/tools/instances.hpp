#pragma once

#include <string>
#include <vector>

#include "dwpap/transforms.hpp"

namespace dwpap {

// Built-in two-variable composition examples exposed by the CLI; the library
// API accepts arbitrary split forms, but a command line cannot carry a
// function, so compose-check picks from this catalog by name.
struct CompositionInstance {
  std::string name;
  std::string description;
  TwoVarFunction F;
  TrigPoly h1;
  FunctionHandle h2;
  std::string mu_text = "1";
  std::string nu_text = "1";
};

const std::vector<CompositionInstance>& composition_instances();

// nullptr when no instance has that name.
const CompositionInstance* find_composition_instance(const std::string& name);

}  // namespace dwpap
