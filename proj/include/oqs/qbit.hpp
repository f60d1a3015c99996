#pragma once

#include <memory>
#include <string>

#include "oqs/element.hpp"
#include "oqs/params.hpp"
#include "oqs/state.hpp"

namespace oqs::qbit {

// Convention mirrors the mode with sigma = |0><1| as the lowering operator:
// H = -delta sigma^dag sigma + i(eta sigma^dag - conj(eta) sigma), J = sqrt(2 gamma) sigma.
struct Pars {
  double delta = 0;  // atomic detuning, flag --deltaA
  double gamma = 0;  // decay rate
  complex eta{};     // qbit pump, flag --etaA
  std::string initSpec = "(1,0):(0,0)";  // "(cg):(ce)", flag --qbitInit

  Pars() = default;
  explicit Pars(ParameterTable& p, const std::string& prefix = "");
};

std::shared_ptr<const Element> make(const Pars& p, Picture picture);

StateVector state0();
StateVector state1();
// normalized (c_g, c_e)
StateVector initState(complex cg, complex ce);
StateVector init(const Pars& p);

}  // namespace oqs::qbit
