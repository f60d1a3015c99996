#pragma once

#include <memory>
#include <string>

#include "oqs/element.hpp"
#include "oqs/params.hpp"
#include "oqs/state.hpp"

namespace oqs::mode {

// Convention: H = -delta a^dag a + i(eta a^dag - conj(eta) a), J = sqrt(2 kappa) a,
// so <n> of a free decaying mode follows exp(-2 kappa t).
struct Pars {
  double delta = 0;     // cavity detuning, flag --deltaC
  double kappa = 0;     // loss rate
  complex eta{};        // pump amplitude
  int cutoff = 10;      // Fock truncation
  complex minit{};      // coherent initial amplitude
  int minitFock = 0;    // Fock initial state, effective when given explicitly
  bool minitFockGiven = false;

  Pars() = default;
  explicit Pars(ParameterTable& p, const std::string& prefix = "");
};

// Dispatches the variant fitting the parameters and the picture; non-lossy
// variants carry no jump channels at all, Sch variants no propagator.
std::shared_ptr<const Element> make(const Pars& p, Picture picture);

StateVector coherent(complex alpha, int cutoff);
StateVector fock(int n, int cutoff);

// Fock state when minitFock was set (explicitly, or left nonzero by hand),
// coherent(minit) otherwise.
StateVector init(const Pars& p);

}  // namespace oqs::mode
