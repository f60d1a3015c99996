#pragma once

#include <memory>

#include "oqs/element.hpp"
#include "oqs/params.hpp"

namespace oqs {

namespace jaynescummings {

struct Pars {
  complex g{};  // coupling

  Pars() = default;
  explicit Pars(ParameterTable& p, const std::string& prefix = "");
};

// H = i(conj(g) a sigma^dag - g a^dag sigma); legs (qbit, mode). Accepts any
// two-level first constituent and any mode variant; the factors pick up the
// constituents' interaction-picture frequencies.
std::shared_ptr<const Interaction> make(std::shared_ptr<const Element> qbit,
                                        std::shared_ptr<const Element> mode,
                                        const Pars& p);

}  // namespace jaynescummings

// H = coupling * (A B C) + h.c. with A, B, C the lowering operators of the
// three constituents, in argument order. Exercises three-leg wiring.
std::shared_ptr<const Interaction> makeTernaryCoupling(std::shared_ptr<const Element> f0,
                                                       std::shared_ptr<const Element> f1,
                                                       std::shared_ptr<const Element> f2,
                                                       complex coupling);

}  // namespace oqs
