#include "oqs/element.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs {

Picture& addPictureParameter(ParameterTable& p) {
  return p.add("picture", "quantum mechanical picture (Sch|UIP|IP)", Picture::UIP);
}

Element::Element(std::vector<int> legDims, std::string label)
    : legDims_(std::move(legDims)), label_(std::move(label)) {
  if (legDims_.empty()) throw std::invalid_argument("element needs at least one leg");
  for (int d : legDims_)
    if (d < 1) throw std::invalid_argument("element leg dimensions must be positive");
}

Interaction::Interaction(std::vector<std::shared_ptr<const Element>> constituents,
                         std::string label)
    : Element(
          [&] {
            std::vector<int> dims;
            for (const auto& c : constituents) {
              if (!c) throw std::invalid_argument("interaction constituent is null");
              dims.insert(dims.end(), c->legDims().begin(), c->legDims().end());
            }
            return dims;
          }(),
          std::move(label)),
      constituents_(std::move(constituents)) {
  if (constituents_.size() < 2)
    throw std::invalid_argument("interaction needs at least two constituents");
}

void addHamiltonianContribution(const Element& e, double t, const StateVector& psi,
                                StateVector& dpsidt) {
  if (psi.dims() != e.legDims() || dpsidt.dims() != e.legDims())
    throw std::invalid_argument("leg dimension mismatch");
  const auto* h = dynamic_cast<const Hamiltonian*>(&e);
  if (!h) return;
  for (const ProductTerm& term : h->hamiltonianTerms())
    applyProductTerm(term, t, psi, dpsidt);
}

std::vector<RatedChannel> jumpChannels(const Element& e, double t, const StateVector& psi) {
  const auto* j = dynamic_cast<const Jumps*>(&e);
  if (!j) return {};
  const double n = psi.norm();
  const double n2 = n * n;
  std::vector<RatedChannel> out;
  StateVector scratch(psi.dims());
  for (const JumpChannel& ch : j->jumpChannelList()) {
    scratch.setZero();
    applyProductTerm(ch.op, t, psi, scratch);
    const double jn = scratch.norm();
    out.push_back({n2 > 0 ? jn * jn / n2 : 0.0, &ch});
  }
  return out;
}

const DiagonalPropagator* exactPropagator(const Element& e) {
  const auto* x = dynamic_cast<const ExactPropagation*>(&e);
  return x ? &x->propagator() : nullptr;
}

std::vector<double> average(const Element& e, double t, const StateVector& psi) {
  const auto* o = dynamic_cast<const Observables*>(&e);
  return o ? o->average(t, psi) : std::vector<double>{};
}

std::vector<double> average(const Element& e, double t, const DensityOperator& rho) {
  const auto* o = dynamic_cast<const Observables*>(&e);
  return o ? o->average(t, rho) : std::vector<double>{};
}

StateVector applyJumpOperator(const JumpChannel& channel, double t, const StateVector& psi) {
  StateVector out(psi.dims());
  applyProductTerm(channel.op, t, psi, out);
  return out;
}

}  // namespace oqs
