#include "oqs/composite.hpp"

#include <algorithm>
#include <stdexcept>

namespace oqs {

bool QuantumSystem::allPropagatorsUnitary() const {
  for (const DiagonalPropagator& u : propagators())
    if (!u.unitary()) return false;
  return true;
}

void QuantumSystem::addDerivative(double t, std::span<const complex> psi,
                                  std::span<complex> dpsidt) const {
  for (const ProductTerm& term : derivativeTerms())
    applyProductTerm(term, t, dims(), psi, dpsidt);
}

void QuantumSystem::addDerivative(double t, const StateVector& psi,
                                  StateVector& dpsidt) const {
  if (psi.dims() != dims() || dpsidt.dims() != dims())
    throw std::invalid_argument("leg dimension mismatch");
  addDerivative(t, psi.amplitudes(), dpsidt.amplitudes());
}

SingleSystem::SingleSystem(std::shared_ptr<const Element> element)
    : element_(std::move(element)) {
  if (!element_) throw std::invalid_argument("system element is null");
  if (const auto* h = dynamic_cast<const Hamiltonian*>(element_.get()))
    terms_ = h->hamiltonianTerms();
  if (const auto* j = dynamic_cast<const Jumps*>(element_.get()))
    for (const JumpChannel& ch : j->jumpChannelList())
      channels_.push_back({0, element_->label() + "." + ch.label, ch.op});
  if (const DiagonalPropagator* u = exactPropagator(*element_)) propagators_.push_back(*u);
  if (const auto* o = dynamic_cast<const Observables*>(element_.get())) {
    const auto key = o->displayKey();
    blocks_.push_back({element_->label(), {key.begin(), key.end()}});
  }
}

const std::vector<int>& SingleSystem::dims() const { return element_->legDims(); }

std::vector<double> SingleSystem::displayValues(double t, const StateVector& psiSch) const {
  return average(*element_, t, psiSch);
}

std::vector<double> SingleSystem::displayValues(double t,
                                                const DensityOperator& rhoSch) const {
  return average(*element_, t, rhoSch);
}

PartySelector SingleSystem::legsOfFrees(const PartySelector& frees) const {
  frees.checkProper(1);  // a single free can never split into two parties
  return frees;
}

Act::Act(std::vector<int> legs_, std::shared_ptr<const Element> interaction_)
    : legs(std::move(legs_)), interaction(std::move(interaction_)) {
  if (!interaction) throw std::invalid_argument("act interaction is null");
  if (legs.size() < 2) throw std::invalid_argument("act needs at least two legs");
}

Act::Act(std::initializer_list<int> legs_, std::shared_ptr<const Element> interaction_)
    : Act(std::vector<int>(legs_), std::move(interaction_)) {}

Composite::Composite(std::vector<std::shared_ptr<const Element>> frees, std::vector<Act> acts)
    : frees_(std::move(frees)), acts_(std::move(acts)) {
  if (frees_.empty()) throw std::invalid_argument("composite needs at least one free");
  if (acts_.empty()) throw std::invalid_argument("composite needs at least one act");

  legOffset_.reserve(frees_.size());
  for (const auto& f : frees_) {
    if (!f) throw std::invalid_argument("composite free is null");
    legOffset_.push_back(static_cast<int>(dims_.size()));
    dims_.insert(dims_.end(), f->legDims().begin(), f->legDims().end());
  }
  if (dims_.size() > static_cast<std::size_t>(kMaxRank))
    throw std::invalid_argument("composite rank exceeds the supported maximum");

  std::vector<bool> referenced(frees_.size(), false);

  for (std::size_t k = 0; k < acts_.size(); ++k) {
    const Act& act = acts_[k];
    const auto& idims = act.interaction->legDims();
    if (act.legs.size() != idims.size())
      throw std::invalid_argument("act #" + std::to_string(k) +
                                  " arity does not match the interaction");

    for (std::size_t j = 0; j < act.legs.size(); ++j) {
      const int ord = act.legs[j];
      if (ord < 0 || ord >= freeCount())
        throw std::invalid_argument("act #" + std::to_string(k) + " leg #" +
                                    std::to_string(j) + ": no free with ordinal " +
                                    std::to_string(ord));
      if (std::count(act.legs.begin(), act.legs.end(), ord) > 1)
        throw std::invalid_argument("duplicate leg ordinal in act #" + std::to_string(k));
    }

    std::vector<int> systemLegs;
    for (std::size_t j = 0; j < act.legs.size(); ++j) {
      const int ord = act.legs[j];
      const auto& fdims = frees_[ord]->legDims();
      if (fdims.size() != 1)
        throw std::invalid_argument("act wiring requires one-leg frees");
      if (idims[j] != fdims[0])
        throw std::invalid_argument(
            "layout inconsistency at act #" + std::to_string(k) + " leg #" +
            std::to_string(j) + ": interaction dim " + std::to_string(idims[j]) +
            " vs free dim " + std::to_string(fdims[0]));
      referenced[ord] = true;
      systemLegs.push_back(legOffset_[ord]);
    }

    if (const auto* h = dynamic_cast<const Hamiltonian*>(act.interaction.get()))
      for (const ProductTerm& term : h->hamiltonianTerms()) {
        std::vector<int> legOfFactor;
        for (const auto& [leg, op] : term.factors()) legOfFactor.push_back(systemLegs.at(leg));
        terms_.push_back(term.remapLegs(legOfFactor));
      }
    if (dynamic_cast<const Jumps*>(act.interaction.get()))
      throw std::invalid_argument("interaction jump channels are not supported");
    if (const auto* o = dynamic_cast<const Observables*>(act.interaction.get())) {
      const auto key = o->displayKey();
      if (!key.empty()) {
        blocks_.push_back({"act" + std::to_string(k) + ":" + act.interaction->label(),
                           {key.begin(), key.end()}});
        interactionDisplays_.push_back({o, systemLegs});
      }
    }
  }

  for (std::size_t f = 0; f < frees_.size(); ++f)
    if (!referenced[f])
      throw std::invalid_argument("free #" + std::to_string(f) +
                                  " is not referenced by any act");

  // free contributions come first so blocks and channels stay in free order
  std::vector<DisplayBlock> interactionBlocks = std::move(blocks_);
  blocks_.clear();
  for (std::size_t f = 0; f < frees_.size(); ++f) {
    const Element& el = *frees_[f];
    if (const auto* h = dynamic_cast<const Hamiltonian*>(&el))
      for (const ProductTerm& term : h->hamiltonianTerms()) {
        std::vector<int> legOfFactor;
        for (const auto& [leg, op] : term.factors())
          legOfFactor.push_back(legOffset_[f] + leg);
        terms_.push_back(term.remapLegs(legOfFactor));
      }
    if (const auto* j = dynamic_cast<const Jumps*>(&el))
      for (const JumpChannel& ch : j->jumpChannelList()) {
        std::vector<int> legOfFactor;
        for (const auto& [leg, op] : ch.op.factors())
          legOfFactor.push_back(legOffset_[f] + leg);
        channels_.push_back({static_cast<int>(f),
                             std::to_string(f) + ":" + el.label() + "." + ch.label,
                             ch.op.remapLegs(legOfFactor)});
      }
    if (const DiagonalPropagator* u = exactPropagator(el)) {
      DiagonalPropagator lifted = *u;
      lifted.leg += legOffset_[f];
      propagators_.push_back(std::move(lifted));
    }
    if (const auto* o = dynamic_cast<const Observables*>(&el)) {
      const auto key = o->displayKey();
      blocks_.push_back({std::to_string(f) + ":" + el.label(), {key.begin(), key.end()}});
    }
  }
  blocks_.insert(blocks_.end(), interactionBlocks.begin(), interactionBlocks.end());
}

std::vector<double> Composite::displayFrom(
    double t, const std::function<DensityOperator(std::span<const int>)>& reduce) const {
  std::vector<double> values;
  for (std::size_t f = 0; f < frees_.size(); ++f) {
    const auto* o = dynamic_cast<const Observables*>(frees_[f].get());
    if (!o) continue;
    std::vector<int> legs;
    for (std::size_t l = 0; l < frees_[f]->legDims().size(); ++l)
      legs.push_back(legOffset_[f] + static_cast<int>(l));
    DensityOperator red = reduce(legs);
    const complex tr = red.trace();
    if (std::abs(tr) > 0) red *= complex{1.0} / tr;
    const auto vals = o->average(t, red);
    values.insert(values.end(), vals.begin(), vals.end());
  }
  for (const InteractionDisplay& d : interactionDisplays_) {
    std::vector<int> sorted = d.legs;
    std::sort(sorted.begin(), sorted.end());
    DensityOperator red = reduce(sorted);
    // bring the reduced legs into the interaction's leg order
    std::vector<int> perm(d.legs.size());
    for (std::size_t k = 0; k < d.legs.size(); ++k)
      perm[k] = static_cast<int>(std::find(sorted.begin(), sorted.end(), d.legs[k]) -
                                 sorted.begin());
    red = permuteLegs(red, perm);
    const complex tr = red.trace();
    if (std::abs(tr) > 0) red *= complex{1.0} / tr;
    const auto vals = d.obs->average(t, red);
    values.insert(values.end(), vals.begin(), vals.end());
  }
  return values;
}

std::vector<double> Composite::displayValues(double t, const StateVector& psiSch) const {
  return displayFrom(t, [&](std::span<const int> legs) {
    if (legs.size() == dims_.size()) return dyad(psiSch);
    return reducedDensity(psiSch, PartySelector({legs.begin(), legs.end()}));
  });
}

std::vector<double> Composite::displayValues(double t, const DensityOperator& rhoSch) const {
  return displayFrom(t, [&](std::span<const int> legs) {
    if (legs.size() == dims_.size()) return rhoSch;
    return partialTrace(rhoSch, PartySelector({legs.begin(), legs.end()}));
  });
}

PartySelector Composite::legsOfFrees(const PartySelector& frees) const {
  frees.checkProper(freeCount());
  std::vector<int> legs;
  for (int f : frees.legs())
    for (std::size_t l = 0; l < frees_[f]->legDims().size(); ++l)
      legs.push_back(legOffset_[f] + static_cast<int>(l));
  return PartySelector(std::move(legs));
}

Composite makeComposite(std::vector<std::shared_ptr<const Element>> frees,
                        std::vector<Act> acts) {
  return Composite(std::move(frees), std::move(acts));
}

Composite makeBinary(std::shared_ptr<const Interaction> interaction) {
  if (!interaction) throw std::invalid_argument("binary interaction is null");
  const auto cs = interaction->constituents();
  if (cs.size() != 2)
    throw std::invalid_argument("binary system needs a two-leg interaction");
  std::vector<std::shared_ptr<const Element>> frees(cs.begin(), cs.end());
  std::vector<Act> acts;
  acts.emplace_back(std::vector<int>{0, 1}, interaction);
  return Composite(std::move(frees), std::move(acts));
}

}  // namespace oqs
