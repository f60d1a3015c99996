#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oqs/element.hpp"
#include "oqs/state.hpp"
#include "oqs/tridiagonal.hpp"

namespace oqs {

struct LiftedChannel {
  int freeOrdinal = 0;
  std::string label;
  ProductTerm op;  // legs are system legs
};

struct DisplayBlock {
  std::string label;
  std::vector<std::string> key;
};

// What the time-evolution drivers consume: a fixed leg layout with the
// aggregated Hamiltonian action, jump channels, exact propagators and the
// per-subsystem display. Immutable after construction, shared read-only.
class QuantumSystem {
public:
  virtual ~QuantumSystem() = default;

  virtual const std::vector<int>& dims() const = 0;
  std::size_t totalDim() const { return checkedProduct(dims()); }

  // the product terms making up -i H_nh, with system legs
  virtual std::span<const ProductTerm> derivativeTerms() const = 0;

  // dpsidt += -i H_nh(t) psi
  void addDerivative(double t, const StateVector& psi, StateVector& dpsidt) const;
  void addDerivative(double t, std::span<const complex> psi, std::span<complex> dpsidt) const;

  virtual std::span<const LiftedChannel> jumpChannels() const = 0;
  virtual std::span<const DiagonalPropagator> propagators() const = 0;
  bool allPropagatorsUnitary() const;

  virtual std::span<const DisplayBlock> displayBlocks() const = 0;
  virtual std::vector<double> displayValues(double t, const StateVector& psiSch) const = 0;
  virtual std::vector<double> displayValues(double t, const DensityOperator& rhoSch) const = 0;

  // maps a party of free ordinals onto the corresponding legs
  virtual PartySelector legsOfFrees(const PartySelector& frees) const = 0;
};

// A single free element evolved on its own.
class SingleSystem final : public QuantumSystem {
public:
  explicit SingleSystem(std::shared_ptr<const Element> element);

  const std::vector<int>& dims() const override;
  std::span<const ProductTerm> derivativeTerms() const override { return terms_; }
  std::span<const LiftedChannel> jumpChannels() const override { return channels_; }
  std::span<const DiagonalPropagator> propagators() const override { return propagators_; }
  std::span<const DisplayBlock> displayBlocks() const override { return blocks_; }
  std::vector<double> displayValues(double t, const StateVector& psiSch) const override;
  std::vector<double> displayValues(double t, const DensityOperator& rhoSch) const override;
  PartySelector legsOfFrees(const PartySelector& frees) const override;

private:
  std::shared_ptr<const Element> element_;
  std::span<const ProductTerm> terms_;  // borrowed from the element
  std::vector<LiftedChannel> channels_;
  std::vector<DiagonalPropagator> propagators_;
  std::vector<DisplayBlock> blocks_;
};

// Wires one interaction's legs to the row of frees; ordinals begin with 0
// and the leg order of the interaction is significant.
struct Act {
  std::vector<int> legs;
  std::shared_ptr<const Element> interaction;

  Act(std::vector<int> legs, std::shared_ptr<const Element> interaction);
  Act(std::initializer_list<int> legs, std::shared_ptr<const Element> interaction);
};

// A validated network of frees and interactions. Layout inconsistencies are
// rejected at construction with descriptive errors.
class Composite final : public QuantumSystem {
public:
  Composite(std::vector<std::shared_ptr<const Element>> frees, std::vector<Act> acts);

  const std::vector<int>& dims() const override { return dims_; }
  std::span<const ProductTerm> derivativeTerms() const override { return terms_; }
  std::span<const LiftedChannel> jumpChannels() const override { return channels_; }
  std::span<const DiagonalPropagator> propagators() const override { return propagators_; }
  std::span<const DisplayBlock> displayBlocks() const override { return blocks_; }
  std::vector<double> displayValues(double t, const StateVector& psiSch) const override;
  std::vector<double> displayValues(double t, const DensityOperator& rhoSch) const override;
  PartySelector legsOfFrees(const PartySelector& frees) const override;

  int freeCount() const { return static_cast<int>(frees_.size()); }
  const Element& free(int ordinal) const { return *frees_.at(ordinal); }

private:
  struct InteractionDisplay {
    const Observables* obs;
    std::vector<int> legs;  // system legs in interaction leg order
  };

  std::vector<double> displayFrom(
      double t, const std::function<DensityOperator(std::span<const int>)>& reduce) const;

  std::vector<std::shared_ptr<const Element>> frees_;
  std::vector<Act> acts_;
  std::vector<int> dims_;
  std::vector<int> legOffset_;  // first leg of each free
  std::vector<ProductTerm> terms_;
  std::vector<LiftedChannel> channels_;
  std::vector<DiagonalPropagator> propagators_;
  std::vector<DisplayBlock> blocks_;
  std::vector<InteractionDisplay> interactionDisplays_;
};

Composite makeComposite(std::vector<std::shared_ptr<const Element>> frees,
                        std::vector<Act> acts);

// BinarySystem: the two-free special case whose layout follows from the
// single interaction element.
Composite makeBinary(std::shared_ptr<const Interaction> interaction);

}  // namespace oqs
