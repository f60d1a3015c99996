#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oqs/params.hpp"
#include "oqs/state.hpp"
#include "oqs/tridiagonal.hpp"

namespace oqs {

enum class Picture { Sch, UIP, IP };

template <>
struct ValueIO<Picture> {
  static const char* typeName() { return "enum"; }
  static std::string print(Picture p) {
    switch (p) {
      case Picture::Sch: return "Sch";
      case Picture::UIP: return "UIP";
      default: return "IP";
    }
  }
  static bool parse(const std::string& s, Picture& out) {
    if (s == "Sch") out = Picture::Sch;
    else if (s == "UIP") out = Picture::UIP;
    else if (s == "IP") out = Picture::IP;
    else return false;
    return true;
  }
};

Picture& addPictureParameter(ParameterTable& p);

// An elementary free subsystem or an interaction between frees. What an
// element can do beyond owning legs is expressed by the role interfaces
// below; a variant that has no jumps simply does not implement Jumps.
class Element {
public:
  Element(std::vector<int> legDims, std::string label);
  virtual ~Element() = default;

  const std::vector<int>& legDims() const { return legDims_; }
  const std::string& label() const { return label_; }

private:
  std::vector<int> legDims_;
  std::string label_;
};

// contributes dpsi/dt += sum of terms, each term being part of -i H_nh
class Hamiltonian {
public:
  virtual ~Hamiltonian() = default;
  virtual std::span<const ProductTerm> hamiltonianTerms() const = 0;
};

struct JumpChannel {
  std::string label;
  ProductTerm op;  // the jump operator J; rate = |J psi|^2 / |psi|^2
};

class Jumps {
public:
  virtual ~Jumps() = default;
  virtual std::span<const JumpChannel> jumpChannelList() const = 0;
};

class ExactPropagation {
public:
  virtual ~ExactPropagation() = default;
  virtual const DiagonalPropagator& propagator() const = 0;
};

class Observables {
public:
  virtual ~Observables() = default;
  virtual std::span<const std::string> displayKey() const = 0;
  virtual std::vector<double> average(double t, const StateVector& psi) const = 0;
  virtual std::vector<double> average(double t, const DensityOperator& rho) const = 0;
};

// convenience bases for elements that keep their contributions as plain data
class HamiltonianTerms : public Hamiltonian {
public:
  explicit HamiltonianTerms(std::vector<ProductTerm> terms) : terms_(std::move(terms)) {}
  std::span<const ProductTerm> hamiltonianTerms() const override { return terms_; }

protected:
  std::vector<ProductTerm> terms_;
};

class JumpList : public Jumps {
public:
  explicit JumpList(std::vector<JumpChannel> channels) : channels_(std::move(channels)) {}
  std::span<const JumpChannel> jumpChannelList() const override { return channels_; }

protected:
  std::vector<JumpChannel> channels_;
};

class StoredPropagator : public ExactPropagation {
public:
  explicit StoredPropagator(DiagonalPropagator u) : u_(std::move(u)) {}
  const DiagonalPropagator& propagator() const override { return u_; }

protected:
  DiagonalPropagator u_;
};

// An interaction knows the frees it couples, in leg order.
class Interaction : public Element {
public:
  Interaction(std::vector<std::shared_ptr<const Element>> constituents, std::string label);

  std::span<const std::shared_ptr<const Element>> constituents() const {
    return constituents_;
  }

private:
  std::vector<std::shared_ptr<const Element>> constituents_;
};

// ----- contract-level free functions -----

void addHamiltonianContribution(const Element& e, double t, const StateVector& psi,
                                StateVector& dpsidt);

struct RatedChannel {
  double rate = 0;
  const JumpChannel* channel = nullptr;
};

// rates on the given state; elements without the Jumps role yield an empty list
std::vector<RatedChannel> jumpChannels(const Element& e, double t, const StateVector& psi);

const DiagonalPropagator* exactPropagator(const Element& e);

std::vector<double> average(const Element& e, double t, const StateVector& psi);
std::vector<double> average(const Element& e, double t, const DensityOperator& rho);

// J psi, not normalized
StateVector applyJumpOperator(const JumpChannel& channel, double t, const StateVector& psi);

}  // namespace oqs
