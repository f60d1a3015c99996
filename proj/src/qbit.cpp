#include "oqs/qbit.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs::qbit {

Pars::Pars(ParameterTable& p, const std::string& prefix) {
  p.add("deltaA", "qbit detuning", delta, prefix);
  p.add("gamma", "qbit decay rate", gamma, prefix);
  p.add("etaA", "qbit pump amplitude", eta, prefix);
  p.add("qbitInit", "qbit initial state (cg):(ce)", initSpec, prefix);
}

namespace {

const std::vector<std::string> kKey = {"P_e", "Re<sigma>", "Im<sigma>"};

ProductTerm generatorTerm(complex diagRate, complex eta, complex freqRate) {
  std::vector<complex> diag, up, low, freqs;
  if (diagRate != complex{}) diag = {complex{}, diagRate};
  if (eta != complex{}) {
    low = {eta};
    up = {-std::conj(eta)};
  }
  if (freqRate != complex{} && !up.empty()) freqs = {complex{}, freqRate};
  return ProductTerm(
      1.0, {{0, Tridiagonal(2, 1, std::move(diag), std::move(up), std::move(low),
                            std::move(freqs))}});
}

DiagonalPropagator qbitPropagator(complex rate) {
  return DiagonalPropagator{0, {complex{}, rate}};
}

JumpChannel decayChannel(double gamma) {
  return {"decay", ProductTerm(std::sqrt(2.0 * gamma), {{0, ops::lowering(2)}})};
}

class QbitBase : public Element, public Observables {
public:
  explicit QbitBase(std::string label) : Element({2}, std::move(label)) {}

  std::span<const std::string> displayKey() const override { return kKey; }

  std::vector<double> average(double, const StateVector& psi) const override {
    const double n2 = std::norm(psi[0]) + std::norm(psi[1]);
    if (n2 <= 0) return {0, 0, 0};
    const complex sigma = std::conj(psi[0]) * psi[1] / n2;
    return {std::norm(psi[1]) / n2, sigma.real(), sigma.imag()};
  }

  std::vector<double> average(double, const DensityOperator& rho) const override {
    const double tr = rho(0, 0).real() + rho(1, 1).real();
    if (tr <= 0) return {0, 0, 0};
    const complex sigma = rho(1, 0) / tr;
    return {rho(1, 1).real() / tr, sigma.real(), sigma.imag()};
  }
};

class Qbit final : public QbitBase, public StoredPropagator {
public:
  Qbit(const Pars& p)
      : QbitBase("Qbit"), StoredPropagator(qbitPropagator(complex{0, p.delta})) {}
};

class QbitSch final : public QbitBase, public HamiltonianTerms {
public:
  QbitSch(const Pars& p)
      : QbitBase("QbitSch"),
        HamiltonianTerms({generatorTerm(complex{0, p.delta}, {}, {})}) {}
};

class PumpedQbit final : public QbitBase, public HamiltonianTerms, public StoredPropagator {
public:
  PumpedQbit(const Pars& p)
      : QbitBase("PumpedQbit"),
        HamiltonianTerms({generatorTerm({}, p.eta, complex{0, p.delta})}),
        StoredPropagator(qbitPropagator(complex{0, p.delta})) {}
};

class PumpedQbitSch final : public QbitBase, public HamiltonianTerms {
public:
  PumpedQbitSch(const Pars& p)
      : QbitBase("PumpedQbitSch"),
        HamiltonianTerms({generatorTerm(complex{0, p.delta}, p.eta, {})}) {}
};

class LossyQbit final : public QbitBase, public StoredPropagator, public JumpList {
public:
  LossyQbit(const Pars& p)
      : QbitBase("LossyQbit"),
        StoredPropagator(qbitPropagator(complex{-p.gamma, p.delta})),
        JumpList({decayChannel(p.gamma)}) {}
};

class LossyQbitUIP final : public QbitBase,
                           public HamiltonianTerms,
                           public StoredPropagator,
                           public JumpList {
public:
  LossyQbitUIP(const Pars& p)
      : QbitBase("LossyQbitUIP"),
        HamiltonianTerms({generatorTerm(complex{-p.gamma, 0}, {}, {})}),
        StoredPropagator(qbitPropagator(complex{0, p.delta})),
        JumpList({decayChannel(p.gamma)}) {}
};

class LossyQbitSch final : public QbitBase, public HamiltonianTerms, public JumpList {
public:
  LossyQbitSch(const Pars& p)
      : QbitBase("LossyQbitSch"),
        HamiltonianTerms({generatorTerm(complex{-p.gamma, p.delta}, {}, {})}),
        JumpList({decayChannel(p.gamma)}) {}
};

class PumpedLossyQbit final : public QbitBase,
                              public HamiltonianTerms,
                              public StoredPropagator,
                              public JumpList {
public:
  PumpedLossyQbit(const Pars& p)
      : QbitBase("PumpedLossyQbit"),
        HamiltonianTerms({generatorTerm({}, p.eta, complex{-p.gamma, p.delta})}),
        StoredPropagator(qbitPropagator(complex{-p.gamma, p.delta})),
        JumpList({decayChannel(p.gamma)}) {}
};

class PumpedLossyQbitUIP final : public QbitBase,
                                 public HamiltonianTerms,
                                 public StoredPropagator,
                                 public JumpList {
public:
  PumpedLossyQbitUIP(const Pars& p)
      : QbitBase("PumpedLossyQbitUIP"),
        HamiltonianTerms({generatorTerm(complex{-p.gamma, 0}, p.eta, complex{0, p.delta})}),
        StoredPropagator(qbitPropagator(complex{0, p.delta})),
        JumpList({decayChannel(p.gamma)}) {}
};

class PumpedLossyQbitSch final : public QbitBase, public HamiltonianTerms, public JumpList {
public:
  PumpedLossyQbitSch(const Pars& p)
      : QbitBase("PumpedLossyQbitSch"),
        HamiltonianTerms({generatorTerm(complex{-p.gamma, p.delta}, p.eta, {})}),
        JumpList({decayChannel(p.gamma)}) {}
};

std::pair<complex, complex> parseInitSpec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw UsageError("malformed qbitInit value: '" + spec + "'");
  return {parseComplex(spec.substr(0, colon)), parseComplex(spec.substr(colon + 1))};
}

}  // namespace

std::shared_ptr<const Element> make(const Pars& p, Picture picture) {
  if (p.gamma < 0) throw std::invalid_argument("qbit decay rate must be non-negative");
  const bool lossy = p.gamma != 0;
  const bool pumped = p.eta != complex{};

  if (picture == Picture::Sch) {
    if (lossy && pumped) return std::make_shared<PumpedLossyQbitSch>(p);
    if (lossy) return std::make_shared<LossyQbitSch>(p);
    if (pumped) return std::make_shared<PumpedQbitSch>(p);
    return std::make_shared<QbitSch>(p);
  }
  if (!lossy) {
    if (pumped) return std::make_shared<PumpedQbit>(p);
    return std::make_shared<Qbit>(p);
  }
  if (picture == Picture::UIP) {
    if (pumped) return std::make_shared<PumpedLossyQbitUIP>(p);
    return std::make_shared<LossyQbitUIP>(p);
  }
  if (pumped) return std::make_shared<PumpedLossyQbit>(p);
  return std::make_shared<LossyQbit>(p);
}

StateVector state0() { return StateVector::basis({2}, {0}); }
StateVector state1() { return StateVector::basis({2}, {1}); }

StateVector initState(complex cg, complex ce) {
  StateVector psi({2});
  psi[0] = cg;
  psi[1] = ce;
  renormalizeInPlace(psi);
  return psi;
}

StateVector init(const Pars& p) {
  const auto [cg, ce] = parseInitSpec(p.initSpec);
  return initState(cg, ce);
}

}  // namespace oqs::qbit
