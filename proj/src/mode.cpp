#include "oqs/mode.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs::mode {

Pars::Pars(ParameterTable& p, const std::string& prefix) {
  p.add("deltaC", "mode detuning", delta, prefix);
  p.add("kappa", "mode loss rate", kappa, prefix);
  p.add("eta", "mode pump amplitude", eta, prefix);
  p.add("cutoff", "mode Fock-space truncation", cutoff, prefix);
  p.add("minit", "mode initial coherent amplitude", minit, prefix);
  p.addWithFlag("minitFock", "mode initial Fock state (overrides minit)", minitFock,
                minitFockGiven, prefix);
}

namespace {

const std::vector<std::string> kKey = {"<n>", "Var(n)", "Re<a>", "Im<a>"};

std::vector<complex> scaledIndex(complex rate, int cutoff) {
  std::vector<complex> v(static_cast<std::size_t>(cutoff));
  for (int n = 0; n < cutoff; ++n) v[n] = rate * double(n);
  return v;
}

// the tridiagonal of -i H_nh restricted to what the picture leaves in the
// Hamiltonian: diagonal diagRate*n plus the pump bands, dressed by freqRate*n
ProductTerm generatorTerm(complex diagRate, complex eta, int cutoff, complex freqRate) {
  std::vector<complex> diag, up, low, freqs;
  if (diagRate != complex{}) diag = scaledIndex(diagRate, cutoff);
  if (eta != complex{}) {
    up.resize(static_cast<std::size_t>(cutoff - 1));
    low.resize(static_cast<std::size_t>(cutoff - 1));
    for (int n = 0; n + 1 < cutoff; ++n) {
      const double root = std::sqrt(double(n + 1));
      low[n] = eta * root;              // eta a^dag
      up[n] = -std::conj(eta) * root;   // -conj(eta) a
    }
  }
  if (freqRate != complex{} && !up.empty()) freqs = scaledIndex(freqRate, cutoff);
  return ProductTerm(1.0, {{0, Tridiagonal(cutoff, 1, std::move(diag), std::move(up),
                                           std::move(low), std::move(freqs))}});
}

DiagonalPropagator modePropagator(complex rate, int cutoff) {
  return DiagonalPropagator{0, scaledIndex(rate, cutoff)};
}

JumpChannel lossChannel(double kappa, int cutoff) {
  return {"loss", ProductTerm(std::sqrt(2.0 * kappa), {{0, ops::lowering(cutoff)}})};
}

class ModeBase : public Element, public Observables {
public:
  ModeBase(int cutoff, std::string label) : Element({cutoff}, std::move(label)) {}

  std::span<const std::string> displayKey() const override { return kKey; }

  std::vector<double> average(double, const StateVector& psi) const override {
    double n2 = 0, en = 0, en2 = 0;
    complex ea{};
    const int cutoff = legDims()[0];
    for (int n = 0; n < cutoff; ++n) {
      const double p = std::norm(psi[n]);
      n2 += p;
      en += n * p;
      en2 += double(n) * n * p;
      if (n + 1 < cutoff) ea += std::conj(psi[n]) * std::sqrt(double(n + 1)) * psi[n + 1];
    }
    if (n2 <= 0) return {0, 0, 0, 0};
    en /= n2;
    en2 /= n2;
    ea /= n2;
    return {en, en2 - en * en, ea.real(), ea.imag()};
  }

  std::vector<double> average(double, const DensityOperator& rho) const override {
    const int cutoff = legDims()[0];
    double tr = 0, en = 0, en2 = 0;
    complex ea{};
    for (int n = 0; n < cutoff; ++n) {
      const double p = rho(n, n).real();
      tr += p;
      en += n * p;
      en2 += double(n) * n * p;
      if (n + 1 < cutoff) ea += std::sqrt(double(n + 1)) * rho(n + 1, n);
    }
    if (tr <= 0) return {0, 0, 0, 0};
    en /= tr;
    en2 /= tr;
    ea /= tr;
    return {en, en2 - en * en, ea.real(), ea.imag()};
  }
};

// the ten variants; see the maker below for the dispatch rules

class Mode final : public ModeBase, public StoredPropagator {
public:
  Mode(const Pars& p)
      : ModeBase(p.cutoff, "Mode"),
        StoredPropagator(modePropagator(complex{0, p.delta}, p.cutoff)) {}
};

class ModeSch final : public ModeBase, public HamiltonianTerms {
public:
  ModeSch(const Pars& p)
      : ModeBase(p.cutoff, "ModeSch"),
        HamiltonianTerms({generatorTerm(complex{0, p.delta}, {}, p.cutoff, {})}) {}
};

class PumpedMode final : public ModeBase, public HamiltonianTerms, public StoredPropagator {
public:
  PumpedMode(const Pars& p)
      : ModeBase(p.cutoff, "PumpedMode"),
        HamiltonianTerms({generatorTerm({}, p.eta, p.cutoff, complex{0, p.delta})}),
        StoredPropagator(modePropagator(complex{0, p.delta}, p.cutoff)) {}
};

class PumpedModeSch final : public ModeBase, public HamiltonianTerms {
public:
  PumpedModeSch(const Pars& p)
      : ModeBase(p.cutoff, "PumpedModeSch"),
        HamiltonianTerms({generatorTerm(complex{0, p.delta}, p.eta, p.cutoff, {})}) {}
};

class LossyMode final : public ModeBase, public StoredPropagator, public JumpList {
public:
  LossyMode(const Pars& p)
      : ModeBase(p.cutoff, "LossyMode"),
        StoredPropagator(modePropagator(complex{-p.kappa, p.delta}, p.cutoff)),
        JumpList({lossChannel(p.kappa, p.cutoff)}) {}
};

class LossyModeUIP final : public ModeBase,
                           public HamiltonianTerms,
                           public StoredPropagator,
                           public JumpList {
public:
  LossyModeUIP(const Pars& p)
      : ModeBase(p.cutoff, "LossyModeUIP"),
        HamiltonianTerms({generatorTerm(complex{-p.kappa, 0}, {}, p.cutoff, {})}),
        StoredPropagator(modePropagator(complex{0, p.delta}, p.cutoff)),
        JumpList({lossChannel(p.kappa, p.cutoff)}) {}
};

class LossyModeSch final : public ModeBase, public HamiltonianTerms, public JumpList {
public:
  LossyModeSch(const Pars& p)
      : ModeBase(p.cutoff, "LossyModeSch"),
        HamiltonianTerms({generatorTerm(complex{-p.kappa, p.delta}, {}, p.cutoff, {})}),
        JumpList({lossChannel(p.kappa, p.cutoff)}) {}
};

class PumpedLossyMode final : public ModeBase,
                              public HamiltonianTerms,
                              public StoredPropagator,
                              public JumpList {
public:
  PumpedLossyMode(const Pars& p)
      : ModeBase(p.cutoff, "PumpedLossyMode"),
        HamiltonianTerms({generatorTerm({}, p.eta, p.cutoff, complex{-p.kappa, p.delta})}),
        StoredPropagator(modePropagator(complex{-p.kappa, p.delta}, p.cutoff)),
        JumpList({lossChannel(p.kappa, p.cutoff)}) {}
};

class PumpedLossyModeUIP final : public ModeBase,
                                 public HamiltonianTerms,
                                 public StoredPropagator,
                                 public JumpList {
public:
  PumpedLossyModeUIP(const Pars& p)
      : ModeBase(p.cutoff, "PumpedLossyModeUIP"),
        HamiltonianTerms(
            {generatorTerm(complex{-p.kappa, 0}, p.eta, p.cutoff, complex{0, p.delta})}),
        StoredPropagator(modePropagator(complex{0, p.delta}, p.cutoff)),
        JumpList({lossChannel(p.kappa, p.cutoff)}) {}
};

class PumpedLossyModeSch final : public ModeBase, public HamiltonianTerms, public JumpList {
public:
  PumpedLossyModeSch(const Pars& p)
      : ModeBase(p.cutoff, "PumpedLossyModeSch"),
        HamiltonianTerms({generatorTerm(complex{-p.kappa, p.delta}, p.eta, p.cutoff, {})}),
        JumpList({lossChannel(p.kappa, p.cutoff)}) {}
};

}  // namespace

std::shared_ptr<const Element> make(const Pars& p, Picture picture) {
  if (p.cutoff < 2) throw std::invalid_argument("mode cutoff must be at least 2");
  if (p.kappa < 0) throw std::invalid_argument("mode loss rate must be non-negative");
  const bool lossy = p.kappa != 0;
  const bool pumped = p.eta != complex{};

  if (picture == Picture::Sch) {
    if (lossy && pumped) return std::make_shared<PumpedLossyModeSch>(p);
    if (lossy) return std::make_shared<LossyModeSch>(p);
    if (pumped) return std::make_shared<PumpedModeSch>(p);
    return std::make_shared<ModeSch>(p);
  }
  if (!lossy) {
    // without loss UIP and IP coincide
    if (pumped) return std::make_shared<PumpedMode>(p);
    return std::make_shared<Mode>(p);
  }
  if (picture == Picture::UIP) {
    if (pumped) return std::make_shared<PumpedLossyModeUIP>(p);
    return std::make_shared<LossyModeUIP>(p);
  }
  if (pumped) return std::make_shared<PumpedLossyMode>(p);
  return std::make_shared<LossyMode>(p);
}

StateVector coherent(complex alpha, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
  StateVector psi({cutoff});
  complex c = 1.0;
  psi[0] = c;
  for (int n = 1; n < cutoff; ++n) {
    c *= alpha / std::sqrt(double(n));
    psi[n] = c;
  }
  renormalizeInPlace(psi);
  return psi;
}

StateVector fock(int n, int cutoff) {
  if (n < 0 || n >= cutoff) throw std::invalid_argument("Fock index exceeds cutoff");
  return StateVector::basis({cutoff}, {n});
}

StateVector init(const Pars& p) {
  if (p.minitFockGiven || p.minitFock != 0) return fock(p.minitFock, p.cutoff);
  return coherent(p.minit, p.cutoff);
}

}  // namespace oqs::mode
