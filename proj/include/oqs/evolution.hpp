#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oqs/composite.hpp"
#include "oqs/ode.hpp"
#include "oqs/output.hpp"
#include "oqs/params.hpp"
#include "oqs/state.hpp"

namespace oqs {

enum class EvolMode { single, ensemble, master };

template <>
struct ValueIO<EvolMode> {
  static const char* typeName() { return "enum"; }
  static std::string print(EvolMode m) {
    switch (m) {
      case EvolMode::single: return "single";
      case EvolMode::ensemble: return "ensemble";
      default: return "master";
    }
  }
  static bool parse(const std::string& s, EvolMode& out) {
    if (s == "single") out = EvolMode::single;
    else if (s == "ensemble") out = EvolMode::ensemble;
    else if (s == "master") out = EvolMode::master;
    else return false;
    return true;
  }
};

struct ParsEvolution {
  EvolMode evol = EvolMode::single;
  double T = 1;
  double Dt = 0.1;
  int dc = 0;
  double eps = 1e-6;
  double epsAbs = 0;
  double dpLimit = 0.01;
  unsigned seed = 1001;
  int nTraj = 100;
  std::string negativitySpec;  // comma-separated free ordinals; empty = off
  int threads = 0;             // ensemble workers; 0 = OpenMP default

  ParsEvolution() = default;
  explicit ParsEvolution(ParameterTable& p, const std::string& prefix = "");

  std::optional<PartySelector> negativityParty() const;
};

// One running trajectory that the display loops can drive step by step.
class Trajectory {
public:
  virtual ~Trajectory() = default;
  virtual double time() const = 0;
  virtual double lastDt() const = 0;
  virtual void step(double dtMax) = 0;
  // lands the time exactly on a display point once the remaining gap is dust
  virtual void snapTime(double t) = 0;
  virtual trajio::DisplayRow row(double tShow) = 0;
  virtual trajio::SavedState saved() const = 0;
  virtual void restore(const trajio::SavedState& s) = 0;
};

// Single Monte Carlo wave-function trajectory: deterministic non-Hermitian
// evolution of the stored (interaction-picture) state, punctuated by jumps
// sampled once per adaptive step with total probability capped by dpLimit.
class MCWFTrajectory final : public Trajectory {
public:
  MCWFTrajectory(std::shared_ptr<const QuantumSystem> sys, StateVector psi0,
                 const ParsEvolution& pars, unsigned seed);

  double time() const override { return t_; }
  double lastDt() const override { return stepper_.lastDt(); }
  void step(double dtMax) override;
  void snapTime(double t) override { t_ = t; }
  trajio::DisplayRow row(double tShow) override;
  trajio::SavedState saved() const override;
  void restore(const trajio::SavedState& s) override;

  const StateVector& state() const { return psi_; }
  // the state carried into the Schrödinger picture at the current time
  StateVector schState() const;

  struct StepReport {
    double jumpProximity = 1;          // r - dp; negative iff a jump happened
    std::optional<std::string> jumpLabel;
  };
  const StepReport& lastReport() const { return report_; }

private:
  void toSch(StateVector& s, double t) const;
  void fromSch(StateVector& s, double t) const;
  double computeRates(double t);  // fills rates_ from the Sch-picture state

  std::shared_ptr<const QuantumSystem> sys_;
  StateVector psi_;
  double t_ = 0;
  std::mt19937_64 rng_;
  OdeStepper stepper_;
  double dpLimit_;
  StepReport report_;
  double minProximity_ = 1;

  StateVector schScratch_, jumpScratch_;
  std::vector<double> rates_;
};

// Deterministic master-equation trajectory over the density operator.
class MasterTrajectory final : public Trajectory {
public:
  MasterTrajectory(std::shared_ptr<const QuantumSystem> sys, DensityOperator rho0,
                   const ParsEvolution& pars,
                   std::optional<PartySelector> negativityLegs = std::nullopt);

  double time() const override { return t_; }
  double lastDt() const override { return stepper_.lastDt(); }
  void step(double dtMax) override;
  void snapTime(double t) override { t_ = t; }
  trajio::DisplayRow row(double tShow) override;
  trajio::SavedState saved() const override;
  void restore(const trajio::SavedState& s) override;

  const DensityOperator& state() const { return rho_; }
  DensityOperator schState() const;

private:
  void derivative(double t, std::span<const complex> y, std::span<complex> dy) const;

  std::shared_ptr<const QuantumSystem> sys_;
  DensityOperator rho_;
  double t_ = 0;
  OdeStepper stepper_;
  std::optional<PartySelector> negativityLegs_;

  std::vector<int> dims2_;
  std::vector<ProductTerm> braTerms_;
  std::vector<std::pair<ProductTerm, ProductTerm>> sandwich_;  // (ket J, bra conj J)
  std::vector<DiagonalPropagator> braPropagators_;
  mutable std::vector<complex> scratch_;
};

// drhodt = (-i H_nh) rho + h.c. + sum_m J_m rho J_m^dag
void masterDerivative(const QuantumSystem& sys, double t, const DensityOperator& rho,
                      DensityOperator& drhodt);

struct RunHooks {
  std::function<void(Trajectory&)> afterDisplay;
};

// Displays at t = 0, Dt, 2Dt, ... and finally at T; the stepper is clamped to
// land exactly on the display points.
void runDt(Trajectory& traj, double T, double Dt, trajio::RowSink& sink,
           bool skipInitialRow = false, const RunHooks* hooks = nullptr);

// Displays after every dc adaptive steps; only the final step is clamped to T.
void run(Trajectory& traj, double T, int dc, trajio::RowSink& sink,
         bool skipInitialRow = false, const RunHooks* hooks = nullptr);

// Per-display-time inspection of ensemble members (Schrödinger picture).
using EnsembleProbe =
    std::function<void(int member, int displayIndex, double t, const StateVector& psiSch)>;

// nTraj MCWF trajectories seeded seed, seed+1, ...; members advance to each
// display time (concurrently when threads allow), the averaged density
// operator is accumulated in member order, so the output does not depend on
// the schedule.
void ensembleRun(std::shared_ptr<const QuantumSystem> sys, const StateVector& psi0,
                 const ParsEvolution& pars, trajio::RowSink& sink,
                 const std::optional<PartySelector>& negativityLegs = std::nullopt,
                 const EnsembleProbe& probe = nullptr);

struct EvolveOptions {
  const ParameterTable* table = nullptr;   // dumped into the header when given
  std::ostream* sinkOverride = nullptr;    // bypasses --o handling (tests)
};

// Dispatcher over the evolution modes and the two display disciplines:
// nonzero dc selects run, otherwise Dt selects runDt; ensemble always uses
// the runDt discipline.
int evolve(const StateVector& psi0, std::shared_ptr<const QuantumSystem> sys,
           const ParsEvolution& pe, const trajio::ParsOutput& po = {},
           const EvolveOptions& opts = {});

}  // namespace oqs
