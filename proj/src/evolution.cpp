#include "oqs/evolution.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

namespace oqs {

namespace {

double stepFloor(double T) { return 1e-12 * std::max(std::abs(T), 1.0); }

// deliberately independent of T and Dt: a resumed run must propose exactly
// what the uninterrupted run would, and the controller recovers a too-small
// start within a handful of steps anyway
double initialStepSize(const ParsEvolution&) { return 1e-3; }

std::string rngToString(const std::mt19937_64& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

void rngFromString(std::mt19937_64& rng, const std::string& s) {
  std::istringstream is(s);
  is >> rng;
  if (!is) throw std::runtime_error("corrupt sv file");
}

std::vector<std::uint32_t> dimsToU32(const std::vector<int>& dims) {
  return {dims.begin(), dims.end()};
}

bool dimsMatch(const std::vector<std::uint32_t>& saved, const std::vector<int>& dims) {
  if (saved.size() != dims.size()) return false;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (saved[i] != static_cast<std::uint32_t>(dims[i])) return false;
  return true;
}

void advanceTo(Trajectory& traj, double target, double tiny) {
  while (target - traj.time() > tiny) traj.step(target - traj.time());
  traj.snapTime(target);
}

}  // namespace

ParsEvolution::ParsEvolution(ParameterTable& p, const std::string& prefix) {
  p.add("evol", "time evolution mode (single|ensemble|master)", evol, prefix);
  p.add("T", "total evolution time", T, prefix);
  p.add("Dt", "display interval (runDt discipline)", Dt, prefix);
  p.add("dc", "adaptive steps between displays (0 = use Dt)", dc, prefix);
  p.add("eps", "relative ODE tolerance", eps, prefix);
  p.add("epsAbs", "absolute ODE tolerance", epsAbs, prefix);
  p.add("dpLimit", "total jump probability cap per adaptive step", dpLimit, prefix);
  p.add("seed", "random seed of the first trajectory", seed, prefix);
  p.add("nTraj", "number of trajectories in an ensemble", nTraj, prefix);
  p.add("negativity", "free ordinals of one party, e.g. 0 or 1,2 (master/ensemble)",
        negativitySpec, prefix);
  p.add("threads", "ensemble worker threads (0 = OpenMP default)", threads, prefix);
}

std::optional<PartySelector> ParsEvolution::negativityParty() const {
  if (negativitySpec.empty()) return std::nullopt;
  std::vector<int> ordinals;
  std::istringstream is(negativitySpec);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    int v = 0;
    if (!ValueIO<int>::parse(tok, v))
      throw UsageError("malformed negativity party: '" + negativitySpec + "'");
    ordinals.push_back(v);
  }
  if (ordinals.empty())
    throw UsageError("malformed negativity party: '" + negativitySpec + "'");
  return PartySelector(std::move(ordinals));
}

// ----- MCWF -----

MCWFTrajectory::MCWFTrajectory(std::shared_ptr<const QuantumSystem> sys, StateVector psi0,
                               const ParsEvolution& pars, unsigned seed)
    : sys_(std::move(sys)),
      psi_(std::move(psi0)),
      rng_(seed),
      stepper_(pars.eps, pars.epsAbs, initialStepSize(pars), stepFloor(pars.T)),
      dpLimit_(pars.dpLimit),
      schScratch_(psi_.dims()),
      jumpScratch_(psi_.dims()) {
  if (psi_.dims() != sys_->dims())
    throw std::invalid_argument("state/system dimension mismatch");
}

void MCWFTrajectory::toSch(StateVector& s, double t) const {
  for (const DiagonalPropagator& u : sys_->propagators())
    applyPropagator(u, t, s, Direction::forward);
}

void MCWFTrajectory::fromSch(StateVector& s, double t) const {
  for (const DiagonalPropagator& u : sys_->propagators())
    applyPropagator(u, t, s, Direction::backward);
}

double MCWFTrajectory::computeRates(double t) {
  const auto channels = sys_->jumpChannels();
  rates_.assign(channels.size(), 0.0);
  if (channels.empty()) return 0.0;

  schScratch_ = psi_;
  toSch(schScratch_, t);
  const double n = schScratch_.norm();
  const double n2 = n * n;
  if (n2 <= 0) return 0.0;

  double total = 0;
  for (std::size_t m = 0; m < channels.size(); ++m) {
    jumpScratch_.setZero();
    applyProductTerm(channels[m].op, t, schScratch_, jumpScratch_);
    const double jn = jumpScratch_.norm();
    rates_[m] = jn * jn / n2;
    total += rates_[m];
  }
  return total;
}

void MCWFTrajectory::step(double dtMax) {
  const double rateTotal = computeRates(t_);
  double cap = dtMax;
  if (rateTotal > 0) cap = std::min(cap, dpLimit_ / rateTotal);

  const auto outcome = stepper_.step(
      [this](double t, std::span<const complex> y, std::span<complex> dy) {
        sys_->addDerivative(t, y, dy);
      },
      psi_.amplitudes(), t_, cap);

  const double dp = rateTotal * outcome.dtUsed;
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);

  report_ = StepReport{};
  if (r < dp) {
    const auto channels = sys_->jumpChannels();
    int pick = -1;
    double cum = 0;
    for (std::size_t m = 0; m < channels.size(); ++m) {
      cum += rates_[m] * outcome.dtUsed;
      if (r < cum) {
        pick = static_cast<int>(m);
        break;
      }
    }
    if (pick < 0) pick = static_cast<int>(channels.size()) - 1;

    toSch(psi_, t_);
    jumpScratch_.setZero();
    applyProductTerm(channels[pick].op, t_, psi_, jumpScratch_);
    const double jn = jumpScratch_.norm();
    if (jn <= 0) throw std::runtime_error("zero-norm state after jump");
    jumpScratch_ *= complex{1.0 / jn, 0.0};
    psi_ = jumpScratch_;
    fromSch(psi_, t_);
    report_.jumpLabel = channels[pick].label;
  }
  report_.jumpProximity = r - dp;
  minProximity_ = std::min(minProximity_, report_.jumpProximity);
}

StateVector MCWFTrajectory::schState() const {
  StateVector s = psi_;
  toSch(s, t_);
  return s;
}

trajio::DisplayRow MCWFTrajectory::row(double tShow) {
  trajio::DisplayRow row;
  row.t = tShow;
  row.dtDid = lastDt();
  schScratch_ = psi_;
  toSch(schScratch_, t_);
  row.values = sys_->displayValues(t_, schScratch_);
  row.jumpProximity = minProximity_;
  minProximity_ = 1;
  return row;
}

trajio::SavedState MCWFTrajectory::saved() const {
  trajio::SavedState s;
  s.dims = dimsToU32(psi_.dims());
  s.t = t_;
  s.amplitudes.assign(psi_.amplitudes().begin(), psi_.amplitudes().end());
  s.blob = std::string(1, trajio::kKindSingle) + rngToString(rng_);
  s.stepperDt = stepper_.suggestedDt();
  return s;
}

void MCWFTrajectory::restore(const trajio::SavedState& s) {
  if (s.kind() != trajio::kKindSingle || !dimsMatch(s.dims, psi_.dims()))
    throw std::runtime_error("state/system dimension mismatch");
  std::copy(s.amplitudes.begin(), s.amplitudes.end(), psi_.amplitudes().begin());
  t_ = s.t;
  rngFromString(rng_, s.blob.substr(1));
  stepper_.setSuggestedDt(s.stepperDt);
  minProximity_ = 1;
}

// ----- master equation -----

MasterTrajectory::MasterTrajectory(std::shared_ptr<const QuantumSystem> sys,
                                   DensityOperator rho0, const ParsEvolution& pars,
                                   std::optional<PartySelector> negativityLegs)
    : sys_(std::move(sys)),
      rho_(std::move(rho0)),
      stepper_(pars.eps, pars.epsAbs, initialStepSize(pars), stepFloor(pars.T)),
      negativityLegs_(std::move(negativityLegs)) {
  if (rho_.dims() != sys_->dims())
    throw std::invalid_argument("state/system dimension mismatch");
  if (!sys_->allPropagatorsUnitary())
    throw std::runtime_error(
        "Master-equation evolution does not work with non-unitary interaction picture");

  const int rank = static_cast<int>(sys_->dims().size());
  dims2_ = sys_->dims();
  dims2_.insert(dims2_.end(), sys_->dims().begin(), sys_->dims().end());

  for (const ProductTerm& term : sys_->derivativeTerms())
    braTerms_.push_back(term.conjugated().shiftedLegs(rank));
  for (const LiftedChannel& ch : sys_->jumpChannels())
    sandwich_.emplace_back(ch.op, ch.op.conjugated().shiftedLegs(rank));
  for (const DiagonalPropagator& u : sys_->propagators()) {
    DiagonalPropagator bra = u;
    bra.leg += rank;
    for (complex& z : bra.exponents) z = std::conj(z);
    braPropagators_.push_back(std::move(bra));
  }
}

void MasterTrajectory::derivative(double t, std::span<const complex> y,
                                  std::span<complex> dy) const {
  for (const ProductTerm& term : sys_->derivativeTerms())
    applyProductTerm(term, t, dims2_, y, dy);
  for (const ProductTerm& term : braTerms_) applyProductTerm(term, t, dims2_, y, dy);
  for (const auto& [ketJ, braJ] : sandwich_) {
    scratch_.assign(y.size(), complex{});
    applyProductTerm(ketJ, t, dims2_, y, scratch_);
    applyProductTerm(braJ, t, dims2_, scratch_, dy);
  }
}

void MasterTrajectory::step(double dtMax) {
  stepper_.step(
      [this](double t, std::span<const complex> y, std::span<complex> dy) {
        derivative(t, y, dy);
      },
      rho_.elements(), t_, dtMax);
}

DensityOperator MasterTrajectory::schState() const {
  DensityOperator s = rho_;
  for (const DiagonalPropagator& u : sys_->propagators())
    applyPropagator(u, t_, dims2_, s.elements(), Direction::forward);
  for (const DiagonalPropagator& u : braPropagators_)
    applyPropagator(u, t_, dims2_, s.elements(), Direction::forward);
  return s;
}

trajio::DisplayRow MasterTrajectory::row(double tShow) {
  trajio::DisplayRow row;
  row.t = tShow;
  row.dtDid = lastDt();
  DensityOperator sch = schState();
  row.values = sys_->displayValues(t_, sch);
  if (negativityLegs_) {
    const complex tr = sch.trace();
    if (std::abs(tr) > 0) sch *= complex{1.0} / tr;
    row.negativity = negativity(sch, *negativityLegs_);
  }
  return row;
}

trajio::SavedState MasterTrajectory::saved() const {
  trajio::SavedState s;
  s.dims = dimsToU32(dims2_);
  s.t = t_;
  s.amplitudes.assign(rho_.elements().begin(), rho_.elements().end());
  s.blob = std::string(1, trajio::kKindMaster);
  s.stepperDt = stepper_.suggestedDt();
  return s;
}

void MasterTrajectory::restore(const trajio::SavedState& s) {
  if (s.kind() != trajio::kKindMaster || !dimsMatch(s.dims, dims2_))
    throw std::runtime_error("state/system dimension mismatch");
  std::copy(s.amplitudes.begin(), s.amplitudes.end(), rho_.elements().begin());
  t_ = s.t;
  stepper_.setSuggestedDt(s.stepperDt);
}

void masterDerivative(const QuantumSystem& sys, double t, const DensityOperator& rho,
                      DensityOperator& drhodt) {
  if (rho.dims() != sys.dims() || drhodt.dims() != sys.dims())
    throw std::invalid_argument("state/system dimension mismatch");
  if (!sys.allPropagatorsUnitary())
    throw std::runtime_error(
        "Master-equation evolution does not work with non-unitary interaction picture");

  const int rank = static_cast<int>(sys.dims().size());
  std::vector<int> dims2 = sys.dims();
  dims2.insert(dims2.end(), sys.dims().begin(), sys.dims().end());

  drhodt.setZero();
  auto y = rho.elements();
  auto dy = drhodt.elements();
  std::vector<complex> scratch;
  for (const ProductTerm& term : sys.derivativeTerms()) {
    applyProductTerm(term, t, dims2, y, dy);
    applyProductTerm(term.conjugated().shiftedLegs(rank), t, dims2, y, dy);
  }
  for (const LiftedChannel& ch : sys.jumpChannels()) {
    scratch.assign(y.size(), complex{});
    applyProductTerm(ch.op, t, dims2, y, scratch);
    applyProductTerm(ch.op.conjugated().shiftedLegs(rank), t, dims2, scratch, dy);
  }
}

// ----- display loops -----

namespace {

void emitRow(Trajectory& traj, double tShow, trajio::RowSink& sink, const RunHooks* hooks) {
  sink.writeRow(traj.row(tShow));
  if (hooks && hooks->afterDisplay) hooks->afterDisplay(traj);
}

}  // namespace

void runDt(Trajectory& traj, double T, double Dt, trajio::RowSink& sink,
           bool skipInitialRow, const RunHooks* hooks) {
  if (Dt <= 0) throw std::invalid_argument("runDt needs a positive Dt");
  const double tiny = stepFloor(T);
  if (!skipInitialRow) emitRow(traj, traj.time(), sink, hooks);

  for (long k = static_cast<long>(std::floor(traj.time() / Dt + 1e-9)) + 1;; ++k) {
    const double tD = static_cast<double>(k) * Dt;
    if (tD > T + tiny) break;
    advanceTo(traj, tD, tiny);
    emitRow(traj, tD, sink, hooks);
  }
  if (T - traj.time() > tiny) {
    advanceTo(traj, T, tiny);
    emitRow(traj, T, sink, hooks);
  }
}

void run(Trajectory& traj, double T, int dc, trajio::RowSink& sink, bool skipInitialRow,
         const RunHooks* hooks) {
  if (dc < 1) throw std::invalid_argument("run needs dc >= 1");
  const double tiny = stepFloor(T);
  if (!skipInitialRow) emitRow(traj, traj.time(), sink, hooks);

  long steps = 0;
  while (T - traj.time() > tiny) {
    traj.step(T - traj.time());
    if (++steps % dc == 0 && T - traj.time() > tiny)
      emitRow(traj, traj.time(), sink, hooks);
  }
  if (steps > 0) {
    traj.snapTime(T);
    emitRow(traj, T, sink, hooks);
  }
}

// ----- ensemble -----

void ensembleRun(std::shared_ptr<const QuantumSystem> sys, const StateVector& psi0,
                 const ParsEvolution& pars, trajio::RowSink& sink,
                 const std::optional<PartySelector>& negativityLegs,
                 const EnsembleProbe& probe) {
  if (pars.nTraj < 1) throw std::invalid_argument("ensemble needs nTraj >= 1");
  if (pars.Dt <= 0) throw std::invalid_argument("ensemble evolution requires a nonzero Dt");

  const double tiny = stepFloor(pars.T);
  const int n = pars.nTraj;
  std::vector<std::unique_ptr<MCWFTrajectory>> members;
  members.reserve(n);
  for (int k = 0; k < n; ++k)
    members.push_back(
        std::make_unique<MCWFTrajectory>(sys, psi0, pars, pars.seed + static_cast<unsigned>(k)));

  const int nthr = pars.threads > 0 ? pars.threads : omp_get_max_threads();
  const std::size_t dim = checkedProduct(sys->dims());
  DensityOperator rhoBar(sys->dims());

  int displayIndex = 0;
  auto displayAt = [&](double tD) {
    rhoBar.setZero();
    for (int k = 0; k < n; ++k) {
      const StateVector psiSch = members[k]->schState();
      const double nrm = psiSch.norm();
      const double w = nrm > 0 ? 1.0 / (nrm * nrm * n) : 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const complex wi = w * psiSch[i];
        for (std::size_t j = 0; j < dim; ++j) rhoBar(i, j) += wi * std::conj(psiSch[j]);
      }
      if (probe) probe(k, displayIndex, tD, psiSch);
    }
    trajio::DisplayRow row;
    row.t = tD;
    row.dtDid = displayIndex == 0 ? 0.0 : pars.Dt;
    row.values = sys->displayValues(tD, rhoBar);
    if (negativityLegs) {
      DensityOperator normed = rhoBar;
      const complex tr = normed.trace();
      if (std::abs(tr) > 0) normed *= complex{1.0} / tr;
      row.negativity = negativity(normed, *negativityLegs);
    }
    sink.writeRow(row);
    ++displayIndex;
  };

  auto advanceAll = [&](double tD) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(nthr)
    for (int k = 0; k < n; ++k) {
      try {
        advanceTo(*members[k], tD, tiny);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  };

  displayAt(0.0);
  for (long k = 1;; ++k) {
    const double tD = static_cast<double>(k) * pars.Dt;
    if (tD > pars.T + tiny) break;
    advanceAll(tD);
    displayAt(tD);
  }
  if (pars.T - members[0]->time() > tiny) {
    advanceAll(pars.T);
    displayAt(pars.T);
  }
}

// ----- evolve dispatcher -----

int evolve(const StateVector& psi0, std::shared_ptr<const QuantumSystem> sys,
           const ParsEvolution& pe, const trajio::ParsOutput& po,
           const EvolveOptions& opts) {
  if (psi0.dims() != sys->dims())
    throw std::invalid_argument("state/system dimension mismatch");

  std::optional<PartySelector> negativityLegs;
  if (auto party = pe.negativityParty()) {
    if (pe.evol == EvolMode::single)
      throw std::invalid_argument("negativity requires a density-operator evolution");
    negativityLegs = sys->legsOfFrees(*party);
  }

  const bool useRun = pe.evol != EvolMode::ensemble && pe.dc != 0;
  if (pe.evol != EvolMode::ensemble && !useRun && pe.Dt <= 0)
    throw std::invalid_argument("either dc or Dt must be nonzero");

  // output plumbing: stdout, or --o file with .sv persistence next to it
  std::ofstream file;
  std::ostream* out = opts.sinkOverride ? opts.sinkOverride : &std::cout;
  const bool toFile = !po.o.empty() && !opts.sinkOverride;
  const std::string svPath = po.o + ".sv";

  std::unique_ptr<Trajectory> traj;
  if (pe.evol == EvolMode::single)
    traj = std::make_unique<MCWFTrajectory>(sys, psi0, pe, pe.seed);
  else if (pe.evol == EvolMode::master)
    traj = std::make_unique<MasterTrajectory>(sys, dyad(psi0), pe, negativityLegs);

  bool resumed = false;
  if (toFile && traj && po.resume) {
    std::ifstream probe(svPath, std::ios::binary);
    if (probe.good()) {
      probe.close();
      traj->restore(trajio::loadState(svPath));
      resumed = true;
    }
  }

  if (toFile) {
    file.open(po.o, resumed ? std::ios::app : std::ios::trunc);
    if (!file) throw UsageError("cannot open output file: " + po.o);
    out = &file;
  }

  if (!resumed)
    trajio::writeHeader(*out, *sys, opts.table, pe.evol == EvolMode::single,
                        negativityLegs.has_value());
  trajio::TextWriter sink(*out, trajio::blockArities(*sys));

  double lastCheckpoint = traj ? traj->time() : 0.0;
  RunHooks hooks;
  if (toFile && traj && po.checkpoint > 0)
    hooks.afterDisplay = [&](Trajectory& tr) {
      if (tr.time() - lastCheckpoint >= po.checkpoint) {
        trajio::saveState(tr.saved(), svPath);
        lastCheckpoint = tr.time();
      }
    };

  if (pe.evol == EvolMode::ensemble) {
    ensembleRun(sys, psi0, pe, sink, negativityLegs);
  } else if (useRun) {
    run(*traj, pe.T, pe.dc, sink, resumed, &hooks);
  } else {
    runDt(*traj, pe.T, pe.Dt, sink, resumed, &hooks);
  }

  if (toFile && traj) trajio::saveState(traj->saved(), svPath);
  out->flush();
  return 0;
}

}  // namespace oqs
