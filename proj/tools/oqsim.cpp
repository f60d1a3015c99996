// Command-line driver: one subcommand per system layout.
//
//   oqsim mode    -- a single (pumped, lossy) cavity mode
//   oqsim binary  -- qbit + mode coupled by a Jaynes-Cummings interaction
//   oqsim ring    -- qbit + two modes, pairwise and ternary couplings

#include <iostream>
#include <string>
#include <vector>

#include "oqs/composite.hpp"
#include "oqs/element.hpp"
#include "oqs/evolution.hpp"
#include "oqs/interactions.hpp"
#include "oqs/mode.hpp"
#include "oqs/output.hpp"
#include "oqs/params.hpp"
#include "oqs/qbit.hpp"

namespace {

using namespace oqs;

void printUsage(std::ostream& out) {
  out << "usage: oqsim <mode|binary|ring> [--name value ...]\n"
         "       oqsim <subcommand> --help lists the parameters\n";
}

int runMode(const std::vector<std::string>& args) {
  ParameterTable p;
  ParsEvolution pe(p);
  trajio::ParsOutput po(p);
  Picture& picture = addPictureParameter(p);
  mode::Pars pm(p);

  if (update(p, args) == UpdateResult::help) {
    printHelp(p, std::cout);
    return 0;
  }

  auto m = mode::make(pm, picture);
  StateVector psi = mode::init(pm);
  auto sys = std::make_shared<SingleSystem>(m);
  EvolveOptions opts;
  opts.table = &p;
  return evolve(psi, sys, pe, po, opts);
}

int runBinary(const std::vector<std::string>& args) {
  ParameterTable p;
  ParsEvolution pe(p);
  trajio::ParsOutput po(p);
  Picture& picture = addPictureParameter(p);
  qbit::Pars pq(p);
  mode::Pars pm(p);
  jaynescummings::Pars pjc(p);

  if (update(p, args) == UpdateResult::help) {
    printHelp(p, std::cout);
    return 0;
  }

  auto q = qbit::make(pq, picture);
  auto m = mode::make(pm, picture);
  StateVector psi = qbit::init(pq) * mode::init(pm);
  auto sys = std::make_shared<Composite>(
      makeBinary(jaynescummings::make(q, m, pjc)));
  EvolveOptions opts;
  opts.table = &p;
  return evolve(psi, sys, pe, po, opts);
}

int runRing(const std::vector<std::string>& args) {
  ParameterTable p;
  ParsEvolution pe(p);
  trajio::ParsOutput po(p);
  Picture& picture = addPictureParameter(p);
  qbit::Pars pq(p);
  mode::Pars pmP(p, "P");
  mode::Pars pmM(p, "M");
  jaynescummings::Pars pjcP(p, "P");
  jaynescummings::Pars pjcM(p, "M");
  complex& u = p.add("u", "ternary coupling strength", complex{});

  if (update(p, args) == UpdateResult::help) {
    printHelp(p, std::cout);
    return 0;
  }

  auto q = qbit::make(pq, picture);
  auto plus = mode::make(pmP, picture);
  auto minus = mode::make(pmM, picture);

  StateVector psi = qbit::init(pq) * mode::init(pmP) * mode::init(pmM);
  std::vector<Act> acts;
  acts.emplace_back(std::vector<int>{0, 1}, jaynescummings::make(q, plus, pjcP));
  acts.emplace_back(std::vector<int>{0, 2}, jaynescummings::make(q, minus, pjcM));
  acts.emplace_back(std::vector<int>{1, 2, 0}, makeTernaryCoupling(plus, minus, q, u));
  auto sys = std::make_shared<Composite>(
      makeComposite({q, plus, minus}, std::move(acts)));
  EvolveOptions opts;
  opts.table = &p;
  return evolve(psi, sys, pe, po, opts);
}

}  // namespace

int main(int argc, char* argv[]) {
  if (argc < 2) {
    printUsage(std::cerr);
    return 2;
  }
  const std::string cmd = argv[1];
  std::vector<std::string> args(argv + 2, argv + argc);

  if (cmd == "--help" || cmd == "help") {
    printUsage(std::cout);
    return 0;
  }

  try {
    if (cmd == "mode") return runMode(args);
    if (cmd == "binary") return runBinary(args);
    if (cmd == "ring") return runRing(args);
    std::cerr << "unknown subcommand: " << cmd << "\n";
    printUsage(std::cerr);
    return 2;
  } catch (const oqs::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
