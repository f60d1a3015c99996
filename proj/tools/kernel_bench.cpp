// Times the strided operator kernels against the serial reference
// implementation, and an ensemble run serial vs OpenMP.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "oqs/evolution.hpp"
#include "oqs/mode.hpp"
#include "oqs/output.hpp"
#include "oqs/tridiagonal.hpp"

using namespace oqs;

namespace {

double bestOfThree(const std::function<void()>& fn) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

StateVector randomState(std::vector<int> dims, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1, 1);
  StateVector s(std::move(dims));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = complex{dist(rng), dist(rng)};
  return s;
}

struct NullSink final : trajio::RowSink {
  void writeRow(const trajio::DisplayRow&) override {}
};

void benchTridiagonal(const char* name, std::vector<int> dims, int leg, int reps) {
  const StateVector in = randomState(dims, 42);
  StateVector acc(dims);
  const Tridiagonal op = ops::lowering(dims[leg]);

  const double tRef = bestOfThree([&] {
    for (int r = 0; r < reps; ++r) ref::applyTridiagonal(op, leg, in, acc, 0.5);
  });
  const double tKernel = bestOfThree([&] {
    for (int r = 0; r < reps; ++r) applyTridiagonal(op, leg, in, acc, 0.5);
  });
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, tRef, tKernel, tRef / tKernel);
}

void benchEnsemble() {
  mode::Pars pm;
  pm.kappa = 1.0;
  pm.cutoff = 24;
  pm.minit = 2.0;
  auto sys = std::make_shared<SingleSystem>(mode::make(pm, Picture::UIP));
  const StateVector psi0 = mode::init(pm);

  ParsEvolution pe;
  pe.evol = EvolMode::ensemble;
  pe.T = 0.5;
  pe.Dt = 0.1;
  pe.nTraj = 64;
  pe.eps = 1e-6;

  NullSink sink;
  pe.threads = 1;
  const double serial = bestOfThree([&] { ensembleRun(sys, psi0, pe, sink); });
  pe.threads = omp_get_max_threads();
  const double parallel = bestOfThree([&] { ensembleRun(sys, psi0, pe, sink); });
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx  (%d threads)\n", "ensemble 64 x mcwf",
              serial, parallel, serial / parallel, pe.threads);
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %9s\n", "case", "reference", "kernel", "speedup");
  benchTridiagonal("rank-1 dim 65536", {65536}, 0, 200);
  benchTridiagonal("rank-3 (128,64,16) leg 0", {128, 64, 16}, 0, 200);
  benchTridiagonal("rank-3 (128,64,16) leg 1", {128, 64, 16}, 1, 200);
  benchTridiagonal("rank-3 (128,64,16) leg 2", {128, 64, 16}, 2, 200);
  benchEnsemble();
  return 0;
}
