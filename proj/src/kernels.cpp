#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "oqs/tridiagonal.hpp"

// Strided application of the one-leg operator kernels. The tensor is viewed
// as outer x D x inner with D the target-leg dimension and inner the
// contiguous stride of that leg; every output element is written by exactly
// one loop iteration, so the OpenMP split cannot change the result.

namespace oqs {

namespace {

constexpr std::size_t kParallelGrain = 1u << 15;

struct LegGeom {
  std::size_t outer, D, S, total;
};

LegGeom legGeometry(const std::vector<int>& dims, int leg) {
  if (leg < 0 || leg >= static_cast<int>(dims.size()))
    throw std::invalid_argument("leg ordinal out of range");
  LegGeom g{};
  g.D = static_cast<std::size_t>(dims[leg]);
  g.S = 1;
  for (std::size_t l = leg + 1; l < dims.size(); ++l) g.S *= static_cast<std::size_t>(dims[l]);
  g.total = checkedProduct(dims);
  g.outer = g.total / (g.D * g.S);
  return g;
}

void checkApplyArgs(const Tridiagonal& op, int leg, const std::vector<int>& dims,
                    std::size_t inSize, std::size_t accSize) {
  if (leg < 0 || leg >= static_cast<int>(dims.size()))
    throw std::invalid_argument("leg ordinal out of range");
  if (op.dim() != dims[leg]) throw std::invalid_argument("leg dimension mismatch");
  const std::size_t total = checkedProduct(dims);
  if (inSize != total || accSize != total)
    throw std::invalid_argument("leg dimension mismatch");
}

void tridiagKernel(const Tridiagonal& op, const LegGeom& g, std::span<const complex> in,
                   std::span<complex> acc, complex pref) {
  const std::size_t D = g.D, S = g.S, K = static_cast<std::size_t>(op.offset());
  const auto diag = op.diagonal();
  const auto up = op.upper();
  const auto low = op.lower();
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(g.outer * D);

#pragma omp parallel for schedule(static) if (g.total >= kParallelGrain)
  for (std::ptrdiff_t rw = 0; rw < rows; ++rw) {
    const std::size_t n = static_cast<std::size_t>(rw) % D;
    const std::size_t base = static_cast<std::size_t>(rw) * S;
    complex* a = acc.data() + base;
    if (!diag.empty()) {
      const complex c = pref * diag[n];
      const complex* x = in.data() + base;
      for (std::size_t i = 0; i < S; ++i) a[i] += c * x[i];
    }
    if (!up.empty() && n + K < D) {
      const complex c = pref * up[n];
      const complex* x = in.data() + base + K * S;
      for (std::size_t i = 0; i < S; ++i) a[i] += c * x[i];
    }
    if (!low.empty() && n >= K) {
      const complex c = pref * low[n - K];
      const complex* x = in.data() + base - K * S;
      for (std::size_t i = 0; i < S; ++i) a[i] += c * x[i];
    }
  }
}

void productTermKernel(const ProductTerm& term, double t, const std::vector<int>& dims,
                       std::span<const complex> in, std::span<complex> acc) {
  const auto factors = term.factors();
  if (factors.size() == 1) {
    const auto& [leg, op] = factors[0];
    checkApplyArgs(op, leg, dims, in.size(), acc.size());
    tridiagKernel(dressWithFreqs(op, t), legGeometry(dims, leg), in, acc,
                  term.coefficient());
    return;
  }

  thread_local std::vector<complex> bufA, bufB;
  bufA.assign(in.size(), complex{});
  std::span<const complex> cur = in;
  std::span<complex> next = bufA;
  for (std::size_t k = 0; k + 1 < factors.size(); ++k) {
    const auto& [leg, op] = factors[k];
    checkApplyArgs(op, leg, dims, cur.size(), next.size());
    tridiagKernel(dressWithFreqs(op, t), legGeometry(dims, leg), cur, next, complex{1.0});
    if (k + 2 < factors.size()) {
      std::vector<complex>& other = (next.data() == bufA.data()) ? bufB : bufA;
      other.assign(in.size(), complex{});
      cur = next;
      next = other;
    } else {
      cur = next;
    }
  }
  const auto& [leg, op] = factors.back();
  checkApplyArgs(op, leg, dims, cur.size(), acc.size());
  tridiagKernel(dressWithFreqs(op, t), legGeometry(dims, leg), cur, acc,
                term.coefficient());
}

}  // namespace

void applyTridiagonal(const Tridiagonal& op, int leg, const std::vector<int>& dims,
                      std::span<const complex> in, std::span<complex> acc,
                      complex prefactor) {
  checkApplyArgs(op, leg, dims, in.size(), acc.size());
  tridiagKernel(op, legGeometry(dims, leg), in, acc, prefactor);
}

void applyTridiagonal(const Tridiagonal& op, int leg, const StateVector& in,
                      StateVector& acc, complex prefactor) {
  if (acc.dims() != in.dims()) throw std::invalid_argument("leg dimension mismatch");
  applyTridiagonal(op, leg, in.dims(), in.amplitudes(), acc.amplitudes(), prefactor);
}

void applyProductTerm(const ProductTerm& term, double t, const std::vector<int>& dims,
                      std::span<const complex> in, std::span<complex> acc) {
  productTermKernel(term, t, dims, in, acc);
}

void applyProductTerm(const ProductTerm& term, double t, const StateVector& in,
                      StateVector& acc) {
  if (acc.dims() != in.dims()) throw std::invalid_argument("leg dimension mismatch");
  productTermKernel(term, t, in.dims(), in.amplitudes(), acc.amplitudes());
}

void applyPropagator(const DiagonalPropagator& u, double t, const std::vector<int>& dims,
                     std::span<complex> data, Direction dir) {
  const LegGeom g = legGeometry(dims, u.leg);
  if (u.exponents.size() != g.D)
    throw std::invalid_argument("propagator length does not match the leg dimension");
  if (data.size() != g.total) throw std::invalid_argument("leg dimension mismatch");
  const double sgn = (dir == Direction::forward) ? t : -t;
  const std::size_t DS = g.D * g.S;
  for (std::size_t n = 0; n < g.D; ++n) {
    const complex f = std::exp(sgn * u.exponents[n]);
    for (std::size_t o = 0; o < g.outer; ++o) {
      complex* a = data.data() + o * DS + n * g.S;
      for (std::size_t i = 0; i < g.S; ++i) a[i] *= f;
    }
  }
}

void applyPropagator(const DiagonalPropagator& u, double t, StateVector& state,
                     Direction dir) {
  applyPropagator(u, t, state.dims(), state.amplitudes(), dir);
}

namespace ref {

// plain odometer walk over every amplitude
void applyTridiagonal(const Tridiagonal& op, int leg, const StateVector& in,
                      StateVector& acc, complex prefactor) {
  if (acc.dims() != in.dims()) throw std::invalid_argument("leg dimension mismatch");
  const auto& dims = in.dims();
  checkApplyArgs(op, leg, dims, in.size(), acc.size());

  const auto strides = rowMajorStrides(dims);
  const std::size_t S = strides[leg];
  const int D = dims[leg];
  const int K = op.offset();
  const auto diag = op.diagonal();
  const auto up = op.upper();
  const auto low = op.lower();

  std::vector<int> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < in.size(); ++flat) {
    const int n = idx[leg];
    if (!diag.empty()) acc[flat] += prefactor * diag[n] * in[flat];
    if (!up.empty() && n + K < D) acc[flat] += prefactor * up[n] * in[flat + K * S];
    if (!low.empty() && n >= K) acc[flat] += prefactor * low[n - K] * in[flat - K * S];
    for (int l = static_cast<int>(dims.size()) - 1; l >= 0; --l) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
}

void applyProductTerm(const ProductTerm& term, double t, const StateVector& in,
                      StateVector& acc) {
  StateVector cur = in;
  StateVector next(in.dims());
  const auto factors = term.factors();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    next.setZero();
    const complex pref = (k + 1 == factors.size()) ? term.coefficient() : complex{1.0};
    ref::applyTridiagonal(dressWithFreqs(factors[k].second, t), factors[k].first, cur,
                          next, pref);
    cur = next;
  }
  acc += cur;
}

}  // namespace ref

}  // namespace oqs
