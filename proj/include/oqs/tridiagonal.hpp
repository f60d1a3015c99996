#pragma once

#include <span>
#include <utility>
#include <vector>

#include "oqs/state.hpp"

namespace oqs {

// One-leg operator with a diagonal plus one pair of off-diagonals at a fixed
// offset K: entries m[n,n] = diagonal[n], m[n,n+K] = upper[n],
// m[n+K,n] = lower[n]. Any of the three bands may be absent (empty vector).
//
// freqs, when present, hold per-index exponent rates nu_n: the operator then
// stands for U(t)^-1 M U(t) with U(t) = diag(exp(nu_n t)). For a unitary
// picture nu_n = -i omega_n with real frequencies omega_n, which makes the
// dressed upper band upper[n] * exp(+i(omega_n - omega_{n+K}) t).
class Tridiagonal {
public:
  Tridiagonal(int dim, int offset, std::vector<complex> diagonal,
              std::vector<complex> upper, std::vector<complex> lower,
              std::vector<complex> freqs = {});

  int dim() const { return dim_; }
  int offset() const { return offset_; }
  std::span<const complex> diagonal() const { return diagonal_; }
  std::span<const complex> upper() const { return upper_; }
  std::span<const complex> lower() const { return lower_; }
  std::span<const complex> freqs() const { return freqs_; }
  bool hasFreqs() const { return !freqs_.empty(); }

  bool hermitian(double tol = 1e-12) const;
  // elementwise complex conjugate (bands stay in place; freqs conjugated too)
  Tridiagonal conjugated() const;

private:
  int dim_, offset_;
  std::vector<complex> diagonal_, upper_, lower_, freqs_;
};

// ladder-operator builders shared by the concrete elements
namespace ops {
Tridiagonal lowering(int dim);   // m[n,n+1] = sqrt(n+1)
Tridiagonal raising(int dim);    // m[n+1,n] = sqrt(n+1)
Tridiagonal number(int dim);     // m[n,n] = n
Tridiagonal identity(int dim);
Tridiagonal diagonal(std::vector<complex> entries);
}  // namespace ops

// Returns op with the interaction-picture phases at time t multiplied into
// the off-diagonal bands. At t = 0, or without freqs, the operator comes
// back unchanged.
Tridiagonal dressWithFreqs(const Tridiagonal& op, double t);

// acc += prefactor * (op acting on the given leg of in); `in` is untouched.
void applyTridiagonal(const Tridiagonal& op, int leg, const StateVector& in,
                      StateVector& acc, complex prefactor);
void applyTridiagonal(const Tridiagonal& op, int leg, const std::vector<int>& dims,
                      std::span<const complex> in, std::span<complex> acc,
                      complex prefactor);

// Product of per-leg factors with a scalar coefficient; legs are distinct.
class ProductTerm {
public:
  ProductTerm(complex coefficient, std::vector<std::pair<int, Tridiagonal>> factors);

  complex coefficient() const { return coefficient_; }
  std::span<const std::pair<int, Tridiagonal>> factors() const { return factors_; }

  ProductTerm remapLegs(std::span<const int> legOfFactor) const;
  ProductTerm conjugated() const;
  ProductTerm shiftedLegs(int shift) const;

private:
  complex coefficient_;
  std::vector<std::pair<int, Tridiagonal>> factors_;  // sorted by leg
};

// acc += coefficient * (product of dressed factors) applied leg-wise to in
void applyProductTerm(const ProductTerm& term, double t, const StateVector& in,
                      StateVector& acc);
void applyProductTerm(const ProductTerm& term, double t, const std::vector<int>& dims,
                      std::span<const complex> in, std::span<complex> acc);

// Diagonal exact propagator of one leg: amplitude n picks up exp(z_n t).
struct DiagonalPropagator {
  int leg = 0;
  std::vector<complex> exponents;

  bool unitary(double tol = 1e-14) const;
};

enum class Direction { forward, backward };

// In-place, allocation-free: amplitudes along the leg scaled by exp(+-z_n t).
void applyPropagator(const DiagonalPropagator& u, double t, StateVector& state,
                     Direction dir);
void applyPropagator(const DiagonalPropagator& u, double t, const std::vector<int>& dims,
                     std::span<complex> data, Direction dir);

// straightforward serial implementations kept as a cross-check for the
// strided kernels above
namespace ref {
void applyTridiagonal(const Tridiagonal& op, int leg, const StateVector& in,
                      StateVector& acc, complex prefactor);
void applyProductTerm(const ProductTerm& term, double t, const StateVector& in,
                      StateVector& acc);
}  // namespace ref

}  // namespace oqs
