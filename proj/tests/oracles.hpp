#pragma once

// Dense-matrix oracles for the operator kernels and the evolution equations.
// Everything here goes through explicit matrix arithmetic so it shares no
// code path with the strided kernels it checks; the eigensolver works on the
// real symmetric embedding instead of the complex matrix.

#include <random>
#include <vector>

#include "oqs/composite.hpp"
#include "oqs/state.hpp"
#include "oqs/tridiagonal.hpp"

namespace oracle {

using oqs::complex;

struct CMat {
  std::size_t n = 0;
  std::vector<complex> a;

  CMat() = default;
  explicit CMat(std::size_t n_) : n(n_), a(n_ * n_) {}

  complex& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  complex at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

CMat eye(std::size_t n);
CMat kron(const CMat& x, const CMat& y);
CMat mul(const CMat& x, const CMat& y);
CMat add(const CMat& x, const CMat& y);
CMat scale(complex c, const CMat& x);
CMat dagger(const CMat& x);
CMat conjugate(const CMat& x);
double maxAbsDiff(const CMat& x, const CMat& y);

std::vector<complex> matvec(const CMat& m, std::span<const complex> v);

// dense form of a (dressed) tridiagonal at time t
CMat denseOf(const oqs::Tridiagonal& op, double t);
// I x ... x m x ... x I over the leg structure
CMat liftToLeg(const CMat& m, const std::vector<int>& dims, int leg);
CMat denseOfProductTerm(const oqs::ProductTerm& term, double t, const std::vector<int>& dims);
// sum of the system's derivative terms, i.e. dense -i H_nh(t)
CMat denseGenerator(const oqs::QuantumSystem& sys, double t);
CMat denseOfPropagator(const oqs::DiagonalPropagator& u, double t,
                       const std::vector<int>& dims);

// dense Liouvillian superoperator on row-major vec(rho)
CMat denseLiouvillian(const oqs::QuantumSystem& sys, double t);

// ascending eigenvalues via real symmetric Jacobi on the 2n x 2n embedding
std::vector<double> hermitianEigenOracle(const CMat& m);

// randomized inputs
oqs::StateVector randomState(std::vector<int> dims, std::mt19937_64& rng);
oqs::Tridiagonal randomTridiagonal(int dim, int offset, bool withFreqs,
                                   std::mt19937_64& rng);

}  // namespace oracle
