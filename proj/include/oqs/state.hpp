#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace oqs {

using complex = std::complex<double>;

inline constexpr int kMaxRank = 8;

std::vector<std::size_t> rowMajorStrides(const std::vector<int>& dims);
std::size_t checkedProduct(const std::vector<int>& dims);

// Multi-leg pure state: dense complex amplitudes over the product of the
// per-leg truncation dimensions, stored row-major.
class StateVector {
public:
  explicit StateVector(std::vector<int> dims);  // all-zero amplitudes
  StateVector(std::vector<int> dims, std::vector<complex> amplitudes);

  static StateVector basis(std::vector<int> dims, std::initializer_list<int> index);
  static StateVector basis(std::vector<int> dims, std::span<const int> index);

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return amp_.size(); }

  std::span<const complex> amplitudes() const { return amp_; }
  std::span<complex> amplitudes() { return amp_; }
  std::vector<complex>& raw() { return amp_; }
  const std::vector<complex>& raw() const { return amp_; }

  complex operator[](std::size_t flat) const { return amp_[flat]; }
  complex& operator[](std::size_t flat) { return amp_[flat]; }
  complex at(std::span<const int> index) const { return amp_[flatIndex(index)]; }
  complex& at(std::span<const int> index) { return amp_[flatIndex(index)]; }
  complex at(std::initializer_list<int> index) const;
  complex& at(std::initializer_list<int> index);

  std::size_t flatIndex(std::span<const int> index) const;

  double norm() const;
  void setZero();
  StateVector& operator*=(complex c);
  StateVector& operator+=(const StateVector& other);

private:
  std::vector<int> dims_;
  std::vector<complex> amp_;
};

// Mixed state over the same leg structure: ket multi-index then bra
// multi-index, i.e. a flat D x D matrix with D the total dimension.
class DensityOperator {
public:
  explicit DensityOperator(std::vector<int> dims);  // all-zero
  DensityOperator(std::vector<int> dims, std::vector<complex> elements);

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t flatDim() const { return flatDim_; }

  complex operator()(std::size_t i, std::size_t j) const { return el_[i * flatDim_ + j]; }
  complex& operator()(std::size_t i, std::size_t j) { return el_[i * flatDim_ + j]; }

  std::span<const complex> elements() const { return el_; }
  std::span<complex> elements() { return el_; }
  std::vector<complex>& raw() { return el_; }
  const std::vector<complex>& raw() const { return el_; }

  complex trace() const;
  void setZero();
  DensityOperator& operator*=(complex c);

private:
  std::vector<int> dims_;
  std::size_t flatDim_;
  std::vector<complex> el_;
};

// Non-empty proper subset of leg ordinals, kept sorted and unique.
class PartySelector {
public:
  explicit PartySelector(std::vector<int> legs);
  PartySelector(std::initializer_list<int> legs);

  const std::vector<int>& legs() const { return legs_; }
  bool contains(int leg) const;
  // proper = non-empty and not all legs; everything in range
  void checkProper(int rank) const;
  PartySelector complement(int rank) const;

private:
  std::vector<int> legs_;
};

StateVector directProduct(const StateVector& a, const StateVector& b);
inline StateVector operator*(const StateVector& a, const StateVector& b) {
  return directProduct(a, b);
}

double norm(const StateVector& a);
StateVector renormalize(StateVector a);  // throws on the zero vector
void renormalizeInPlace(StateVector& a);

DensityOperator dyad(const StateVector& a);

DensityOperator partialTrace(const DensityOperator& rho, const PartySelector& keep);
// partial trace of |psi><psi| without materializing the full dyad
DensityOperator reducedDensity(const StateVector& psi, const PartySelector& keep);

DensityOperator partialTranspose(const DensityOperator& rho, const PartySelector& party);

// perm maps new leg position -> old leg ordinal (applied to ket and bra alike)
DensityOperator permuteLegs(const DensityOperator& rho, std::span<const int> perm);

// Ascending eigenvalues of the flat flatDim x flatDim Hermitian matrix,
// cyclic Jacobi rotations. Throws if the matrix is visibly non-Hermitian or
// the sweep cap is hit.
std::vector<double> hermitianEigenvalues(const DensityOperator& m);

double negativity(const DensityOperator& rho, const PartySelector& party);

}  // namespace oqs
