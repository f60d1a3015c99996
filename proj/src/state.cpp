#include "oqs/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oqs {

namespace {

void checkDims(const std::vector<int>& dims) {
  if (dims.empty() || dims.size() > static_cast<std::size_t>(kMaxRank))
    throw std::invalid_argument("rank must be between 1 and " + std::to_string(kMaxRank));
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("leg dimensions must be positive");
}

// walks a multi-index through the dims of the selected legs; returns false on wrap
bool advance(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int l = static_cast<int>(idx.size()) - 1; l >= 0; --l) {
    if (++idx[l] < dims[l]) return true;
    idx[l] = 0;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> rowMajorStrides(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (int l = static_cast<int>(dims.size()) - 1; l >= 0; --l) {
    s[l] = acc;
    acc *= static_cast<std::size_t>(dims[l]);
  }
  return s;
}

std::size_t checkedProduct(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

StateVector::StateVector(std::vector<int> dims) : dims_(std::move(dims)) {
  checkDims(dims_);
  amp_.assign(checkedProduct(dims_), complex{});
}

StateVector::StateVector(std::vector<int> dims, std::vector<complex> amplitudes)
    : dims_(std::move(dims)), amp_(std::move(amplitudes)) {
  checkDims(dims_);
  if (amp_.size() != checkedProduct(dims_))
    throw std::invalid_argument("amplitude count does not match the dimensions");
}

StateVector StateVector::basis(std::vector<int> dims, std::span<const int> index) {
  StateVector s(std::move(dims));
  s[s.flatIndex(index)] = 1.0;
  return s;
}

StateVector StateVector::basis(std::vector<int> dims, std::initializer_list<int> index) {
  return basis(std::move(dims), std::span<const int>(index.begin(), index.size()));
}

complex StateVector::at(std::initializer_list<int> index) const {
  return at(std::span<const int>(index.begin(), index.size()));
}

complex& StateVector::at(std::initializer_list<int> index) {
  return at(std::span<const int>(index.begin(), index.size()));
}

std::size_t StateVector::flatIndex(std::span<const int> index) const {
  if (index.size() != dims_.size()) throw std::invalid_argument("multi-index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t l = 0; l < dims_.size(); ++l) {
    if (index[l] < 0 || index[l] >= dims_[l])
      throw std::out_of_range("multi-index out of range");
    flat = flat * static_cast<std::size_t>(dims_[l]) + static_cast<std::size_t>(index[l]);
  }
  return flat;
}

double StateVector::norm() const {
  double s = 0;
  for (const complex& c : amp_) s += std::norm(c);
  return std::sqrt(s);
}

void StateVector::setZero() { std::fill(amp_.begin(), amp_.end(), complex{}); }

StateVector& StateVector::operator*=(complex c) {
  for (complex& a : amp_) a *= c;
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.dims_ != dims_) throw std::invalid_argument("state dimension mismatch");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += other.amp_[i];
  return *this;
}

DensityOperator::DensityOperator(std::vector<int> dims) : dims_(std::move(dims)) {
  checkDims(dims_);
  flatDim_ = checkedProduct(dims_);
  el_.assign(flatDim_ * flatDim_, complex{});
}

DensityOperator::DensityOperator(std::vector<int> dims, std::vector<complex> elements)
    : dims_(std::move(dims)), el_(std::move(elements)) {
  checkDims(dims_);
  flatDim_ = checkedProduct(dims_);
  if (el_.size() != flatDim_ * flatDim_)
    throw std::invalid_argument("element count does not match the dimensions");
}

complex DensityOperator::trace() const {
  complex t{};
  for (std::size_t i = 0; i < flatDim_; ++i) t += (*this)(i, i);
  return t;
}

void DensityOperator::setZero() { std::fill(el_.begin(), el_.end(), complex{}); }

DensityOperator& DensityOperator::operator*=(complex c) {
  for (complex& e : el_) e *= c;
  return *this;
}

PartySelector::PartySelector(std::vector<int> legs) : legs_(std::move(legs)) {
  std::sort(legs_.begin(), legs_.end());
  if (legs_.empty()) throw std::invalid_argument("improper party: empty leg set");
  if (std::adjacent_find(legs_.begin(), legs_.end()) != legs_.end())
    throw std::invalid_argument("improper party: duplicate leg");
  if (legs_.front() < 0) throw std::invalid_argument("improper party: negative leg ordinal");
}

PartySelector::PartySelector(std::initializer_list<int> legs)
    : PartySelector(std::vector<int>(legs)) {}

bool PartySelector::contains(int leg) const {
  return std::binary_search(legs_.begin(), legs_.end(), leg);
}

void PartySelector::checkProper(int rank) const {
  if (legs_.back() >= rank) throw std::invalid_argument("improper party: leg ordinal out of range");
  if (legs_.size() >= static_cast<std::size_t>(rank))
    throw std::invalid_argument("improper party: must be a proper subset of the legs");
}

PartySelector PartySelector::complement(int rank) const {
  checkProper(rank);
  std::vector<int> rest;
  for (int l = 0; l < rank; ++l)
    if (!contains(l)) rest.push_back(l);
  return PartySelector(std::move(rest));
}

StateVector directProduct(const StateVector& a, const StateVector& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  StateVector out(std::move(dims));
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const complex ai = a[i];
    for (std::size_t j = 0; j < nb; ++j) out[i * nb + j] = ai * b[j];
  }
  return out;
}

double norm(const StateVector& a) { return a.norm(); }

void renormalizeInPlace(StateVector& a) {
  const double n = a.norm();
  if (n <= 0.0) throw std::runtime_error("zero-norm state");
  a *= complex{1.0 / n, 0.0};
}

StateVector renormalize(StateVector a) {
  renormalizeInPlace(a);
  return a;
}

DensityOperator dyad(const StateVector& a) {
  DensityOperator rho(a.dims());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const complex ai = a[i];
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = ai * std::conj(a[j]);
  }
  return rho;
}

namespace {

struct SplitLegs {
  std::vector<int> keptDims, tracedDims;
  std::vector<std::size_t> keptStrides, tracedStrides;  // strides in the source tensor
};

SplitLegs splitLegs(const std::vector<int>& dims, const PartySelector& keep) {
  keep.checkProper(static_cast<int>(dims.size()));
  const auto strides = rowMajorStrides(dims);
  SplitLegs out;
  for (int l = 0; l < static_cast<int>(dims.size()); ++l) {
    if (keep.contains(l)) {
      out.keptDims.push_back(dims[l]);
      out.keptStrides.push_back(strides[l]);
    } else {
      out.tracedDims.push_back(dims[l]);
      out.tracedStrides.push_back(strides[l]);
    }
  }
  return out;
}

std::size_t offsetOf(const std::vector<int>& idx, const std::vector<std::size_t>& strides) {
  std::size_t o = 0;
  for (std::size_t l = 0; l < idx.size(); ++l)
    o += static_cast<std::size_t>(idx[l]) * strides[l];
  return o;
}

// enumerates all flat offsets of a leg subset in source-tensor coordinates
std::vector<std::size_t> enumerateOffsets(const std::vector<int>& dims,
                                          const std::vector<std::size_t>& strides) {
  std::vector<std::size_t> offs;
  offs.reserve(checkedProduct(dims));
  std::vector<int> idx(dims.size(), 0);
  do {
    offs.push_back(offsetOf(idx, strides));
  } while (advance(idx, dims));
  return offs;
}

}  // namespace

DensityOperator partialTrace(const DensityOperator& rho, const PartySelector& keep) {
  const SplitLegs sl = splitLegs(rho.dims(), keep);
  const auto keptOffs = enumerateOffsets(sl.keptDims, sl.keptStrides);
  const auto trOffs = enumerateOffsets(sl.tracedDims, sl.tracedStrides);

  DensityOperator out(sl.keptDims);
  for (std::size_t i = 0; i < keptOffs.size(); ++i)
    for (std::size_t j = 0; j < keptOffs.size(); ++j) {
      complex sum{};
      for (std::size_t m : trOffs) sum += rho(keptOffs[i] + m, keptOffs[j] + m);
      out(i, j) = sum;
    }
  return out;
}

DensityOperator reducedDensity(const StateVector& psi, const PartySelector& keep) {
  const SplitLegs sl = splitLegs(psi.dims(), keep);
  const auto keptOffs = enumerateOffsets(sl.keptDims, sl.keptStrides);
  const auto trOffs = enumerateOffsets(sl.tracedDims, sl.tracedStrides);

  DensityOperator out(sl.keptDims);
  for (std::size_t i = 0; i < keptOffs.size(); ++i)
    for (std::size_t j = 0; j < keptOffs.size(); ++j) {
      complex sum{};
      for (std::size_t m : trOffs)
        sum += psi[keptOffs[i] + m] * std::conj(psi[keptOffs[j] + m]);
      out(i, j) = sum;
    }
  return out;
}

DensityOperator partialTranspose(const DensityOperator& rho, const PartySelector& party) {
  const auto& dims = rho.dims();
  party.checkProper(static_cast<int>(dims.size()));
  const auto strides = rowMajorStrides(dims);

  DensityOperator out(dims);
  std::vector<int> ket(dims.size(), 0);
  do {
    std::vector<int> bra(dims.size(), 0);
    do {
      std::size_t src_i = 0, src_j = 0, dst_i = 0, dst_j = 0;
      for (std::size_t l = 0; l < dims.size(); ++l) {
        src_i += static_cast<std::size_t>(ket[l]) * strides[l];
        src_j += static_cast<std::size_t>(bra[l]) * strides[l];
        const bool swap = party.contains(static_cast<int>(l));
        dst_i += static_cast<std::size_t>(swap ? bra[l] : ket[l]) * strides[l];
        dst_j += static_cast<std::size_t>(swap ? ket[l] : bra[l]) * strides[l];
      }
      out(dst_i, dst_j) = rho(src_i, src_j);
    } while (advance(bra, dims));
  } while (advance(ket, dims));
  return out;
}

DensityOperator permuteLegs(const DensityOperator& rho, std::span<const int> perm) {
  const auto& dims = rho.dims();
  if (perm.size() != dims.size()) throw std::invalid_argument("permutation rank mismatch");
  std::vector<int> seen(dims.size(), 0);
  std::vector<int> newDims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] < 0 || perm[k] >= static_cast<int>(dims.size()) || seen[perm[k]]++)
      throw std::invalid_argument("invalid leg permutation");
    newDims[k] = dims[perm[k]];
  }
  const auto srcStrides = rowMajorStrides(dims);
  const auto dstStrides = rowMajorStrides(newDims);

  DensityOperator out(newDims);
  std::vector<int> ket(dims.size(), 0);
  do {
    std::vector<int> bra(dims.size(), 0);
    do {
      std::size_t src_i = offsetOf(ket, srcStrides);
      std::size_t src_j = offsetOf(bra, srcStrides);
      std::size_t dst_i = 0, dst_j = 0;
      for (std::size_t k = 0; k < perm.size(); ++k) {
        dst_i += static_cast<std::size_t>(ket[perm[k]]) * dstStrides[k];
        dst_j += static_cast<std::size_t>(bra[perm[k]]) * dstStrides[k];
      }
      out(dst_i, dst_j) = rho(src_i, src_j);
    } while (advance(bra, dims));
  } while (advance(ket, dims));
  return out;
}

std::vector<double> hermitianEigenvalues(const DensityOperator& m) {
  const std::size_t n = m.flatDim();
  std::vector<complex> a(m.elements().begin(), m.elements().end());

  double maxAbs = 0;
  for (const complex& c : a) maxAbs = std::max(maxAbs, std::abs(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(a[i * n + j] - std::conj(a[j * n + i])) > 1e-9 * std::max(1.0, maxAbs))
        throw std::invalid_argument("hermitianEigenvalues: matrix is not Hermitian");

  // symmetrize away representation roundoff
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = complex{a[i * n + i].real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const complex v = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));
      a[i * n + j] = v;
      a[j * n + i] = std::conj(v);
    }
  }

  double frob = 0;
  for (const complex& c : a) frob += std::norm(c);
  const double tol = 1e-12 * std::max(1.0, std::sqrt(frob));

  const int maxSweeps = 100;
  for (int sweep = 0; sweep < maxSweeps; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += std::norm(a[i * n + j]);
    if (std::sqrt(off) <= tol) {
      std::vector<double> ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i].real();
      std::sort(ev.begin(), ev.end());
      return ev;
    }

    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const complex phase = apq / r;  // e^{i phi}
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // unitary W: W[p][p]=c, W[p][q]=s, W[q][p]=-s*conj(phase), W[q][q]=c*conj(phase)
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const complex akp = a[k * n + p];
          const complex akq = a[k * n + q];
          const complex nkp = c * akp - s * std::conj(phase) * akq;
          const complex nkq = s * akp + c * std::conj(phase) * akq;
          a[k * n + p] = nkp;
          a[k * n + q] = nkq;
          a[p * n + k] = std::conj(nkp);
          a[q * n + k] = std::conj(nkq);
        }
        a[p * n + p] = complex{app - t * r, 0.0};
        a[q * n + q] = complex{aqq + t * r, 0.0};
        a[p * n + q] = complex{};
        a[q * n + p] = complex{};
      }
  }
  throw std::runtime_error("hermitianEigenvalues: Jacobi sweeps failed to converge");
}

double negativity(const DensityOperator& rho, const PartySelector& party) {
  if (std::abs(rho.trace() - complex{1.0, 0.0}) > 1e-9)
    throw std::invalid_argument("negativity: density operator trace must be 1");
  const auto ev = hermitianEigenvalues(partialTranspose(rho, party));
  double neg = 0;
  for (double l : ev)
    if (l < 0) neg -= l;
  return neg;
}

}  // namespace oqs
