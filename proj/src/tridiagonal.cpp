#include "oqs/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oqs {

Tridiagonal::Tridiagonal(int dim, int offset, std::vector<complex> diagonal,
                         std::vector<complex> upper, std::vector<complex> lower,
                         std::vector<complex> freqs)
    : dim_(dim),
      offset_(offset),
      diagonal_(std::move(diagonal)),
      upper_(std::move(upper)),
      lower_(std::move(lower)),
      freqs_(std::move(freqs)) {
  if (dim_ < 1) throw std::invalid_argument("tridiagonal dimension must be positive");
  if (offset_ < 1 || offset_ >= dim_)
    throw std::invalid_argument("tridiagonal offset must satisfy 1 <= K < dim");
  const std::size_t band = static_cast<std::size_t>(dim_ - offset_);
  if (!diagonal_.empty() && diagonal_.size() != static_cast<std::size_t>(dim_))
    throw std::invalid_argument("tridiagonal diagonal length mismatch");
  if (!upper_.empty() && upper_.size() != band)
    throw std::invalid_argument("tridiagonal upper band length mismatch");
  if (!lower_.empty() && lower_.size() != band)
    throw std::invalid_argument("tridiagonal lower band length mismatch");
  if (!freqs_.empty() && freqs_.size() != static_cast<std::size_t>(dim_))
    throw std::invalid_argument("tridiagonal freqs length mismatch");
}

bool Tridiagonal::hermitian(double tol) const {
  for (const complex& d : diagonal_)
    if (std::abs(d.imag()) > tol) return false;
  const std::size_t band = static_cast<std::size_t>(dim_ - offset_);
  for (std::size_t n = 0; n < band; ++n) {
    const complex u = n < upper_.size() ? upper_[n] : complex{};
    const complex l = n < lower_.size() ? lower_[n] : complex{};
    if (std::abs(l - std::conj(u)) > tol) return false;
  }
  return true;
}

Tridiagonal Tridiagonal::conjugated() const {
  auto conjAll = [](std::vector<complex> v) {
    for (complex& c : v) c = std::conj(c);
    return v;
  };
  return Tridiagonal(dim_, offset_, conjAll(diagonal_), conjAll(upper_), conjAll(lower_),
                     conjAll(freqs_));
}

namespace ops {

Tridiagonal lowering(int dim) {
  std::vector<complex> up(static_cast<std::size_t>(dim - 1));
  for (int n = 0; n + 1 < dim; ++n) up[n] = std::sqrt(double(n + 1));
  return Tridiagonal(dim, 1, {}, std::move(up), {});
}

Tridiagonal raising(int dim) {
  std::vector<complex> low(static_cast<std::size_t>(dim - 1));
  for (int n = 0; n + 1 < dim; ++n) low[n] = std::sqrt(double(n + 1));
  return Tridiagonal(dim, 1, {}, {}, std::move(low));
}

Tridiagonal number(int dim) {
  std::vector<complex> d(static_cast<std::size_t>(dim));
  for (int n = 0; n < dim; ++n) d[n] = double(n);
  return Tridiagonal(dim, 1, std::move(d), {}, {});
}

Tridiagonal identity(int dim) {
  return Tridiagonal(dim, 1, std::vector<complex>(static_cast<std::size_t>(dim), 1.0), {},
                     {});
}

Tridiagonal diagonal(std::vector<complex> entries) {
  const int dim = static_cast<int>(entries.size());
  return Tridiagonal(dim, 1, std::move(entries), {}, {});
}

}  // namespace ops

Tridiagonal dressWithFreqs(const Tridiagonal& op, double t) {
  if (!op.hasFreqs() || t == 0.0) return op;
  const int K = op.offset();
  const auto nu = op.freqs();
  std::vector<complex> up(op.upper().begin(), op.upper().end());
  std::vector<complex> low(op.lower().begin(), op.lower().end());
  for (std::size_t n = 0; n < up.size(); ++n)
    up[n] *= std::exp((nu[n + K] - nu[n]) * t);
  for (std::size_t n = 0; n < low.size(); ++n)
    low[n] *= std::exp((nu[n] - nu[n + K]) * t);
  return Tridiagonal(op.dim(), K,
                     std::vector<complex>(op.diagonal().begin(), op.diagonal().end()),
                     std::move(up), std::move(low),
                     std::vector<complex>(nu.begin(), nu.end()));
}

ProductTerm::ProductTerm(complex coefficient,
                         std::vector<std::pair<int, Tridiagonal>> factors)
    : coefficient_(coefficient), factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("product term needs at least one factor");
  std::sort(factors_.begin(), factors_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k + 1 < factors_.size(); ++k)
    if (factors_[k].first == factors_[k + 1].first)
      throw std::invalid_argument("product term factors must act on distinct legs");
  if (factors_.front().first < 0)
    throw std::invalid_argument("product term leg ordinal must be non-negative");
}

ProductTerm ProductTerm::remapLegs(std::span<const int> legOfFactor) const {
  if (legOfFactor.size() != factors_.size())
    throw std::invalid_argument("leg map size mismatch");
  std::vector<std::pair<int, Tridiagonal>> f;
  f.reserve(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k)
    f.emplace_back(legOfFactor[k], factors_[k].second);
  return ProductTerm(coefficient_, std::move(f));
}

ProductTerm ProductTerm::conjugated() const {
  std::vector<std::pair<int, Tridiagonal>> f;
  f.reserve(factors_.size());
  for (const auto& [leg, op] : factors_) f.emplace_back(leg, op.conjugated());
  return ProductTerm(std::conj(coefficient_), std::move(f));
}

ProductTerm ProductTerm::shiftedLegs(int shift) const {
  std::vector<std::pair<int, Tridiagonal>> f;
  f.reserve(factors_.size());
  for (const auto& [leg, op] : factors_) f.emplace_back(leg + shift, op);
  return ProductTerm(coefficient_, std::move(f));
}

bool DiagonalPropagator::unitary(double tol) const {
  for (const complex& z : exponents)
    if (std::abs(z.real()) > tol) return false;
  return true;
}

}  // namespace oqs
