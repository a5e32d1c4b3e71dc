#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tcg {

/// Parameters of the gamma-model interaction V(w) = (g/|w|)^gamma.
/// All internal matrix assembly is dimensionless (g = 1, frequencies in
/// units of 2*pi*T); g re-enters only when temperatures are reported.
template <class Real = double>
struct ModelParams {
  Real gamma;
  Real g;

  explicit ModelParams(Real gamma_, Real g_ = Real(1)) : gamma(gamma_), g(g_) {
    if (!(gamma > Real(0))) throw std::invalid_argument("gamma must be positive");
    if (!(g > Real(0))) throw std::invalid_argument("g must be positive");
  }
};

/// Dense symmetric square matrix, row-major storage.
template <class Real = double>
class Matrix {
 public:
  Matrix() : n_(0) {}
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, Real(0)) {}

  std::size_t size() const { return n_; }
  Real& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<Real>& data() const { return data_; }

  /// y = M x
  void multiply(const std::vector<Real>& x, std::vector<Real>& y) const {
    y.assign(n_, Real(0));
    for (std::size_t i = 0; i < n_; ++i) {
      Real acc(0);
      const Real* row = &data_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
  }

 private:
  std::size_t n_;
  std::vector<Real> data_;
};

/// Upper-left N x N block of the infinite operator, assembled once and
/// immutable afterwards.  Entries are exactly symmetric (upper triangle
/// filled, then mirrored) and nested: the leading block of an assembly at
/// dimension N reproduces the assembly at any smaller dimension bit-for-bit.
template <class Real = double>
struct TruncatedOperator {
  std::size_t n = 0;
  Matrix<Real> entries;

  TruncatedOperator() = default;
  TruncatedOperator(std::size_t n_, Matrix<Real> entries_)
      : n(n_), entries(std::move(entries_)) {}

  const Real& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }

  TruncatedOperator leading_block(std::size_t m) const {
    if (m > n) throw std::invalid_argument("leading_block: m exceeds dimension");
    Matrix<Real> sub(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sub(i, j) = entries(i, j);
    return TruncatedOperator(m, std::move(sub));
  }
};

}  // namespace tcg
