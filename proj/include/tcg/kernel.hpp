#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tcg/model.hpp"

namespace tcg {

/// Interaction kernel between Matsubara indices n and m, in units g = 1 and
/// frequencies in units of 2*pi*T: 1/|n-m|^gamma, with the diagonal set to 0.
template <class Real>
Real v_gamma(const ModelParams<Real>& params, long n, long m) {
  using std::pow;
  if (n == m) return Real(0);
  const Real d = Real(n > m ? n - m : m - n);
  return pow(d, -params.gamma);
}

/// Diagonal element of the first operator block:
/// (1/(2n+1)) * sum_{k=1..n} 2/k^gamma.  Empty sum for n = 0.
template <class Real>
Real g1_diagonal(Real gamma, std::size_t n) {
  using std::pow;
  Real acc(0);
  for (std::size_t k = 1; k <= n; ++k) acc += Real(2) * pow(Real(k), -gamma);
  return acc / Real(2 * n + 1);
}

/// Off-diagonal coupling block: (1-delta_{n,m}) / (sqrt(2n+1) |n-m|^gamma sqrt(2m+1)).
template <class Real>
Real g2_element(Real gamma, std::size_t n, std::size_t m) {
  using std::pow;
  using std::sqrt;
  if (n == m) return Real(0);
  const Real d = Real(n > m ? n - m : m - n);
  return pow(d, -gamma) / (sqrt(Real(2 * n + 1)) * sqrt(Real(2 * m + 1)));
}

/// Everywhere-positive block: 1 / (sqrt(2n+1) (n+m+1)^gamma sqrt(2m+1)).
template <class Real>
Real g3_element(Real gamma, std::size_t n, std::size_t m) {
  using std::pow;
  using std::sqrt;
  return pow(Real(n + m + 1), -gamma) /
         (sqrt(Real(2 * n + 1)) * sqrt(Real(2 * m + 1)));
}

/// Assembles the truncated operator: entry (i,j) = -G1 delta_{ij} + G2 + G3.
/// The upper triangle is filled row-major and mirrored, so the matrix is
/// exactly symmetric; the G1 prefix sums are accumulated incrementally in
/// index order, which makes the leading blocks nest bit-for-bit across N.
template <class Real>
TruncatedOperator<Real> assemble(const ModelParams<Real>& params, std::size_t n) {
  using std::pow;
  if (n == 0) throw std::invalid_argument("assemble: dimension must be >= 1");
  const Real gamma = params.gamma;
  Matrix<Real> mat(n);
  Real prefix(0);  // sum_{k=1..i} 2/k^gamma
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 1) prefix += Real(2) * pow(Real(i), -gamma);
    mat(i, i) = -prefix / Real(2 * i + 1) + g3_element(gamma, i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real e = g2_element(gamma, i, j) + g3_element(gamma, i, j);
      mat(i, j) = e;
      mat(j, i) = e;
    }
  }
  return TruncatedOperator<Real>(n, std::move(mat));
}

/// G2 + G3 restricted to the N x N block (entrywise positive).
template <class Real>
Matrix<Real> g2_plus_g3_matrix(Real gamma, std::size_t n) {
  Matrix<Real> mat(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Real e = g2_element(gamma, i, j) + g3_element(gamma, i, j);
      mat(i, j) = e;
      mat(j, i) = e;
    }
  return mat;
}

/// The diagonal of G1 restricted to the first N indices.
template <class Real>
std::vector<Real> g1_diagonal_vector(Real gamma, std::size_t n) {
  using std::pow;
  std::vector<Real> diag(n);
  Real prefix(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 1) prefix += Real(2) * pow(Real(i), -gamma);
    diag[i] = prefix / Real(2 * i + 1);
  }
  return diag;
}

}  // namespace tcg
