#pragma once

#include <cmath>
#include <cstddef>

#include "tcg/closed_form.hpp"
#include "tcg/errors.hpp"
#include "tcg/kernel.hpp"
#include "tcg/model.hpp"

namespace tcg {

/// Riemann zeta for real s > 1: direct partial sum through cutoff_m terms
/// plus an Euler-Maclaurin tail through the B12 Bernoulli correction.
/// Absolute error is far below 1e-12 for all s >= 1.05.
template <class Real = double>
struct ZetaEvaluator {
  int cutoff_m = 20;
  int correction_order = 6;  // Bernoulli terms B2 .. B12

  Real operator()(Real s) const {
    using std::pow;
    if (!(s > Real(1) + Real(1e-6)))
      throw DivergentZeta("zeta requires s > 1 + 1e-6");
    const Real m = Real(cutoff_m);
    Real acc(0);
    for (int k = 1; k < cutoff_m; ++k) acc += pow(Real(k), -s);

    // B_{2k}/(2k)! for k = 1..6, as exact integer ratios
    static const long long kBernNum[] = {1, -1, 1, -1, 1, -691};
    static const long long kBernDen[] = {12, 720, 30240, 1209600, 47900160, 1307674368000LL};

    acc += pow(m, Real(1) - s) / (s - Real(1));
    acc += pow(m, -s) / Real(2);
    Real rising = s;               // s(s+1)...(s+2k-2)
    Real mpow = pow(m, -s - Real(1));
    for (int k = 1; k <= correction_order; ++k) {
      acc += Real(kBernNum[k - 1]) / Real(kBernDen[k - 1]) * rising * mpow;
      rising *= (s + Real(2 * k - 1)) * (s + Real(2 * k));
      mpow /= m * m;
    }
    return acc;
  }
};

template <class Real>
Real zeta(Real s) {
  return ZetaEvaluator<Real>{}(s);
}

/// The interpolation exponent used by the upper bound: min{gamma, 0.65}.
/// Always lies in (0, min{2*gamma, 1}).
template <class Real>
Real epsilon_of_gamma(Real gamma) {
  const Real cap = Real(0.65);
  return gamma < cap ? gamma : cap;
}

namespace detail {

// sqrt((2^{1+eps} - 1) zeta(1+2gamma-eps) zeta(1+eps)) for a caller-chosen eps.
template <class Real>
Real coupling_root(Real gamma, Real eps) {
  using std::pow;
  using std::sqrt;
  const Real factor = pow(Real(2), Real(1) + eps) - Real(1);
  return sqrt(factor * zeta(Real(1) + Real(2) * gamma - eps) * zeta(Real(1) + eps));
}

template <class Real>
Real tc_upper_with_epsilon(const ModelParams<Real>& params, Real eps) {
  using std::exp;
  using std::log;
  const Real bracket = Real(1) + Real(2) * coupling_root(params.gamma, eps);
  return params.g / (Real(2) * pi_const<Real>()) * exp(log(bracket) / params.gamma);
}

}  // namespace detail

/// Spectral-radius bound for the off-diagonal coupling block.
template <class Real>
Real rho_bound_g2(Real gamma) {
  return detail::coupling_root(gamma, epsilon_of_gamma(gamma));
}

/// Spectral-radius bound for the everywhere-positive block (additive 1).
template <class Real>
Real rho_bound_g3(Real gamma) {
  return Real(1) + detail::coupling_root(gamma, epsilon_of_gamma(gamma));
}

/// Rigorous upper bound T_c* = (g/2pi) [1 + 2 sqrt((2^{1+eps}-1)
/// zeta(1+eps) zeta(1+2gamma-eps))]^{1/gamma} with eps = min{gamma, 0.65}.
template <class Real>
Real tc_upper(const ModelParams<Real>& params) {
  return detail::tc_upper_with_epsilon(params, epsilon_of_gamma(params.gamma));
}

template <class Real = double>
struct HsNormDiagnostics {
  Real f1;      // Frobenius partial sum of the diagonal block
  Real f2;      // Frobenius partial sum of the off-diagonal block
  Real f3;      // Frobenius partial sum of the positive block
  Real bound3;  // analytic bound zeta(1+gamma)^2 dominating f3
};

/// Partial Frobenius (Hilbert-Schmidt) sums over the N x N block for each of
/// the three operator pieces; f3 is dominated by zeta(1+gamma)^2.
template <class Real>
HsNormDiagnostics<Real> hs_norm_diagnostics(Real gamma, std::size_t n) {
  if (n < 1) throw std::invalid_argument("hs_norm_diagnostics: n must be >= 1");
  HsNormDiagnostics<Real> d{Real(0), Real(0), Real(0), Real(0)};
  for (std::size_t i = 0; i < n; ++i) {
    const Real g1 = g1_diagonal(gamma, i);
    d.f1 += g1 * g1;
    for (std::size_t j = 0; j < n; ++j) {
      const Real g2 = g2_element(gamma, i, j);
      const Real g3 = g3_element(gamma, i, j);
      d.f2 += g2 * g2;
      d.f3 += g3 * g3;
    }
  }
  const Real z = zeta(Real(1) + gamma);
  d.bound3 = z * z;
  return d;
}

}  // namespace tcg
