#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tcg/kernel.hpp"
#include "tcg/model.hpp"

namespace tcg {

/// Finite-support sequence of tilt angles (radians); angles beyond the
/// support are identically zero, which makes every functional below an
/// exact finite evaluation (the one-sided kernel tails are summed in
/// closed-to-tolerance form, not truncated).
template <class Real = double>
struct AngleSequence {
  std::vector<Real> theta;

  std::size_t support() const { return theta.size(); }
};

/// The rescaled coordinates xi_n = sqrt(2n+1) theta_n.
template <class Real = double>
struct XiSequence {
  std::vector<Real> xi;

  std::size_t support() const { return xi.size(); }
};

template <class Real>
XiSequence<Real> theta_to_xi(const AngleSequence<Real>& angles) {
  using std::sqrt;
  XiSequence<Real> out;
  out.xi.resize(angles.theta.size());
  for (std::size_t n = 0; n < angles.theta.size(); ++n)
    out.xi[n] = sqrt(Real(2 * n + 1)) * angles.theta[n];
  return out;
}

template <class Real>
AngleSequence<Real> xi_to_theta(const XiSequence<Real>& xis) {
  using std::sqrt;
  AngleSequence<Real> out;
  out.theta.resize(xis.xi.size());
  for (std::size_t n = 0; n < xis.xi.size(); ++n)
    out.theta[n] = xis.xi[n] / sqrt(Real(2 * n + 1));
  return out;
}

/// True when every angle lies in [0, pi/2], the admissible minimizer box.
template <class Real>
bool is_minimizer_candidate(const AngleSequence<Real>& angles) {
  using std::acos;
  const Real half_pi = acos(Real(-1)) / Real(2);
  for (const Real& t : angles.theta)
    if (t < Real(0) || t > half_pi) return false;
  return true;
}

namespace detail {

// expm1(x)/x, continuous through x = 0.
template <class Real>
Real expm1_over_x(Real x) {
  using std::expm1;
  using std::fabs;
  if (fabs(x) < Real(1e-30)) return Real(1);
  return expm1(x) / x;
}

// integral_M^inf [(x-n)^{-gamma} - (x+n+1)^{-gamma}] dx, evaluated in a form
// that stays finite through gamma = 1 and remains valid for 0 < gamma < 1
// (the two one-sided integrals diverge there; only the difference converges).
template <class Real>
Real tail_integral(Real gamma, std::size_t n, Real m) {
  using std::exp;
  using std::log;
  const Real u = Real(1) - gamma;
  const Real a = log(m - Real(n));
  const Real b = log(m + Real(n) + Real(1));
  return exp(u * b) * (b - a) * expm1_over_x(u * (a - b));
}

}  // namespace detail

/// One-sided kernel tail sum_{m >= support} [1/(m-n)^gamma - 1/(n+m+1)^gamma]
/// for an index n inside the support.  Direct summation of the first block of
/// terms plus an Euler-Maclaurin closure; absolute error well under 1e-12.
template <class Real>
Real kernel_tail(Real gamma, std::size_t n, std::size_t support) {
  using std::pow;
  if (n >= support)
    throw std::invalid_argument("kernel_tail: index must lie inside the support");
  const std::size_t direct = support + 64 + 4 * n;
  Real acc(0);
  for (std::size_t m = support; m < direct; ++m)
    acc += pow(Real(m - n), -gamma) - pow(Real(m + n + 1), -gamma);

  const Real m0 = Real(direct);
  auto f = [&](Real x) {
    return pow(x - Real(n), -gamma) - pow(x + Real(n) + Real(1), -gamma);
  };
  auto fd = [&](Real x, Real order_shift) {
    // derivative magnitude factor handled by caller; returns the bracket
    return pow(x - Real(n), -gamma - order_shift) -
           pow(x + Real(n) + Real(1), -gamma - order_shift);
  };
  acc += detail::tail_integral(gamma, n, m0);
  acc += f(m0) / Real(2);
  acc += gamma * fd(m0, Real(1)) / Real(12);
  acc -= gamma * (gamma + Real(1)) * (gamma + Real(2)) * fd(m0, Real(3)) / Real(720);
  return acc;
}

/// Condensation-energy functional of a finite-support angle sequence:
/// single-site terms, the in-support double sum, and the exact cross terms
/// against the zero tail.  beta_pow is the dimensionless beta^gamma.
template <class Real>
Real k_gamma(Real beta_pow, Real gamma, const AngleSequence<Real>& angles) {
  using std::cos;
  using std::pow;
  const std::size_t nsup = angles.support();
  const std::vector<Real>& th = angles.theta;
  Real acc(0);
  for (std::size_t n = 0; n < nsup; ++n) {
    acc += Real(2 * n + 1) * (Real(1) - cos(th[n]));
    acc -= beta_pow * (Real(1) - cos(Real(2) * th[n])) /
           (Real(2) * pow(Real(2 * n + 1), gamma));
  }
  const ModelParams<Real> params(gamma);
  Real pair(0);
  for (std::size_t n = 0; n < nsup; ++n)
    for (std::size_t m = 0; m < nsup; ++m) {
      if (n == m) continue;
      pair += (Real(1) - cos(th[n] - th[m])) * v_gamma(params, long(n), long(m));
      pair -= (Real(1) - cos(th[n] + th[m])) * pow(Real(n + m + 1), -gamma);
    }
  acc += beta_pow * pair / Real(2);
  for (std::size_t n = 0; n < nsup; ++n)
    acc += beta_pow * (Real(1) - cos(th[n])) * kernel_tail(gamma, n, nsup);
  return acc;
}

/// Second-order expansion in the literal double-sum form, including the
/// exact tail cross terms (without them the two second-order forms differ).
template <class Real>
Real k2_expanded(Real beta_pow, Real gamma, const AngleSequence<Real>& angles) {
  using std::pow;
  const std::size_t nsup = angles.support();
  const std::vector<Real>& th = angles.theta;
  Real acc(0);
  for (std::size_t n = 0; n < nsup; ++n) {
    acc += Real(2 * n + 1) * th[n] * th[n] / Real(2);
    acc -= beta_pow * th[n] * th[n] / pow(Real(2 * n + 1), gamma);
  }
  const ModelParams<Real> params(gamma);
  Real pair(0);
  for (std::size_t n = 0; n < nsup; ++n)
    for (std::size_t m = 0; m < nsup; ++m) {
      if (n == m) continue;
      const Real diff = th[n] - th[m];
      const Real sum = th[n] + th[m];
      pair += diff * diff * v_gamma(params, long(n), long(m));
      pair -= sum * sum * pow(Real(n + m + 1), -gamma);
    }
  acc += beta_pow * pair / Real(4);
  for (std::size_t n = 0; n < nsup; ++n)
    acc += beta_pow * th[n] * th[n] * kernel_tail(gamma, n, nsup) / Real(2);
  return acc;
}

/// Second-order expansion after telescoping the kernel differences; exact on
/// finite support with no tail terms.
template <class Real>
Real k2_simplified(Real beta_pow, Real gamma, const AngleSequence<Real>& angles) {
  using std::pow;
  const std::size_t nsup = angles.support();
  const std::vector<Real>& th = angles.theta;
  Real acc(0);
  Real prefix(0);  // sum_{k=1..n} 2/k^gamma
  for (std::size_t n = 0; n < nsup; ++n) {
    if (n >= 1) prefix += Real(2) * pow(Real(n), -gamma);
    acc += (Real(2 * n + 1) + beta_pow * prefix) * th[n] * th[n] / Real(2);
  }
  const ModelParams<Real> params(gamma);
  Real pair(0);
  for (std::size_t n = 0; n < nsup; ++n)
    for (std::size_t m = 0; m < nsup; ++m) {
      Real kernel = pow(Real(n + m + 1), -gamma);
      if (n != m) kernel += v_gamma(params, long(n), long(m));
      pair += th[n] * kernel * th[m];
    }
  acc -= beta_pow * pair / Real(2);
  return acc;
}

/// Q(Xi) = ||Xi||^2 - beta^gamma <Xi, G Xi> over the finite support.
template <class Real>
Real q_form(Real beta_pow, Real gamma, const XiSequence<Real>& xis) {
  const std::size_t nsup = xis.support();
  if (nsup == 0) return Real(0);
  const auto op = assemble(ModelParams<Real>(gamma), nsup);
  std::vector<Real> gx;
  op.entries.multiply(xis.xi, gx);
  Real norm2(0);
  Real quad(0);
  for (std::size_t n = 0; n < nsup; ++n) {
    norm2 += xis.xi[n] * xis.xi[n];
    quad += xis.xi[n] * gx[n];
  }
  return norm2 - beta_pow * quad;
}

/// Componentwise Euler-Lagrange residual of the stationarity system:
/// (2n+1) sin(theta_n) + beta^gamma * [in-support sine sums + sin(theta_n)
/// times the one-sided kernel tail].  Zero sequence gives a zero residual.
template <class Real>
std::vector<Real> el_residual(Real beta_pow, Real gamma,
                              const AngleSequence<Real>& angles) {
  using std::pow;
  using std::sin;
  const std::size_t nsup = angles.support();
  const std::vector<Real>& th = angles.theta;
  const ModelParams<Real> params(gamma);
  std::vector<Real> res(nsup, Real(0));
  for (std::size_t n = 0; n < nsup; ++n) {
    Real acc = Real(2 * n + 1) * sin(th[n]);
    Real coupling(0);
    for (std::size_t m = 0; m < nsup; ++m) {
      if (m != n)
        coupling += sin(th[n] - th[m]) * v_gamma(params, long(n), long(m));
      coupling -= sin(th[n] + th[m]) * pow(Real(n + m + 1), -gamma);
    }
    coupling += sin(th[n]) * kernel_tail(gamma, n, nsup);
    res[n] = acc + beta_pow * coupling;
  }
  return res;
}

}  // namespace tcg
