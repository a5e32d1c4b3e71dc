#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tcg/closed_form.hpp"
#include "tcg/errors.hpp"
#include "tcg/kernel.hpp"
#include "tcg/model.hpp"

namespace tcg {

enum class SolveMethod { Jacobi, PowerDeflated };

template <class Real = double>
struct SpectralResult {
  Real lambda_max = Real(0);
  std::vector<Real> eigenvector;  // unit Euclidean norm
  Real residual = Real(0);        // ||Mv - lambda v||_2, from a fresh matvec
  long iterations = 0;            // Jacobi sweeps or power steps
  SolveMethod method = SolveMethod::Jacobi;
  bool near_degenerate = false;   // top spectral gap below 1e-10 (Jacobi path)
  Real min_component = Real(0);   // set by positivity_certificate
};

namespace detail {

template <class Real>
Real norm2(const std::vector<Real>& v) {
  using std::sqrt;
  Real acc(0);
  for (const Real& x : v) acc += x * x;
  return sqrt(acc);
}

template <class Real>
void normalize(std::vector<Real>& v) {
  const Real nrm = norm2(v);
  for (Real& x : v) x /= nrm;
}

template <class Real>
Real residual_norm(const Matrix<Real>& mat, const std::vector<Real>& v, Real lambda) {
  using std::sqrt;
  std::vector<Real> mv;
  mat.multiply(v, mv);
  Real acc(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Real r = mv[i] - lambda * v[i];
    acc += r * r;
  }
  return sqrt(acc);
}

/// Cyclic threshold Jacobi on a working copy; diagonalizes in place and
/// accumulates rotations into V (columns are eigenvectors).
template <class Real>
long jacobi_eigensystem(Matrix<Real> a, std::vector<Real>& eigvals,
                        Matrix<Real>& eigvecs, Real tol, long max_sweeps) {
  using std::fabs;
  using std::sqrt;
  const std::size_t n = a.size();
  eigvecs = Matrix<Real>(n);
  for (std::size_t i = 0; i < n; ++i) eigvecs(i, i) = Real(1);
  if (n == 1) {
    eigvals.assign(1, a(0, 0));
    return 0;
  }

  Real norm(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) norm += a(i, j) * a(i, j);
  norm = sqrt(norm);
  const Real off_target = tol * (norm > Real(1) ? norm : Real(1));

  long sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    Real off(0);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    off = sqrt(Real(2) * off);
    if (off <= off_target) break;

    const Real thresh = sweep < 3 ? off / Real(n) : Real(0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real apq = a(p, q);
        if (fabs(apq) <= thresh) continue;
        const Real theta = (a(q, q) - a(p, p)) / (Real(2) * apq);
        Real t = (theta >= Real(0) ? Real(1) : Real(-1)) /
                 (fabs(theta) + sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / sqrt(t * t + Real(1));
        const Real s = t * c;
        const Real tau = s / (Real(1) + c);
        const Real h = t * apq;
        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = Real(0);
        a(q, p) = Real(0);
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            const Real akp = a(k, p);
            const Real akq = a(k, q);
            a(k, p) = akp - s * (akq + tau * akp);
            a(k, q) = akq + s * (akp - tau * akq);
            a(p, k) = a(k, p);
            a(q, k) = a(k, q);
          }
          const Real vkp = eigvecs(k, p);
          const Real vkq = eigvecs(k, q);
          eigvecs(k, p) = vkp - s * (vkq + tau * vkp);
          eigvecs(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  eigvals.resize(n);
  for (std::size_t i = 0; i < n; ++i) eigvals[i] = a(i, i);
  return sweep;
}

}  // namespace detail

inline constexpr long kDefaultIterationCap = 100000;

/// Largest eigenvalue and unit eigenvector of the truncated operator.
/// Cyclic Jacobi (full spectrum) up to N = 512; above that, shifted power
/// iteration on M + sI with s = 1 + max|diag| so the algebraically largest
/// eigenvalue dominates in magnitude.  Deterministic: the power iteration
/// starts from the normalized all-ones vector (or the supplied warm start).
template <class Real>
SpectralResult<Real> eig_max_dense(const TruncatedOperator<Real>& op, Real tol,
                                   const std::vector<Real>* warm_start = nullptr,
                                   long iteration_cap = kDefaultIterationCap) {
  using std::fabs;
  const std::size_t n = op.n;
  SpectralResult<Real> result;

  if (n <= 512) {
    std::vector<Real> vals;
    Matrix<Real> vecs;
    const long sweeps =
        detail::jacobi_eigensystem(op.entries, vals, vecs, tol, long(100));
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (vals[i] > vals[imax]) imax = i;
    Real second = vals[imax];
    bool have_second = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == imax) continue;
      if (!have_second || vals[i] > second) {
        second = vals[i];
        have_second = true;
      }
    }
    result.method = SolveMethod::Jacobi;
    result.lambda_max = vals[imax];
    result.iterations = sweeps;
    result.near_degenerate = have_second && (vals[imax] - second) < Real(1e-10);
    result.eigenvector.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.eigenvector[i] = vecs(i, imax);
    detail::normalize(result.eigenvector);
  } else {
    Real max_diag(0);
    for (std::size_t i = 0; i < n; ++i) {
      const Real d = fabs(op(i, i));
      if (d > max_diag) max_diag = d;
    }
    const Real shift = Real(1) + max_diag;

    std::vector<Real> v;
    if (warm_start && warm_start->size() == n) {
      v = *warm_start;
    } else {
      v.assign(n, Real(1));
    }
    detail::normalize(v);

    std::vector<Real> mv;
    long iter = 0;
    for (;; ++iter) {
      if (iter >= iteration_cap)
        throw NoConvergence("power iteration did not converge", iter);
      op.entries.multiply(v, mv);
      for (std::size_t i = 0; i < n; ++i) mv[i] += shift * v[i];
      Real rayleigh(0);
      for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * mv[i];
      // residual of the current iterate, reusing the matvec just done
      Real rnorm(0);
      for (std::size_t i = 0; i < n; ++i) {
        const Real r = mv[i] - rayleigh * v[i];
        rnorm += r * r;
      }
      using std::sqrt;
      rnorm = sqrt(rnorm);
      const Real lambda = rayleigh - shift;
      const Real scale = fabs(lambda) > Real(1) ? fabs(lambda) : Real(1);
      detail::normalize(mv);
      v.swap(mv);
      if (rnorm <= tol * scale) break;
    }
    result.method = SolveMethod::PowerDeflated;
    result.iterations = iter + 1;
    result.eigenvector = std::move(v);
    Real rayleigh(0);
    op.entries.multiply(result.eigenvector, mv);
    for (std::size_t i = 0; i < n; ++i) rayleigh += result.eigenvector[i] * mv[i];
    result.lambda_max = rayleigh;
  }

  result.residual = detail::residual_norm(op.entries, result.eigenvector, result.lambda_max);
  const Real lam_scale = fabs(result.lambda_max) > Real(1) ? fabs(result.lambda_max) : Real(1);
  if (result.residual > Real(100) * tol * lam_scale && n > 512)
    throw NoConvergence("power iteration residual above tolerance", result.iterations);
  return result;
}

/// Perron-Frobenius certificate: fixes the global sign so the component of
/// largest magnitude is positive, records the minimum component, and returns
/// true iff every component is strictly positive.
template <class Real>
bool positivity_certificate(SpectralResult<Real>& result) {
  using std::fabs;
  std::vector<Real>& v = result.eigenvector;
  if (v.empty()) return false;
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (fabs(v[i]) > fabs(v[imax])) imax = i;
  if (v[imax] < Real(0))
    for (Real& x : v) x = -x;
  Real min_comp = v[0];
  for (const Real& x : v)
    if (x < min_comp) min_comp = x;
  result.min_component = min_comp;
  return min_comp > Real(0);
}

/// The two factors of the fixed-point operator C(kappa).
template <class Real = double>
struct FixedPointParts {
  std::vector<Real> g1_diag;
  Matrix<Real> g2_plus_g3;
};

template <class Real>
FixedPointParts<Real> fixed_point_parts(Real gamma, std::size_t n) {
  return FixedPointParts<Real>{g1_diagonal_vector(gamma, n),
                               g2_plus_g3_matrix(gamma, n)};
}

/// C(kappa) = diag(1/(kappa + G1_nn)) * (G2 + G3); entrywise positive.
template <class Real>
Matrix<Real> fixed_point_operator(const FixedPointParts<Real>& parts, Real kappa) {
  if (!(kappa > Real(0)))
    throw std::invalid_argument("fixed_point_operator: kappa must be positive");
  const std::size_t n = parts.g1_diag.size();
  Matrix<Real> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Real scale = Real(1) / (kappa + parts.g1_diag[i]);
    for (std::size_t j = 0; j < n; ++j) c(i, j) = scale * parts.g2_plus_g3(i, j);
  }
  return c;
}

/// Spectral radius of an entrywise-nonnegative matrix via power iteration
/// from the all-ones vector, converged on successive Rayleigh estimates.
template <class Real>
Real spectral_radius(const Matrix<Real>& mat, Real tol,
                     long iteration_cap = kDefaultIterationCap) {
  using std::fabs;
  const std::size_t n = mat.size();
  std::vector<Real> v(n, Real(1));
  detail::normalize(v);
  std::vector<Real> mv;
  Real lambda_prev(0);
  for (long iter = 0; iter < iteration_cap; ++iter) {
    mat.multiply(v, mv);
    Real rayleigh(0);
    Real vv(0);
    for (std::size_t i = 0; i < n; ++i) {
      rayleigh += v[i] * mv[i];
      vv += v[i] * v[i];
    }
    rayleigh /= vv;
    detail::normalize(mv);
    v.swap(mv);
    if (iter > 0 && fabs(rayleigh - lambda_prev) <=
                        tol * (fabs(rayleigh) > Real(1) ? fabs(rayleigh) : Real(1)))
      return rayleigh;
    lambda_prev = rayleigh;
  }
  throw NoConvergence("spectral radius power iteration did not converge",
                      iteration_cap);
}

/// Numeric lower bound T_c^(N) = (g/2pi) exp(ln(lambda_max)/gamma).
template <class Real>
Real tc_from_lambda(const ModelParams<Real>& params, Real lambda_max) {
  using std::exp;
  using std::log;
  return params.g / (Real(2) * pi_const<Real>()) * exp(log(lambda_max) / params.gamma);
}

template <class Real>
Real tc_lower_numeric(const ModelParams<Real>& params, std::size_t n, Real tol) {
  const auto op = assemble(params, n);
  const auto res = eig_max_dense(op, tol);
  return tc_from_lambda(params, res.lambda_max);
}

template <class Real = double>
struct ConvergenceEntry {
  std::size_t n;
  Real tc;
  Real lambda_max;
};

template <class Real = double>
struct ConvergenceRecord {
  Real gamma;
  std::vector<ConvergenceEntry<Real>> entries;
  int converged_digits = 0;
};

namespace detail {

// Leading decimal digits shared by two positive values.
template <class Real>
int shared_digits(Real a, Real b) {
  using std::fabs;
  using std::floor;
  using std::log10;
  using std::pow;
  if (a == b) return 15;
  const Real diff = fabs(a - b);
  const Real scale = fabs(a) > fabs(b) ? fabs(a) : fabs(b);
  if (diff == Real(0) || scale == Real(0)) return 15;
  const int lead = int(floor(log10(scale)));
  const int last = int(floor(log10(diff)));
  const int digits = lead - last;
  return digits < 0 ? 0 : (digits > 15 ? 15 : digits);
}

}  // namespace detail

/// Computes T_c^(N) along a strictly increasing list of truncation sizes,
/// reusing the largest assembled block (nesting) and warm-starting the power
/// path with the previous eigenvector padded by a zero.
template <class Real>
ConvergenceRecord<Real> convergence_sweep(const ModelParams<Real>& params,
                                          const std::vector<std::size_t>& n_list,
                                          Real tol) {
  using std::fabs;
  if (n_list.empty())
    throw std::invalid_argument("convergence_sweep: empty n_list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("convergence_sweep: n_list must be strictly increasing");

  const auto full = assemble(params, n_list.back());
  ConvergenceRecord<Real> record;
  record.gamma = params.gamma;

  std::vector<Real> warm;
  Real prev_tc(0);
  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const std::size_t n = n_list[idx];
    const auto block = n == full.n ? full : full.leading_block(n);
    warm.resize(n, Real(0));
    const auto res = eig_max_dense(block, tol, idx == 0 ? nullptr : &warm);
    warm = res.eigenvector;
    const Real tc = tc_from_lambda(params, res.lambda_max);
    if (idx > 0) {
      const Real eps = std::numeric_limits<Real>::epsilon();
      if (tc < prev_tc - Real(10) * eps * fabs(prev_tc))
        throw MonotonicityViolation("T_c decreased between truncations", int(n));
    }
    record.entries.push_back({n, tc, res.lambda_max});
    prev_tc = tc;
  }
  if (record.entries.size() >= 2) {
    const auto& last = record.entries[record.entries.size() - 1];
    const auto& prev = record.entries[record.entries.size() - 2];
    record.converged_digits = detail::shared_digits(last.tc, prev.tc);
  }
  return record;
}

}  // namespace tcg
