// Acceptance gate: ten end-to-end checks of the temperature-bound artifact.
// Each criterion prints one [PASS]/[FAIL] line; the exit code is the number
// of failed criteria.

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "report.hpp"
#include "tcg/closed_form.hpp"
#include "tcg/kernel.hpp"
#include "tcg/spectral.hpp"
#include "tcg/stability.hpp"
#include "tcg/upper_bound.hpp"

using tcg::AngleSequence;
using tcg::ModelParams;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", index, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

std::vector<double> gamma_grid() {
  std::vector<double> g;
  for (int i = 4; i <= 31; ++i) g.push_back(double(i) / 10.0);
  return g;
}

double tail_abs(double a, double b) { return std::fabs(a - b); }

// dense 4x4 determinant via LU with partial pivoting
double lu_det(const tcg::TruncatedOperator<double>& op) {
  const std::size_t n = op.n;
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = op(i, j);
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    if (a[col][col] == 0.0) return 0.0;
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace

int main() {
  const double pi = std::acos(-1.0);
  const double two_pi = 2.0 * pi;
  const ModelParams<double> p2(2.0);

  // 1: closed-form reference temperatures at gamma = 2
  {
    const bool ok = tail_abs(tcg::tc_lower_closed(p2, 1), 1.0 / two_pi) <= 1e-10 &&
                    tail_abs(tcg::tc_lower_closed(p2, 2), 0.1796160944) <= 1e-9 &&
                    tail_abs(tcg::tc_lower_closed(p2, 3), 0.1820383) <= 1e-6 &&
                    tail_abs(tcg::tc_lower_closed(p2, 4), 0.1825137102) <= 1e-9;
    report(1, "closed-form lower bounds at gamma=2", ok);
  }

  // 2: converged numeric value at N = 400, 10 truncated digits
  {
    const double tc = tcg::tc_lower_numeric(p2, 400, 1e-13);
    const std::string shown = tcg::format_truncated(tc);
    report(2, "N=400 value truncates to 0.1827262477", shown == "0.1827262477",
           "got " + shown);
  }

  // 3: upper bound value and ratio to the N=4 lower bound
  {
    const double star = tcg::tc_upper(p2);
    const bool ok = tail_abs(star, 0.3708637) <= 1e-6 &&
                    tail_abs(star / tcg::tc_lower_closed(p2, 4), 2.032) <= 1e-3;
    report(3, "upper bound 0.3708637 and ratio 2.032 at gamma=2", ok);
  }

  // 4: closed forms vs the iterative solver across the grid
  {
    bool ok = true;
    for (double gamma : gamma_grid()) {
      const ModelParams<double> params(gamma);
      for (int n = 2; n <= 4; ++n) {
        const auto res = tcg::eig_max_dense(tcg::assemble(params, std::size_t(n)), 1e-13);
        const double closed = n == 2   ? tcg::eig_max_2(gamma)
                              : n == 3 ? tcg::eig_max_3(gamma)
                                       : tcg::eig_max_4(gamma);
        if (tail_abs(closed, res.lambda_max) > 1e-12) ok = false;
      }
    }
    report(4, "closed-form eigenvalues match the dense solver to 1e-12", ok);
  }

  // 5 & 7 share the spectral solves over the (gamma, N) grid
  const std::vector<std::size_t> chain{1, 2, 3, 4, 8, 16, 64, 200, 400};
  std::map<std::pair<double, std::size_t>, tcg::SpectralResult<double>> solves;
  bool chain_ok = true;
  std::string chain_detail;
  for (double gamma : gamma_grid()) {
    const ModelParams<double> params(gamma);
    const double star = tcg::tc_upper(params);
    const auto full = tcg::assemble(params, chain.back());
    double prev = 0.0;
    for (std::size_t n : chain) {
      const auto block = n == chain.back() ? full : full.leading_block(n);
      auto res = tcg::eig_max_dense(block, 1e-13);
      const double tc = tcg::tc_from_lambda(params, res.lambda_max);
      // strict increase where the increment is resolvable; for large
      // exponents the N=200 -> 400 gain drops below double resolution, so
      // allow equality within a few ulps there
      const bool increased =
          n <= 64 ? tc > prev : tc > prev - 16.0 * 1e-16 * std::fabs(prev);
      if (!increased || !(tc <= star)) {
        chain_ok = false;
        if (chain_detail.empty())
          chain_detail = "broken at gamma=" + std::to_string(gamma) +
                         " N=" + std::to_string(n);
      }
      prev = tc;
      solves[{gamma, n}] = std::move(res);
    }
  }
  report(5, "lower bounds strictly increase in N and stay under the upper bound",
         chain_ok, chain_detail);

  // 6: asymptotic values of the closed forms and the upper bound
  {
    const bool ok =
        tail_abs(tcg::eig_max_2(1e3), (1.0 + std::sqrt(37.0)) / 6.0) <= 1e-3 &&
        tail_abs(tcg::eig_max_2(1e-3), 5.0 / 3.0) <= 1e-3 &&
        tail_abs(tcg::eig_max_3(1e-3), 31.0 / 15.0) <= 1e-3 &&
        // the upper bound's large-exponent gap is ln(5.299)/gamma in units
        // of 1/2pi, i.e. 1.7e-2 at gamma=100
        tail_abs(tcg::tc_upper(ModelParams<double>(100.0)), 1.0 / two_pi) <=
            2e-2 / two_pi &&
        tail_abs(tcg::tc_lower_closed(ModelParams<double>(100.0), 1),
                 1.0 / two_pi) <= 1e-2 / two_pi;
    report(6, "small- and large-exponent asymptotics", ok);
  }

  // 7: positivity certificates plus the fixed-point spectral radius
  {
    bool ok = true;
    for (auto& entry : solves)
      if (!tcg::positivity_certificate(entry.second)) ok = false;
    for (double gamma : {0.5, 1.0, 2.0}) {
      for (std::size_t n : {std::size_t(4), std::size_t(50), std::size_t(400)}) {
        auto it = solves.find({gamma, n});
        double lambda;
        if (it != solves.end()) {
          lambda = it->second.lambda_max;
        } else {
          lambda = tcg::eig_max_dense(tcg::assemble(ModelParams<double>(gamma), n), 1e-13)
                       .lambda_max;
        }
        const auto c = tcg::fixed_point_operator(tcg::fixed_point_parts(gamma, n), lambda);
        if (tail_abs(tcg::spectral_radius(c, 1e-12), 1.0) > 1e-8) ok = false;
      }
    }
    report(7, "Perron-Frobenius certificates and unit fixed-point radius", ok);
  }

  // 8: quadratic-form identities, trivial residual, quartic remainder slope
  {
    bool ok = true;
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> ang(-1.0, 1.0);
    std::uniform_real_distribution<double> gam(0.4, 3.0);
    std::uniform_real_distribution<double> bp(0.1, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
      AngleSequence<double> theta;
      theta.theta.resize(1 + rng() % 8);
      for (double& t : theta.theta) t = ang(rng);
      const double gamma = gam(rng);
      const double beta_pow = bp(rng);
      const double a = tcg::k2_expanded(beta_pow, gamma, theta);
      const double b = tcg::k2_simplified(beta_pow, gamma, theta);
      const double c = 0.5 * tcg::q_form(beta_pow, gamma, tcg::theta_to_xi(theta));
      const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
      if (tail_abs(a, b) > 1e-12 * scale || tail_abs(b, c) > 1e-12 * scale)
        ok = false;
    }

    AngleSequence<double> zero;
    zero.theta.assign(6, 0.0);
    for (double r : tcg::el_residual(0.9, 1.1, zero))
      if (r != 0.0) ok = false;

    AngleSequence<double> base;
    base.theta = {0.4, -0.3, 0.25, 0.1};
    std::vector<double> xs, ys;
    for (double le = -1.0; le >= -3.01; le -= 0.5) {
      const double eps = std::pow(10.0, le);
      AngleSequence<double> scaled;
      scaled.theta = base.theta;
      for (double& t : scaled.theta) t *= eps;
      const double diff = std::fabs(tcg::k_gamma(0.8, 1.6, scaled) -
                                    tcg::k2_simplified(0.8, 1.6, scaled));
      xs.push_back(le);
      ys.push_back(std::log10(diff));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double m = double(xs.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    if (tail_abs(slope, 4.0) > 0.1) ok = false;
    report(8, "quadratic-form identities and quartic remainder slope", ok,
           "slope " + std::to_string(slope));
  }

  // 9: invariant polynomials vs direct dense computation
  {
    bool ok = true;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> gam(0.3, 5.0);
    auto close = [](double a, double b) {
      return std::fabs(a - b) <= 1e-13 * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    for (int trial = 0; trial < 20; ++trial) {
      const double gamma = gam(rng);
      const ModelParams<double> params(gamma);

      const auto op2 = tcg::assemble(params, 2);
      const auto i2 = tcg::invariants_2(gamma);
      if (!close(i2.trace, op2(0, 0) + op2(1, 1))) ok = false;
      if (!close(i2.det, lu_det(op2))) ok = false;

      const auto op3 = tcg::assemble(params, 3);
      const auto i3 = tcg::invariants_3(gamma);
      if (!close(i3.trace, op3(0, 0) + op3(1, 1) + op3(2, 2))) ok = false;
      if (!close(i3.det, lu_det(op3))) ok = false;

      const auto op4 = tcg::assemble(params, 4);
      const auto i4 = tcg::invariants_4(gamma);
      double tr1 = 0, tr2 = 0, tr3 = 0;
      for (std::size_t i = 0; i < 4; ++i) tr1 += op4(i, i);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) tr2 += op4(i, j) * op4(i, j);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          for (std::size_t k = 0; k < 4; ++k)
            tr3 += op4(i, j) * op4(j, k) * op4(k, i);
      if (!close(i4.tr1, tr1) || !close(i4.tr2, tr2) || !close(i4.tr3, tr3) ||
          !close(i4.det, lu_det(op4)))
        ok = false;
    }
    report(9, "invariant polynomials match dense trace/LU oracles", ok);
  }

  // 10: zeta references plus the Frobenius and spectral-radius dominations
  {
    bool ok = tail_abs(tcg::zeta(2.0), pi * pi / 6.0) <= 1e-12 &&
              tail_abs(tcg::zeta(4.0), std::pow(pi, 4) / 90.0) <= 1e-12 &&
              tail_abs(tcg::zeta(6.0), std::pow(pi, 6) / 945.0) <= 1e-12;
    for (double gamma : {0.5, 1.0, 2.0}) {
      const auto hs = tcg::hs_norm_diagnostics(gamma, 400);
      if (!(hs.f3 <= hs.bound3)) ok = false;

      tcg::Matrix<double> g2(400), g3(400);
      for (std::size_t i = 0; i < 400; ++i)
        for (std::size_t j = 0; j < 400; ++j) {
          g2(i, j) = tcg::g2_element(gamma, i, j);
          g3(i, j) = tcg::g3_element(gamma, i, j);
        }
      if (!(tcg::spectral_radius(g2, 1e-11) <= tcg::rho_bound_g2(gamma))) ok = false;
      if (!(tcg::spectral_radius(g3, 1e-11) <= tcg::rho_bound_g3(gamma))) ok = false;
    }
    report(10, "zeta references and operator-norm dominations", ok);
  }

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
