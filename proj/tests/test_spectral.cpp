#include <doctest.h>

#include <cmath>
#include <vector>

#include "tcg/closed_form.hpp"
#include "tcg/kernel.hpp"
#include "tcg/spectral.hpp"

using tcg::ModelParams;

TEST_CASE("one-dimensional truncation is exact") {
  const auto op = tcg::assemble(ModelParams<double>(1.1), 1);
  const auto res = tcg::eig_max_dense(op, 1e-13);
  CHECK(res.lambda_max == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res.eigenvector.size() == 1);
  CHECK(std::fabs(res.eigenvector[0]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dense solver matches the quadratic closed form") {
  const auto op = tcg::assemble(ModelParams<double>(2.0), 2);
  const auto res = tcg::eig_max_dense(op, 1e-13);
  CHECK(std::fabs(res.lambda_max - tcg::eig_max_2(2.0)) <= 1e-12);
  CHECK(res.method == tcg::SolveMethod::Jacobi);
  CHECK(res.residual <= 1e-12);
}

TEST_CASE("residual is verified by an independent matvec") {
  const auto op = tcg::assemble(ModelParams<double>(0.8), 40);
  const auto res = tcg::eig_max_dense(op, 1e-13);
  std::vector<double> mv;
  op.entries.multiply(res.eigenvector, mv);
  double acc = 0.0;
  for (std::size_t i = 0; i < mv.size(); ++i) {
    const double r = mv[i] - res.lambda_max * res.eigenvector[i];
    acc += r * r;
  }
  CHECK(std::sqrt(acc) <= 1e-11);
  CHECK(std::sqrt(acc) == doctest::Approx(res.residual).epsilon(1e-6));
}

TEST_CASE("shifted power path agrees with Jacobi above the dispatch size") {
  const auto op = tcg::assemble(ModelParams<double>(2.0), 540);
  const auto power = tcg::eig_max_dense(op, 1e-13);
  CHECK(power.method == tcg::SolveMethod::PowerDeflated);

  std::vector<double> vals;
  tcg::Matrix<double> vecs;
  tcg::detail::jacobi_eigensystem(op.entries, vals, vecs, 1e-13, long(100));
  double jac = vals[0];
  for (double v : vals) jac = std::max(jac, v);
  CHECK(std::fabs(power.lambda_max - jac) <= 1e-10);
}

TEST_CASE("positivity certificate and canonical sign") {
  const auto op = tcg::assemble(ModelParams<double>(2.0), 4);
  auto res = tcg::eig_max_dense(op, 1e-13);
  CHECK(tcg::positivity_certificate(res));
  CHECK(res.min_component > 0.0);

  // a flipped component breaks the certificate
  res.eigenvector[2] = -res.eigenvector[2];
  CHECK(!tcg::positivity_certificate(res));

  tcg::SpectralResult<double> trivial;
  trivial.eigenvector = {1.0};
  CHECK(tcg::positivity_certificate(trivial));
}

TEST_CASE("fixed-point operator at and above the eigenvalue") {
  const auto parts = tcg::fixed_point_parts(2.0, std::size_t(4));
  CHECK_THROWS_AS(tcg::fixed_point_operator(parts, 0.0), std::invalid_argument);

  const auto one = tcg::fixed_point_operator(tcg::fixed_point_parts(1.3, std::size_t(1)), 1.0);
  CHECK(one(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

  const double lambda = tcg::eig_max_4(2.0);
  const auto at = tcg::fixed_point_operator(parts, lambda);
  CHECK(tcg::spectral_radius(at, 1e-12) == doctest::Approx(1.0).epsilon(1e-8));
  const auto above = tcg::fixed_point_operator(parts, 2.0 * lambda);
  CHECK(tcg::spectral_radius(above, 1e-12) < 1.0);
}

TEST_CASE("fixed-point consistency of the computed eigenpair") {
  const double gamma = 1.5;
  const std::size_t n = 30;
  const auto op = tcg::assemble(ModelParams<double>(gamma), n);
  auto res = tcg::eig_max_dense(op, 1e-13);
  tcg::positivity_certificate(res);
  const auto c = tcg::fixed_point_operator(tcg::fixed_point_parts(gamma, n),
                                           res.lambda_max);
  std::vector<double> cv;
  c.multiply(res.eigenvector, cv);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(cv[i] == doctest::Approx(res.eigenvector[i]).epsilon(1e-8));
}

TEST_CASE("numeric temperatures reproduce the reference digits") {
  const ModelParams<double> p2(2.0);
  CHECK(tcg::tc_lower_numeric(p2, 3, 1e-13) ==
        doctest::Approx(0.1820383).epsilon(1e-5));
  const double tc3_400 = tcg::tc_lower_numeric(ModelParams<double>(3.0), 80, 1e-13);
  const double tc3_4 = tcg::tc_lower_closed(ModelParams<double>(3.0), 4);
  CHECK(std::fabs(tc3_400 - tc3_4) <= 1e-4);
}

TEST_CASE("convergence sweeps warm-start and stay monotone") {
  const ModelParams<double> p2(2.0);
  const auto rec = tcg::convergence_sweep(p2, {1, 2, 3, 4}, 1e-13);
  REQUIRE(rec.entries.size() == 4);
  for (int n = 1; n <= 4; ++n)
    CHECK(rec.entries[std::size_t(n - 1)].tc ==
          doctest::Approx(tcg::tc_lower_closed(p2, n)).epsilon(1e-9));

  const auto slow = tcg::convergence_sweep(ModelParams<double>(0.4),
                                           {50, 100, 200}, 1e-13);
  double prev = 0.0;
  for (const auto& e : slow.entries) {
    CHECK(e.tc > prev);
    prev = e.tc;
  }
  CHECK_THROWS_AS(tcg::convergence_sweep(p2, {4, 4}, 1e-13), std::invalid_argument);
  CHECK_THROWS_AS(tcg::convergence_sweep(p2, {}, 1e-13), std::invalid_argument);
}

TEST_CASE("shared-digit count of a converged sweep") {
  const auto rec = tcg::convergence_sweep(ModelParams<double>(2.0),
                                          {100, 200, 400}, 1e-13);
  CHECK(rec.converged_digits >= 10);
}

TEST_CASE("temperature threshold restates the eigenvalue crossing") {
  const double gamma = 1.2;
  const std::size_t n = 25;
  const ModelParams<double> params(gamma);
  const auto op = tcg::assemble(params, n);
  const auto res = tcg::eig_max_dense(op, 1e-13);
  const double tc = tcg::tc_lower_numeric(params, n, 1e-13);
  const double two_pi = 2.0 * std::acos(-1.0);
  const double above = std::pow(two_pi * (tc * 1.01), gamma);
  const double below = std::pow(two_pi * (tc * 0.99), gamma);
  CHECK(above > res.lambda_max);
  CHECK(below < res.lambda_max);
}
