#pragma once

#include <cmath>
#include <utility>

#include "tcg/errors.hpp"
#include "tcg/model.hpp"

namespace tcg {

template <class Real>
Real pi_const() {
  using std::acos;
  return acos(Real(-1));
}

namespace detail {

// t^{-gamma} via exp(-gamma ln t); one deterministic evaluation path for all
// the polynomial tables below.
template <class Real>
Real ipow(Real gamma, int t) {
  using std::exp;
  using std::log;
  return exp(-gamma * log(Real(t)));
}

// Clamp an arccos argument that rounding pushed marginally out of [-1, 1].
// Returns false when the excursion exceeds the clamping tolerance.
template <class Real>
bool clamp_unit(Real& x, Real tol) {
  if (x > Real(1)) {
    if (x > Real(1) + tol) return false;
    x = Real(1);
  } else if (x < Real(-1)) {
    if (x < Real(-1) - tol) return false;
    x = Real(-1);
  }
  return true;
}

}  // namespace detail

template <class Real>
struct Invariants2 {
  Real trace;
  Real det;
};

/// trace and determinant of the 2x2 truncation, in closed form.
template <class Real>
Invariants2<Real> invariants_2(Real gamma) {
  using detail::ipow;
  Invariants2<Real> inv;
  inv.trace = (ipow(gamma, 3) + Real(1)) / Real(3);
  inv.det = (-ipow(gamma, 4) + ipow(gamma, 3) - Real(2) * ipow(gamma, 2) - Real(3)) / Real(3);
  return inv;
}

template <class Real>
struct Invariants3 {
  Real trace;
  Real trace_adj;
  Real det;
};

/// trace, trace of the adjugate, and determinant of the 3x3 truncation.
template <class Real>
Invariants3<Real> invariants_3(Real gamma) {
  using detail::ipow;
  auto p = [gamma](int t) { return ipow(gamma, t); };
  Invariants3<Real> inv;
  inv.trace = (Real(3) * p(5) + Real(5) * p(3) - Real(6) * p(2) - Real(1)) / Real(15);
  inv.trace_adj = (-p(16) + p(15) - Real(3) * p(9) - Real(8) * p(6) + p(5) -
                   Real(10) * p(4) + Real(3) * p(3) - Real(12) * p(2) - Real(18)) /
                  Real(15);
  inv.det = (-p(27) + Real(2) * p(24) - p(20) - Real(2) * p(18) + p(16) + p(15) +
             p(12) - Real(2) * p(10) + Real(2) * p(9) + Real(4) * p(8) +
             Real(4) * p(6) + Real(8) * p(4) - Real(3) * p(5) + Real(12) * p(2) +
             Real(5)) /
            Real(15);
  return inv;
}

template <class Real>
struct Invariants4 {
  Real tr1;  // tr M
  Real tr2;  // tr M^2
  Real tr3;  // tr M^3
  Real det;
};

/// Power traces and determinant of the 4x4 truncation, as polynomials in the
/// base powers t^{-gamma}.
template <class Real>
Invariants4<Real> invariants_4(Real gamma) {
  using detail::ipow;
  auto p = [gamma](int t) { return ipow(gamma, t); };

  static constexpr struct { int base; int coef; } kTr2[] = {
      {49, 225},  {36, 630},  {25, 1491},  {21, -900}, {16, 4620},
      {14, -900}, {12, 6300}, {10, 336},   {9, 9685},  {7, -900},
      {6, 11880}, {5, -1764}, {4, 18414},  {3, -3100}, {2, 20028}};
  static constexpr struct { int base; int coef; } kTr3[] = {
      {343, 3375},   {252, 14175},  {180, 19845},  {175, 23625},  {147, -20250},
      {125, 9261},   {120, 66150},  {112, 70875},  {108, -28350}, {98, -20250},
      {84, 141750},  {80, 46305},   {75, 7875},    {72, 130410},  {70, 47250},
      {63, 111375},  {54, 198450},  {50, -102816}, {49, -20250},  {48, 200025},
      {45, 138915},  {42, 109350},  {40, 330750},  {36, -153090}, {32, -234360},
      {30, 730170},  {28, 64125},   {27, -125875}, {25, -213066}, {24, 179550},
      {21, 81000},   {20, 645057},  {18, -557280}, {16, 901215},  {15, 330750},
      {14, 81000},   {12, 1542510}, {10, -92736},  {9, 631320},   {8, 447012},
      {7, 54675},    {6, 2299410},  {5, 243432},   {4, 310986},   {3, 1331250},
      {2, 837036}};
  static constexpr struct { int base; int coef; } kDet[] = {
      {256, 1},  {240, -3}, {225, 1},   {216, 2},  {200, 2},  {189, -1},
      {180, -6}, {168, 2},  {162, 2},   {160, -2}, {150, 4},  {144, 2},
      {140, -1}, {135, -1}, {126, -2},  {125, -1}, {120, -2}, {112, 1},
      {108, 1},  {105, 1},  {100, 3},   {96, -2},  {84, 1},   {81, 2},
      {75, 2},   {72, -8},  {70, -2},   {63, 2},   {60, 4},   {56, 4},
      {54, 4},   {48, -8},  {45, -2},   {42, 4},   {40, -4},  {36, 6},
      {35, -3},  {32, -12}, {30, -6},   {28, 8},   {27, 2},   {25, 2},
      {24, -28}, {20, 5},   {18, -16},  {16, -24}, {15, -2},  {14, 12},
      {12, -44}, {10, 12},  {9, -11},   {8, -32},  {7, 5},    {6, -38},
      {5, 8},    {4, -41},  {3, -13},   {2, -30}};

  Invariants4<Real> inv;
  inv.tr1 = (Real(15) * p(7) + Real(21) * p(5) + Real(5) * p(3) - Real(72) * p(2) -
             Real(37)) /
            Real(105);
  Real acc2(28039);
  for (const auto& t : kTr2) acc2 += Real(t.coef) * p(t.base);
  inv.tr2 = acc2 / Real(105 * 105);
  Real acc3(784412);
  for (const auto& t : kTr3) acc3 += Real(t.coef) * p(t.base);
  inv.tr3 = acc3 / (Real(105) * Real(105) * Real(105));
  Real accd(-7);
  for (const auto& t : kDet) accd += Real(t.coef) * p(t.base);
  inv.det = accd / Real(105);
  return inv;
}

/// Invariants of the resolvent cubic for the 3x3 spectrum.
template <class Real>
struct CubicInvariants {
  Real r;  // tr M
  Real p;
  Real q;

  CubicInvariants(Real r_, Real p_, Real q_) : r(r_), p(p_), q(q_) {
    if (!(p > Real(0)))
      throw DegenerateCubic("cubic invariant p must be positive");
  }
};

template <class Real>
CubicInvariants<Real> cubic_invariants(Real gamma) {
  const auto inv = invariants_3(gamma);
  const Real r = inv.trace;
  const Real p = r * r / Real(3) - inv.trace_adj;
  const Real q = Real(2) * r * r * r / Real(27) - r * inv.trace_adj / Real(3) + inv.det;
  return CubicInvariants<Real>(r, p, q);
}

/// Characteristic-quartic coefficients (a,b,c,d) of the 4x4 truncation and
/// the Cardano auxiliaries (x, y, z), z being the positive resolvent-cubic root.
template <class Real>
struct QuarticCoefficients {
  Real a, b, c, d;
  Real x, y, z;
};

template <class Real>
QuarticCoefficients<Real> quartic_coefficients(Real gamma) {
  using std::acos;
  using std::cos;
  using std::sqrt;
  const auto inv = invariants_4(gamma);
  QuarticCoefficients<Real> q;
  q.a = -inv.tr1;
  q.b = (inv.tr1 * inv.tr1 - inv.tr2) / Real(2);
  q.c = -(inv.tr1 * inv.tr1 * inv.tr1 - Real(3) * inv.tr2 * inv.tr1 +
          Real(2) * inv.tr3) /
        Real(6);
  q.d = inv.det;
  q.y = q.b * q.b - Real(3) * q.a * q.c + Real(12) * q.d;
  q.x = Real(2) * q.b * q.b * q.b - Real(9) * q.a * q.b * q.c +
        Real(27) * q.c * q.c + Real(27) * q.a * q.a * q.d - Real(72) * q.b * q.d;
  if (!(q.y >= Real(0)))
    throw DegenerateQuartic("resolvent discriminant Y must be nonnegative");
  Real arg = q.x / (Real(2) * sqrt(q.y * q.y * q.y));
  if (!detail::clamp_unit(arg, Real(1e-12)))
    throw DegenerateQuartic("resolvent arccos argument out of range");
  q.z = (sqrt(q.y) * cos(acos(arg) / Real(3)) - q.b +
         Real(3) * q.a * q.a / Real(8)) /
        Real(3);
  if (!(q.z > Real(0)))
    throw DegenerateQuartic("resolvent cubic root Z must be positive");
  return q;
}

/// Largest eigenvalue of the 2x2 truncation (quadratic formula, + branch).
template <class Real>
Real eig_max_2(Real gamma) {
  using std::sqrt;
  const auto inv = invariants_2(gamma);
  return (inv.trace + sqrt(inv.trace * inv.trace - Real(4) * inv.det)) / Real(2);
}

/// Largest eigenvalue of the 3x3 truncation (Viete, j = 0 branch).
template <class Real>
Real eig_max_3(Real gamma) {
  using std::acos;
  using std::cos;
  using std::sqrt;
  const auto ci = cubic_invariants(gamma);
  Real arg = ci.q / Real(2) * sqrt(Real(27) / (ci.p * ci.p * ci.p));
  if (!detail::clamp_unit(arg, Real(1e-12)))
    throw DegenerateCubic("Viete arccos argument out of range");
  return ci.r / Real(3) + Real(2) * sqrt(ci.p / Real(3)) * cos(acos(arg) / Real(3));
}

/// Largest eigenvalue of the 4x4 truncation (Cardano, j = k = 1 branch).
template <class Real>
Real eig_max_4(Real gamma) {
  using std::sqrt;
  const auto q = quartic_coefficients(gamma);
  const Real inner = Real(3) * q.a * q.a / Real(16) - q.b / Real(2) - q.z / Real(2) -
                     (q.a * q.a * q.a - Real(4) * q.a * q.b + Real(8) * q.c) /
                         (Real(16) * sqrt(Real(2) * q.z));
  if (inner < Real(-1e-12))
    throw DegenerateQuartic("Cardano inner square root argument negative");
  const Real safe_inner = inner < Real(0) ? Real(0) : inner;
  return -q.a / Real(4) + sqrt(q.z / Real(2)) + sqrt(safe_inner);
}

/// Closed-form lower bound T_c^(N) = (g/2pi) * [eig_max_N]^{1/gamma}, N <= 4.
template <class Real>
Real tc_lower_closed(const ModelParams<Real>& params, int n) {
  using std::exp;
  using std::log;
  if (n < 1 || n > 4)
    throw std::invalid_argument("tc_lower_closed: N must be in 1..4");
  const Real scale = params.g / (Real(2) * pi_const<Real>());
  if (n == 1) return scale;  // the 1x1 truncation is exactly (1)
  Real lambda;
  switch (n) {
    case 2: lambda = eig_max_2(params.gamma); break;
    case 3: lambda = eig_max_3(params.gamma); break;
    default: lambda = eig_max_4(params.gamma); break;
  }
  return scale * exp(log(lambda) / params.gamma);
}

}  // namespace tcg
