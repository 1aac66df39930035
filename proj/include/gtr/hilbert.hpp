#pragma once

// Standard quantum (Born rule) baseline for sequential dichotomic
// measurements, plus the operator identities that any 2-dimensional
// Hilbert-space model must satisfy:
//
//   Q  = P^A_y P^B_y P^A_y - P^B_y P^A_y P^B_y
//      + P^A_n P^B_n P^A_n - P^B_n P^A_n P^B_n  = 0   (hence q = 0),
//   q' = p(A_y B_n) p(A_n B_n) - p(A_n B_y) p(A_y B_y) = 0
//
// q' survives arbitrary context unitaries U (before A) and V (before B);
// q does not.

#include <cmath>
#include <optional>

#include "gtr/errors.hpp"
#include "gtr/model.hpp"
#include "gtr/qubit.hpp"
#include "gtr/rng.hpp"

namespace gtr {

// All eight sequential probabilities of a qubit model. The first measurement
// of each order is preceded by its context unitary (identity when absent):
// p(A_i B_j) = |P^B_j V P^A_i U |psi>|^2 and p(B_j A_i) = |P^A_i U P^B_j V |psi>|^2.
inline SequentialProbTable born_sequential_probabilities(const QubitState& psi, const Mat2& proj_a_yes,
                                                         const Mat2& proj_b_yes,
                                                         std::optional<Mat2> u = std::nullopt,
                                                         std::optional<Mat2> v = std::nullopt) {
  require_projector(proj_a_yes, "proj_a_yes");
  require_projector(proj_b_yes, "proj_b_yes");
  const Mat2 uu = u.value_or(Mat2::identity());
  const Mat2 vv = v.value_or(Mat2::identity());
  if (u) require_unitary(uu, "u");
  if (v) require_unitary(vv, "v");

  const Mat2 pa[2] = {proj_a_yes, Mat2::identity() - proj_a_yes};
  const Mat2 pb[2] = {proj_b_yes, Mat2::identity() - proj_b_yes};

  auto prob = [&psi](const Mat2& m) {
    double n2 = 0.0;
    m.apply_unnormalized_norm2(psi, n2);
    return n2;
  };

  double ab[2][2];  // [A outcome][B outcome]
  double ba[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ab[i][j] = prob(pb[j] * (vv * (pa[i] * uu)));
      ba[i][j] = prob(pa[i] * (uu * (pb[j] * vv)));
    }
  // FourProbs orders its indices first-measurement first: for BA the yn entry
  // is (B yes, A no).
  return {{ab[0][0], ab[0][1], ab[1][0], ab[1][1]}, {ba[0][0], ba[1][0], ba[0][1], ba[1][1]}};
}

// q = p(A_y B_y) - p(B_y A_y) + p(A_n B_n) - p(B_n A_n)
inline double qq_statistic(const SequentialProbTable& t) {
  return t.ab.yy - t.ba.yy + t.ab.nn - t.ba.nn;
}

// q' = p(A_y B_n) p(A_n B_n) - p(A_n B_y) p(A_y B_y)
inline double q_prime_statistic(const SequentialProbTable& t) {
  return t.ab.yn * t.ab.nn - t.ab.ny * t.ab.yy;
}

// Operator norm of Q; zero for every projector pair.
inline double q_operator_norm(const Mat2& proj_a_yes, const Mat2& proj_b_yes) {
  require_projector(proj_a_yes, "proj_a_yes");
  require_projector(proj_b_yes, "proj_b_yes");
  const Mat2 an = Mat2::identity() - proj_a_yes;
  const Mat2 bn = Mat2::identity() - proj_b_yes;
  const Mat2 q = proj_a_yes * proj_b_yes * proj_a_yes - proj_b_yes * proj_a_yes * proj_b_yes +
                 an * bn * an - bn * an * bn;
  return q.operator_norm();
}

// <psi| Q' |psi> where Q' is Q with the contexts attached; it equals the q
// statistic of the context-dressed probabilities and vanishes when U = V = I.
inline double q_prime_operator_expectation(const QubitState& psi, const Mat2& proj_a_yes,
                                           const Mat2& proj_b_yes, const Mat2& u, const Mat2& v) {
  require_projector(proj_a_yes, "proj_a_yes");
  require_projector(proj_b_yes, "proj_b_yes");
  require_unitary(u, "u");
  require_unitary(v, "v");
  const Mat2 an = Mat2::identity() - proj_a_yes;
  const Mat2 bn = Mat2::identity() - proj_b_yes;
  const Mat2 ud = u.adjoint();
  const Mat2 vd = v.adjoint();

  const Mat2 qp = ud * proj_a_yes * vd * proj_b_yes * v * proj_a_yes * u -
                  vd * proj_b_yes * ud * proj_a_yes * u * proj_b_yes * v +
                  ud * an * vd * bn * v * an * u -
                  vd * bn * ud * an * u * bn * v;
  return qp.expectation(psi).real();
}

// Haar-like random state: normalized complex Gaussian pair.
inline QubitState random_state(Rng& rng) {
  Complex c0{rng.gaussian(), rng.gaussian()};
  Complex c1{rng.gaussian(), rng.gaussian()};
  double n = std::sqrt(std::norm(c0) + std::norm(c1));
  while (n < 1e-6) {
    c0 = {rng.gaussian(), rng.gaussian()};
    c1 = {rng.gaussian(), rng.gaussian()};
    n = std::sqrt(std::norm(c0) + std::norm(c1));
  }
  return {c0 / n, c1 / n};
}

inline Mat2 random_projector(Rng& rng) { return Mat2::outer(random_state(rng)); }

// Random unitary: Gram-Schmidt pair of random states as columns, with a
// random phase on the second column.
inline Mat2 random_unitary(Rng& rng) {
  const QubitState c0 = random_state(rng);
  QubitState g = random_state(rng);
  // g minus its projection on c0
  const Complex ip = std::conj(c0.a0) * g.a0 + std::conj(c0.a1) * g.a1;
  Complex b0 = g.a0 - ip * c0.a0;
  Complex b1 = g.a1 - ip * c0.a1;
  double n = std::sqrt(std::norm(b0) + std::norm(b1));
  while (n < 1e-6) {
    g = random_state(rng);
    const Complex ip2 = std::conj(c0.a0) * g.a0 + std::conj(c0.a1) * g.a1;
    b0 = g.a0 - ip2 * c0.a0;
    b1 = g.a1 - ip2 * c0.a1;
    n = std::sqrt(std::norm(b0) + std::norm(b1));
  }
  const double phase = rng.uniform(0.0, 6.283185307179586);
  const Complex ph{std::cos(phase), std::sin(phase)};
  return {c0.a0, ph * b0 / n, c0.a1, ph * b1 / n};
}

inline BlochVector random_bloch_vector(Rng& rng) {
  double x = rng.gaussian();
  double y = rng.gaussian();
  double z = rng.gaussian();
  double n = std::sqrt(x * x + y * y + z * z);
  while (n < 1e-6) {
    x = rng.gaussian();
    y = rng.gaussian();
    z = rng.gaussian();
    n = std::sqrt(x * x + y * y + z * z);
  }
  return {x / n, y / n, z / n};
}

}  // namespace gtr
