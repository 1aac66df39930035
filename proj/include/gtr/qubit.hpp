#pragma once

// Minimal 2-dimensional complex Hilbert space: states, 2x2 operators,
// projector/unitary validation, and Bloch-sphere constructors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gtr/bloch.hpp"
#include "gtr/errors.hpp"

namespace gtr {

using Complex = std::complex<double>;

struct QubitState {
  Complex a0;
  Complex a1;

  QubitState(Complex c0, Complex c1) : a0(c0), a1(c1) {
    if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > kUnitTol)
      throw validation_error("qubit state: squared norm must be 1");
  }
};

// Plain 2x2 complex matrix with the handful of operations the identities
// need. Value type, no validation; see as_projector / as_unitary.
struct Mat2 {
  Complex m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  static Mat2 outer(const QubitState& v) {
    return {v.a0 * std::conj(v.a0), v.a0 * std::conj(v.a1),
            v.a1 * std::conj(v.a0), v.a1 * std::conj(v.a1)};
  }

  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator+(const Mat2& o) const { return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11}; }
  Mat2 operator-(const Mat2& o) const { return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11}; }

  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  Complex trace() const { return m00 + m11; }
  Complex det() const { return m00 * m11 - m01 * m10; }

  // (column vector) M |v>
  QubitState apply_unnormalized_norm2(const QubitState& v, double& norm2) const {
    const Complex b0 = m00 * v.a0 + m01 * v.a1;
    const Complex b1 = m10 * v.a0 + m11 * v.a1;
    norm2 = std::norm(b0) + std::norm(b1);
    const double n = std::sqrt(norm2);
    if (n == 0.0) return {1.0, 0.0};  // collapsed branch of probability zero; state unused
    return {b0 / n, b1 / n};
  }

  // <psi| M |psi>
  Complex expectation(const QubitState& v) const {
    const Complex b0 = m00 * v.a0 + m01 * v.a1;
    const Complex b1 = m10 * v.a0 + m11 * v.a1;
    return std::conj(v.a0) * b0 + std::conj(v.a1) * b1;
  }

  // Largest singular value, from the closed-form eigenvalues of M^dagger M.
  double operator_norm() const {
    const Mat2 h = adjoint() * (*this);
    const double tr = h.m00.real() + h.m11.real();
    const double dt = h.det().real();
    const double disc = std::max(0.0, tr * tr - 4.0 * dt);
    const double lmax = 0.5 * (tr + std::sqrt(disc));
    return std::sqrt(std::max(0.0, lmax));
  }
};

inline bool is_hermitian(const Mat2& m, double tol = kUnitTol) {
  return std::abs(m.m00.imag()) <= tol && std::abs(m.m11.imag()) <= tol &&
         std::abs(m.m01 - std::conj(m.m10)) <= tol;
}

// Rank-1 projector: Hermitian, idempotent, trace 1.
inline void require_projector(const Mat2& m, const char* name) {
  if (!is_hermitian(m))
    throw validation_error(std::string("operator ") + name + " is not Hermitian");
  if ((m * m - m).operator_norm() > 1e-12)
    throw validation_error(std::string("operator ") + name + " is not idempotent");
  if (std::abs(m.trace() - Complex{1.0}) > 1e-12)
    throw validation_error(std::string("operator ") + name + " is not rank 1");
}

inline void require_unitary(const Mat2& m, const char* name) {
  if ((m.adjoint() * m - Mat2::identity()).operator_norm() > 1e-12)
    throw validation_error(std::string("operator ") + name + " is not unitary");
}

// |psi> with Bloch vector n: (cos(t/2), e^{i phi} sin(t/2)).
inline QubitState state_from_bloch(const BlochVector& n) {
  const double t = std::acos(std::clamp(n.z, -1.0, 1.0));
  const double phi = std::atan2(n.y, n.x);
  const double ch = std::cos(0.5 * t);
  const double sh = std::sin(0.5 * t);
  return {Complex{ch, 0.0}, Complex{sh * std::cos(phi), sh * std::sin(phi)}};
}

// (I + n.sigma)/2
inline Mat2 projector_from_bloch(const BlochVector& n) {
  return {Complex{0.5 * (1.0 + n.z), 0.0}, Complex{0.5 * n.x, -0.5 * n.y},
          Complex{0.5 * n.x, 0.5 * n.y}, Complex{0.5 * (1.0 - n.z), 0.0}};
}

}  // namespace gtr
