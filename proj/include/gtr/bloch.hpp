#pragma once

// Embedding of a concretized parameter set in the Bloch sphere.
//
// Canonical frame: a_y along +z, b_y in the xz-plane with positive
// x-component, the state chosen with non-negative y-component.

#include <cmath>
#include <string>

#include "gtr/errors.hpp"
#include "gtr/model.hpp"

namespace gtr {

struct BlochVector {
  double x;
  double y;
  double z;

  BlochVector(double vx, double vy, double vz) : x(vx), y(vy), z(vz) {
    if (std::abs(norm() - 1.0) > kUnitTol)
      throw validation_error("bloch vector: norm must be 1, got " + std::to_string(norm()));
  }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

struct BlochEmbedding {
  BlochVector x_psi;
  BlochVector a_y;
  BlochVector b_y;
};

// Unit vectors reproducing the three cosines: x_psi.a_y = cos_theta_a,
// x_psi.b_y = cos_theta_b, a_y.b_y = cos_theta. Fails when the three
// angles violate the spherical triangle inequality.
inline BlochEmbedding embed_bloch(const ModelParams& p) {
  const double ca = p.cos_theta_a;
  const double cb = p.cos_theta_b;
  const double c = p.cos_theta;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));

  const BlochVector a_y{0.0, 0.0, 1.0};
  const BlochVector b_y{s, 0.0, c};

  if (s == 0.0) {
    // b_y = +-a_y: the B cosine is forced to +-cos_theta_a.
    if (std::abs(cb - ca * c) > 1e-9)
      throw infeasible_error("embed: degenerate axes (|cos_theta| = 1) force cos_theta_b = cos_theta * cos_theta_a");
    const double sa = std::sqrt(std::max(0.0, 1.0 - ca * ca));
    return {BlochVector{sa, 0.0, ca}, a_y, b_y};
  }

  const double x = (cb - ca * c) / s;
  const double y2 = 1.0 - ca * ca - x * x;
  if (y2 < -2e-12)
    throw infeasible_error(
        "embed: no unit state matches the three cosines (spherical triangle condition violated)");
  const double y = std::sqrt(std::max(0.0, y2));
  return {BlochVector{x, y, ca}, a_y, b_y};
}

}  // namespace gtr
