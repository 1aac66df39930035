#pragma once

// Core model types and the closed-form sequential outcome probabilities.
//
// Two dichotomic measurements A and B are each described by a locally
// uniform density (eps, d) on [-1, 1]; the initial state and the two
// measurement axes enter only through cos(theta_A) = x_psi . a_y,
// cos(theta_B) = x_psi . b_y and cos(theta) = a_y . b_y. The eight
// sequential probabilities depend on the six dimensionless ratios
// d/eps and cos/eps per side.

#include <algorithm>
#include <cmath>
#include <string>

#include "gtr/distributions.hpp"
#include "gtr/errors.hpp"

namespace gtr {

enum class Order { AB, BA };
enum class Observable { A, B };
enum class Outcome { yes, no };

inline const char* to_string(Order o) { return o == Order::AB ? "ab" : "ba"; }
inline const char* to_string(Observable w) { return w == Observable::A ? "A" : "B"; }
inline const char* to_string(Outcome o) { return o == Outcome::yes ? "yes" : "no"; }
inline Observable other(Observable w) { return w == Observable::A ? Observable::B : Observable::A; }

// One measurement order's four outcome probabilities.
struct FourProbs {
  double yy = 0.0;
  double yn = 0.0;
  double ny = 0.0;
  double nn = 0.0;

  double sum() const { return yy + yn + ny + nn; }
};

// Both orders. First index is the first measurement performed.
struct SequentialProbTable {
  FourProbs ab;
  FourProbs ba;

  SequentialProbTable(const FourProbs& order_ab, const FourProbs& order_ba)
      : ab(order_ab), ba(order_ba) {
    validate(ab, "ab");
    validate(ba, "ba");
  }

  const FourProbs& order(Order o) const { return o == Order::AB ? ab : ba; }

private:
  static void validate(const FourProbs& p, const char* label) {
    for (double v : {p.yy, p.yn, p.ny, p.nn})
      if (!(v >= 0.0 && v <= 1.0))
        throw validation_error(std::string("prob table ") + label + ": entries must be in [0, 1]");
    if (std::abs(p.sum() - 1.0) > 1e-9)
      throw validation_error(std::string("prob table ") + label + ": entries must sum to 1, got " +
                             std::to_string(p.sum()));
  }
};

// The six dimensionless ratios that the eight observed probabilities
// determine. The overall scale (one epsilon) stays free.
struct RatioSolution {
  double da_over_ea = 0.0;
  double costhetaa_over_ea = 0.0;
  double costheta_over_ea = 0.0;
  double db_over_eb = 0.0;
  double costhetab_over_eb = 0.0;
  double costheta_over_eb = 0.0;
};

// A concretized parameter set: both densities plus the three cosines.
struct ModelParams {
  double eps_a;
  double d_a;
  double eps_b;
  double d_b;
  double cos_theta_a;
  double cos_theta_b;
  double cos_theta;

  ModelParams(double ea, double da, double eb, double db, double ca, double cb, double cth)
      : eps_a(ea), d_a(da), eps_b(eb), d_b(db), cos_theta_a(ca), cos_theta_b(cb), cos_theta(cth) {
    dist_a();  // validates (eps_a, d_a)
    dist_b();
    require_in_support(cos_theta_a, d_a, eps_a, "cos_theta_a", "A");
    require_in_support(cos_theta, d_a, eps_a, "cos_theta", "A");
    require_in_support(cos_theta, d_b, eps_b, "cos_theta", "B");
    require_in_support(cos_theta_b, d_b, eps_b, "cos_theta_b", "B");
  }

  LocallyUniformDistribution dist_a() const { return {eps_a, d_a}; }
  LocallyUniformDistribution dist_b() const { return {eps_b, d_b}; }

  RatioSolution ratios() const {
    return {d_a / eps_a,     cos_theta_a / eps_a, cos_theta / eps_a,
            d_b / eps_b,     cos_theta_b / eps_b, cos_theta / eps_b};
  }

private:
  static void require_in_support(double c, double d, double eps, const char* name, const char* side) {
    if (c < d - eps || c > d + eps)
      throw validation_error(std::string(name) + "=" + std::to_string(c) +
                             " lies outside the support of distribution " + side);
  }
};

namespace detail {

// Ratios combined from valid parameters can overshoot 1 by a few ulps
// (two divisions instead of one); tolerate that and clamp the factors.
inline double bracket(double r, const char* name) {
  if (!std::isfinite(r) || std::abs(r) > 1.0 + 1e-12)
    throw infeasible_error(std::string("sequential: bracket factor (1 +- ") + name +
                           ") falls outside [0, 2]; ratios are infeasible for this order");
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace detail

// Four outcome probabilities of one order, from the six ratios. Each
// probability is a product of two bracket factors (1 +- r)/2; the four
// outputs of an order sum to 1 identically.
inline FourProbs sequential_probabilities(const RatioSolution& r, Order order) {
  if (order == Order::AB) {
    const double a = detail::bracket(r.costhetaa_over_ea - r.da_over_ea, "a");
    const double b = detail::bracket(r.costheta_over_eb - r.db_over_eb, "b");
    const double bp = detail::bracket(r.costheta_over_eb + r.db_over_eb, "b'");
    return {0.25 * (1.0 + b) * (1.0 + a), 0.25 * (1.0 - b) * (1.0 + a),
            0.25 * (1.0 - bp) * (1.0 - a), 0.25 * (1.0 + bp) * (1.0 - a)};
  }
  const double c = detail::bracket(r.costhetab_over_eb - r.db_over_eb, "c");
  const double ap = detail::bracket(r.costheta_over_ea - r.da_over_ea, "a'");
  const double app = detail::bracket(r.costheta_over_ea + r.da_over_ea, "a''");
  return {0.25 * (1.0 + ap) * (1.0 + c), 0.25 * (1.0 - ap) * (1.0 + c),
          0.25 * (1.0 - app) * (1.0 - c), 0.25 * (1.0 + app) * (1.0 - c)};
}

inline FourProbs probabilities_from_params(const ModelParams& params, Order order) {
  return sequential_probabilities(params.ratios(), order);
}

inline SequentialProbTable table_from_ratios(const RatioSolution& r) {
  return {sequential_probabilities(r, Order::AB), sequential_probabilities(r, Order::BA)};
}

inline SequentialProbTable table_from_params(const ModelParams& params) {
  return table_from_ratios(params.ratios());
}

}  // namespace gtr
