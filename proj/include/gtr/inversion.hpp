#pragma once

// Exact inversion of the sequential probability formulas.
//
// The eight observed probabilities of the two orders pin down the six
// ratios d_A/eps_A, cos(theta_A)/eps_A, cos(theta)/eps_A, d_B/eps_B,
// cos(theta_B)/eps_B, cos(theta)/eps_B in closed form; one parameter
// (eps_A here) stays free and concretize() fixes the rest from it.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gtr/errors.hpp"
#include "gtr/model.hpp"

namespace gtr {

inline constexpr double kBornTol = 1e-9;

// Closed-form ratio solution from an eight-probability table.
// Both orders reproduce the table exactly when fed back through
// sequential_probabilities.
inline RatioSolution fit_ratios(const SequentialProbTable& table) {
  const FourProbs& ab = table.ab;
  const FourProbs& ba = table.ba;
  if (std::abs(ab.sum() - 1.0) > 1e-6 || std::abs(ba.sum() - 1.0) > 1e-6)
    throw validation_error("fit: each order must sum to 1 within 1e-6");

  const double p_a_yes = ab.yy + ab.yn;
  const double p_a_no = ab.nn + ab.ny;
  const double p_b_yes = ba.yy + ba.yn;
  const double p_b_no = ba.nn + ba.ny;
  for (double m : {p_a_yes, p_a_no, p_b_yes, p_b_no})
    if (m <= 0.0)
      throw degenerate_error("fit: a first-measurement marginal is zero; the conditional ratios are undefined");

  const double a = 2.0 * p_a_yes - 1.0;
  const double b = (ab.yy - ab.yn) / p_a_yes;
  const double bp = (ab.nn - ab.ny) / p_a_no;
  const double c = 2.0 * p_b_yes - 1.0;
  const double ap = (ba.yy - ba.yn) / p_b_yes;
  const double app = (ba.nn - ba.ny) / p_b_no;

  RatioSolution r;
  r.da_over_ea = 0.5 * (app - ap);
  r.costheta_over_ea = 0.5 * (app + ap);
  r.costhetaa_over_ea = a + r.da_over_ea;
  r.db_over_eb = 0.5 * (bp - b);
  r.costheta_over_eb = 0.5 * (b + bp);
  r.costhetab_over_eb = c + r.db_over_eb;
  return r;
}

// Fix eps_A and derive the full parameter set. Throws infeasible_error when
// the choice violates a model constraint, naming the constraint.
inline ModelParams concretize(const RatioSolution& r, double eps_a) {
  if (!(eps_a > 0.0) || eps_a > 1.0)
    throw infeasible_error("concretize: eps_a must be in (0, 1]");

  const double d_a = eps_a * r.da_over_ea;
  const double cos_a = eps_a * r.costhetaa_over_ea;
  const double cos_theta = eps_a * r.costheta_over_ea;

  double eps_b;
  if (r.costheta_over_eb != 0.0) {
    eps_b = cos_theta / r.costheta_over_eb;
  } else if (r.costheta_over_ea != 0.0) {
    throw infeasible_error(
        "concretize: cos_theta/eps_B = 0 but cos_theta/eps_A != 0; the two sides disagree on cos_theta");
  } else {
    eps_b = eps_a;  // cos_theta = 0 leaves eps_B unconstrained; keep the sides symmetric
  }
  const double d_b = eps_b * r.db_over_eb;
  const double cos_b = eps_b * r.costhetab_over_eb;

  if (eps_a + std::abs(d_a) > 1.0)
    throw infeasible_error("concretize: eps_a * (1 + |d_A/eps_A|) > 1; the A support leaves [-1, 1]");
  if (!(eps_b > 0.0) || eps_b > 1.0)
    throw infeasible_error("concretize: derived eps_b = " + std::to_string(eps_b) + " is outside (0, 1]");
  if (eps_b + std::abs(d_b) > 1.0)
    throw infeasible_error("concretize: eps_b * (1 + |d_B/eps_B|) > 1; the B support leaves [-1, 1]");
  if (std::abs(r.costhetaa_over_ea - r.da_over_ea) > 1.0)
    throw infeasible_error("concretize: cos_theta_a falls outside the A support");
  if (std::abs(r.costheta_over_ea - r.da_over_ea) > 1.0)
    throw infeasible_error("concretize: cos_theta falls outside the A support");
  if (std::abs(r.costhetab_over_eb - r.db_over_eb) > 1.0)
    throw infeasible_error("concretize: cos_theta_b falls outside the B support");
  if (std::abs(r.costheta_over_eb - r.db_over_eb) > 1.0)
    throw infeasible_error("concretize: cos_theta falls outside the B support");

  return {eps_a, d_a, eps_b, d_b, cos_a, cos_b, cos_theta};
}

// Right-open at 0; (0, hi] is the admissible set, hi == 0 means empty.
struct EpsilonInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(hi > lo); }
  bool contains(double e) const { return e > lo && e <= hi; }
};

// The maximal eps_A interval on which concretize succeeds. All binding
// constraints are upper bounds, so the set is always of the form (0, hi].
inline EpsilonInterval admissible_epsilon_a_interval(const RatioSolution& r) {
  const bool ratio_ok = std::abs(r.costhetaa_over_ea - r.da_over_ea) <= 1.0 &&
                        std::abs(r.costheta_over_ea - r.da_over_ea) <= 1.0 &&
                        std::abs(r.costhetab_over_eb - r.db_over_eb) <= 1.0 &&
                        std::abs(r.costheta_over_eb - r.db_over_eb) <= 1.0;
  if (!ratio_ok) return {};

  double hi = 1.0 / (1.0 + std::abs(r.da_over_ea));
  if (r.costheta_over_eb != 0.0) {
    const double k = r.costheta_over_ea / r.costheta_over_eb;  // eps_b = k * eps_a
    if (k <= 0.0) return {};
    hi = std::min(hi, 1.0 / (k * (1.0 + std::abs(r.db_over_eb))));
  } else if (r.costheta_over_ea != 0.0) {
    return {};  // inconsistent cos_theta ratios
  } else {
    hi = std::min(hi, 1.0 / (1.0 + std::abs(r.db_over_eb)));  // eps_b = eps_a convention
  }
  return {0.0, hi};
}

struct ConstraintCheck {
  std::string name;
  bool pass = false;
};

struct FeasibilityReport {
  bool born_compatible = false;        // d_A = d_B = 0 and all cosine ratios within [-1, 1]
  bool same_distribution_possible = false;  // rho_A = rho_B achievable at some shared eps
  std::vector<ConstraintCheck> constraints;
  EpsilonInterval admissible_eps_a;
};

// Feasibility analysis of a ratio solution. Constraints that depend on the
// free parameter are evaluated at eps_a (default 1/2, the worked convention).
inline FeasibilityReport feasibility_report(const RatioSolution& r, double eps_a = 0.5) {
  FeasibilityReport rep;

  const bool ratios_bounded = std::abs(r.costhetaa_over_ea) <= 1.0 + kBornTol &&
                              std::abs(r.costheta_over_ea) <= 1.0 + kBornTol &&
                              std::abs(r.costhetab_over_eb) <= 1.0 + kBornTol &&
                              std::abs(r.costheta_over_eb) <= 1.0 + kBornTol;
  rep.born_compatible = std::abs(r.da_over_ea) <= kBornTol && std::abs(r.db_over_eb) <= kBornTol &&
                        ratios_bounded;

  // rho_A = rho_B needs eps_A = eps_B and d_A = d_B at some concretization;
  // the ratio link forces cos_theta/eps equal on both sides, and then the
  // d ratios must agree as well.
  rep.same_distribution_possible = std::abs(r.costheta_over_ea - r.costheta_over_eb) <= kBornTol &&
                                   std::abs(r.da_over_ea - r.db_over_eb) <= kBornTol;

  rep.admissible_eps_a = admissible_epsilon_a_interval(r);

  const bool support_ok = std::abs(r.costhetaa_over_ea - r.da_over_ea) <= 1.0 &&
                          std::abs(r.costheta_over_ea - r.da_over_ea) <= 1.0 &&
                          std::abs(r.costhetab_over_eb - r.db_over_eb) <= 1.0 &&
                          std::abs(r.costheta_over_eb - r.db_over_eb) <= 1.0;
  rep.constraints.push_back({"support containment (cosines inside both supports)", support_ok});

  bool d_range = false;
  bool eps_range = false;
  bool triangle = false;
  try {
    const ModelParams p = concretize(r, eps_a);
    d_range = true;
    eps_range = true;
    const double tha = std::acos(std::clamp(p.cos_theta_a, -1.0, 1.0));
    const double th = std::acos(std::clamp(p.cos_theta, -1.0, 1.0));
    triangle = p.cos_theta_b >= std::cos(tha + th) - 1e-12 &&
               p.cos_theta_b <= std::cos(tha - th) + 1e-12;
  } catch (const infeasible_error&) {
    // d_range/eps_range stay false; tell them apart via the admissible interval
    d_range = rep.admissible_eps_a.contains(eps_a);
    eps_range = d_range;
  }
  rep.constraints.push_back({"d-range at eps_a=" + std::to_string(eps_a) + " (supports inside [-1, 1])", d_range});
  rep.constraints.push_back({"eps-range at eps_a=" + std::to_string(eps_a) + " (derived eps_b in (0, 1])", eps_range});
  rep.constraints.push_back({"spherical-triangle embedding at eps_a=" + std::to_string(eps_a), triangle});
  return rep;
}

}  // namespace gtr
