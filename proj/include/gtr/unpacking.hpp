#pragma once

// Packed vs unpacked probability assignments: additivity gaps, the
// degenerate-measurement equality, the sequential-quantum interference
// decomposition, and a coarse-grained realization of unpacking as a
// change of density.

#include <cmath>
#include <string>

#include "gtr/distributions.hpp"
#include "gtr/errors.hpp"
#include "gtr/qubit.hpp"

namespace gtr {

// Two-outcome assignment of the packed question.
struct PackedResult {
  double p_yes;
  double p_no;

  PackedResult(double yes, double no) : p_yes(yes), p_no(no) {
    if (!(yes >= 0.0 && yes <= 1.0 && no >= 0.0 && no <= 1.0))
      throw validation_error("packed result: probabilities must be in [0, 1]");
    if (std::abs(yes + no - 1.0) > 1e-9)
      throw validation_error("packed result: probabilities must sum to 1");
  }
};

// Three-outcome assignment of the explicitly unpacked question; p_yy and
// p_yn split the packed yes, p_n matches the packed no.
struct UnpackedResult {
  double p_yy;
  double p_yn;
  double p_n;

  UnpackedResult(double yy, double yn, double n) : p_yy(yy), p_yn(yn), p_n(n) {
    for (double v : {yy, yn, n})
      if (!(v >= 0.0 && v <= 1.0))
        throw validation_error("unpacked result: probabilities must be in [0, 1]");
    if (std::abs(yy + yn + n - 1.0) > 1e-9)
      throw validation_error("unpacked result: probabilities must sum to 1");
  }
};

enum class Additivity { superadditive, subadditive, additive };

inline const char* to_string(Additivity a) {
  switch (a) {
    case Additivity::superadditive: return "superadditive";
    case Additivity::subadditive: return "subadditive";
    default: return "additive";
  }
}

struct AdditivityGap {
  double gap;
  Additivity classification;
};

// gap = packed yes minus aggregated unpacked yes; positive means the packed
// description received more probability (superadditivity).
inline AdditivityGap additivity_gap(const PackedResult& packed, const UnpackedResult& unpacked,
                                    double tol = 1e-9) {
  const double gap = packed.p_yes - (unpacked.p_yy + unpacked.p_yn);
  if (gap > tol) return {gap, Additivity::superadditive};
  if (gap < -tol) return {gap, Additivity::subadditive};
  return {gap, Additivity::additive};
}

// The degenerate-measurement prediction: packed outcomes equal the
// aggregated unpacked outcomes.
inline bool check_degenerate_equality(const PackedResult& packed, const UnpackedResult& unpacked,
                                      double tol) {
  return std::abs(packed.p_yes - (unpacked.p_yy + unpacked.p_yn)) <= tol &&
         std::abs(packed.p_no - unpacked.p_n) <= tol;
}

struct InterferenceDecomposition {
  double direct_b_yes;   // <psi| P^B_y P^A_i P^B_y |psi>
  double direct_b_no;    // <psi| P^B_n P^A_i P^B_n |psi>
  double interference;   // <psi| P^B_y P^A_i P^B_n + P^B_n P^A_i P^B_y |psi>
};

// Split <P^A_i> into the two direct sequential contributions plus the
// interference term; the three parts sum to <psi|P^A_i|psi> identically.
inline InterferenceDecomposition interference_decomposition(const QubitState& psi,
                                                            const Mat2& proj_a_yes,
                                                            const Mat2& proj_b_yes, Outcome i) {
  require_projector(proj_a_yes, "proj_a_yes");
  require_projector(proj_b_yes, "proj_b_yes");
  const Mat2 pa = i == Outcome::yes ? proj_a_yes : Mat2::identity() - proj_a_yes;
  const Mat2 pbn = Mat2::identity() - proj_b_yes;
  const Mat2 cross = proj_b_yes * pa * pbn + pbn * pa * proj_b_yes;
  return {(proj_b_yes * pa * proj_b_yes).expectation(psi).real(),
          (pbn * pa * pbn).expectation(psi).real(), cross.expectation(psi).real()};
}

// Coarse-grained unpacking gap: same outcome geometry, different density
// for the packed and unpacked ways of posing the question.
inline double gtr_unpacking_gap(double cos_theta_a, const LocallyUniformDistribution& rho_packed,
                                const LocallyUniformDistribution& rho_unpacked) {
  if (cos_theta_a < rho_packed.support_lo() || cos_theta_a > rho_packed.support_hi() ||
      cos_theta_a < rho_unpacked.support_lo() || cos_theta_a > rho_unpacked.support_hi())
    throw validation_error("gtr unpacking gap: cos_theta_a must lie inside both supports");
  return single_outcome_probabilities(rho_packed, cos_theta_a).p_yes -
         single_outcome_probabilities(rho_unpacked, cos_theta_a).p_yes;
}

}  // namespace gtr
