#pragma once

// Question-order datasets: eight probabilities per experiment plus
// provenance. Raw tables may carry published rounding error up to 1e-4 per
// order; to_table() renormalizes each order before analysis.

#include <cmath>
#include <string>
#include <vector>

#include "gtr/errors.hpp"
#include "gtr/model.hpp"

namespace gtr {

struct ExperimentDataset {
  std::string name;
  FourProbs order_ab;
  FourProbs order_ba;
  std::string provenance;

  ExperimentDataset(std::string nm, FourProbs ab, FourProbs ba, std::string prov)
      : name(std::move(nm)), order_ab(ab), order_ba(ba), provenance(std::move(prov)) {
    check(order_ab, "ab");
    check(order_ba, "ba");
  }

  // Per-order renormalized table.
  SequentialProbTable to_table() const { return {renorm(order_ab), renorm(order_ba)}; }

private:
  static void check(const FourProbs& p, const char* label) {
    for (double v : {p.yy, p.yn, p.ny, p.nn})
      if (!(v >= 0.0 && v <= 1.0))
        throw validation_error(std::string("dataset order ") + label + ": probabilities must be in [0, 1]");
    if (std::abs(p.sum() - 1.0) > 1e-4)
      throw validation_error(std::string("dataset order ") + label + ": probabilities must sum to 1 within 1e-4");
  }

  static FourProbs renorm(const FourProbs& p) {
    const double s = p.sum();
    return {p.yy / s, p.yn / s, p.ny / s, p.nn / s};
  }
};

// 1997 Gallup poll pairs reported by Moore (2002), yes/no respondents only,
// as tabulated by Wang & Busemeyer (2013).
inline const std::vector<ExperimentDataset>& builtin_datasets() {
  static const std::vector<ExperimentDataset> datasets = {
      {"clinton-gore",
       {0.4899, 0.0447, 0.1767, 0.2887},
       {0.5625, 0.1991, 0.0255, 0.2129},
       "Gallup 1997 poll (Moore 2002), honesty of Clinton (A) / Gore (B); tabulation of "
       "Wang & Busemeyer (2013) with p(AnBn) corrected 0.2886 -> 0.2887 and p(BnAn) "
       "corrected 0.2130 -> 0.2129 so each order sums to exactly 1."},
      {"rose-jackson",
       {0.3379, 0.3241, 0.0178, 0.3202},
       {0.4156, 0.0671, 0.1234, 0.3939},
       "Gallup 1997 poll (Moore 2002), Hall of Fame eligibility of Rose (A) / Jackson (B); "
       "tabulation of Wang & Busemeyer (2013)."},
  };
  return datasets;
}

inline const ExperimentDataset* find_builtin_dataset(const std::string& name) {
  for (const ExperimentDataset& d : builtin_datasets())
    if (d.name == name) return &d;
  return nullptr;
}

}  // namespace gtr
