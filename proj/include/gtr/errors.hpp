#pragma once

#include <stdexcept>
#include <string>

namespace gtr {

// Input violates a parameter domain or a type invariant.
class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematically valid input that admits no model representation
// (ratios outside the bracket bounds, infeasible epsilon choice,
// mutually inconsistent ratios, no Bloch embedding).
class infeasible_error : public std::runtime_error {
public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Data that makes the requested computation collapse: zero marginals
// in a fit, zero retained mass in a truncation.
class degenerate_error : public std::runtime_error {
public:
  explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// A forced measurement outcome whose probability is zero.
class impossible_outcome_error : public std::runtime_error {
public:
  explicit impossible_outcome_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gtr
