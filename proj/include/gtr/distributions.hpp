#pragma once

// Probability densities on the outcome segment [-1, 1].
//
// A measurement is represented by a density over the segment; the yes
// probability of a measurement whose state lands at position c is the mass
// below c. Two families are provided: the locally uniform two-parameter
// density (constant 1/2eps on [d-eps, d+eps]) and a general piecewise
// constant density used for truncated distributions and sampling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gtr/errors.hpp"

namespace gtr {

inline constexpr double kUnitTol = 1e-12;

// Locally uniform density: height 1/(2*epsilon) on [d-epsilon, d+epsilon],
// zero elsewhere on [-1, 1].
struct LocallyUniformDistribution {
  double epsilon;
  double d;

  LocallyUniformDistribution(double eps, double center) : epsilon(eps), d(center) {
    if (!(eps > 0.0) || eps > 1.0)
      throw validation_error("locally uniform: epsilon must be in (0, 1], got " + std::to_string(eps));
    if (center < -1.0 + eps || center > 1.0 - eps)
      throw validation_error("locally uniform: d must be in [-1+eps, 1-eps], got d=" + std::to_string(center) +
                             " eps=" + std::to_string(eps));
  }

  double support_lo() const { return d - epsilon; }
  double support_hi() const { return d + epsilon; }
  double height() const { return 1.0 / (2.0 * epsilon); }

  // Mass below x, the closed form of the defining integral. Clamps to
  // exact 0/1 outside the support.
  double cdf(double x) const {
    if (x <= support_lo()) return 0.0;
    if (x >= support_hi()) return 1.0;
    return 0.5 * (1.0 + (x - d) / epsilon);
  }
};

struct OutcomeProbabilities {
  double p_yes;
  double p_no;
};

// Yes/no probabilities of a single measurement whose state projects to
// cos_angle on the outcome segment.
inline OutcomeProbabilities single_outcome_probabilities(const LocallyUniformDistribution& dist,
                                                         double cos_angle) {
  if (std::abs(cos_angle) > 1.0)
    throw validation_error("single outcome: cos_angle must be in [-1, 1], got " + std::to_string(cos_angle));
  const double p = dist.cdf(cos_angle);
  return {p, 1.0 - p};
}

// Piecewise constant density on [-1, 1]. Breakpoints are strictly
// increasing with first -1 and last 1; densities hold one non-negative
// height per interval and must integrate to 1 within 1e-12.
//
// The CDF is pinned to exactly 0 below the support and exactly 1 above it,
// so repeated measurements that depend on full or empty mass report exact
// probabilities.
class PiecewiseDistribution {
public:
  PiecewiseDistribution(std::vector<double> breakpoints, std::vector<double> densities)
      : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
    if (breakpoints_.size() < 2 || densities_.size() != breakpoints_.size() - 1)
      throw validation_error("piecewise: need n+1 breakpoints for n densities");
    if (breakpoints_.front() != -1.0 || breakpoints_.back() != 1.0)
      throw validation_error("piecewise: breakpoints must start at -1 and end at 1");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
      if (!(breakpoints_[i] < breakpoints_[i + 1]))
        throw validation_error("piecewise: breakpoints must be strictly increasing");
    for (double h : densities_)
      if (!(h >= 0.0) || !std::isfinite(h))
        throw validation_error("piecewise: densities must be finite and non-negative");

    double total = 0.0;
    for (std::size_t i = 0; i < densities_.size(); ++i)
      total += densities_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    if (std::abs(total - 1.0) > kUnitTol)
      throw validation_error("piecewise: density must integrate to 1, got " + std::to_string(total));

    // First and last interval carrying mass.
    std::size_t lo = 0;
    while (lo < densities_.size() && densities_[lo] == 0.0) ++lo;
    std::size_t hi = densities_.size();
    while (hi > lo && densities_[hi - 1] == 0.0) --hi;
    support_lo_idx_ = lo;
    support_hi_idx_ = hi;  // one past the last mass-carrying interval

    // Cumulative mass at each breakpoint, normalized so that the CDF at the
    // support top is exactly 1.
    cum_.assign(breakpoints_.size(), 0.0);
    double run = 0.0;
    for (std::size_t i = 0; i < densities_.size(); ++i) {
      run += densities_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
      cum_[i + 1] = run;
    }
    const double mass = cum_[support_hi_idx_];
    for (std::size_t i = 0; i <= densities_.size(); ++i) {
      if (i <= support_lo_idx_) cum_[i] = 0.0;
      else if (i >= support_hi_idx_) cum_[i] = 1.0;
      else cum_[i] = cum_[i] / mass;
    }
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& densities() const { return densities_; }

  double support_lo() const { return breakpoints_[support_lo_idx_]; }
  double support_hi() const { return breakpoints_[support_hi_idx_]; }

  // Mass below x. Exactly 0 at or below the support bottom, exactly 1 at or
  // above the support top.
  double cdf(double x) const {
    if (x <= support_lo()) return 0.0;
    if (x >= support_hi()) return 1.0;
    const std::size_t i = segment_index(x);
    const double h = normalized_height(i);
    return std::clamp(cum_[i] + h * (x - breakpoints_[i]), 0.0, 1.0);
  }

  // Quantile (inverse CDF). At a CDF plateau the convention is the lower end
  // of the next mass-carrying interval, matching cdf() at every breakpoint.
  double quantile(double u) const {
    if (!(u >= 0.0) || u > 1.0)
      throw validation_error("piecewise: quantile argument must be in [0, 1]");
    if (u <= 0.0) return support_lo();
    if (u >= 1.0) return support_hi();
    // First interval whose upper cumulative exceeds u.
    std::size_t i = support_lo_idx_;
    while (i + 1 < support_hi_idx_ && cum_[i + 1] <= u) ++i;
    const double h = normalized_height(i);
    const double x = breakpoints_[i] + (u - cum_[i]) / h;
    return std::clamp(x, breakpoints_[i], breakpoints_[i + 1]);
  }

private:
  std::size_t segment_index(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    return std::min(std::max<std::size_t>(i, 1) - 1, densities_.size() - 1);
  }

  double normalized_height(std::size_t i) const {
    // cum_ is normalized; recover the matching interval height from it so
    // cdf/quantile agree exactly at breakpoints.
    const double w = breakpoints_[i + 1] - breakpoints_[i];
    return (cum_[i + 1] - cum_[i]) / w;
  }

  std::vector<double> breakpoints_;
  std::vector<double> densities_;
  std::vector<double> cum_;
  std::size_t support_lo_idx_ = 0;
  std::size_t support_hi_idx_ = 0;
};

// Exact integral of the stored step function over [lo, hi].
inline double integrate(const PiecewiseDistribution& dist, double lo, double hi) {
  if (lo < -1.0 || hi > 1.0 || lo > hi)
    throw validation_error("integrate: bounds must satisfy -1 <= lo <= hi <= 1");
  return dist.cdf(hi) - dist.cdf(lo);
}

enum class TruncationSide { below, above };

// Zero the density on one side of `cut` and rescale the rest to unit mass.
// `below` retains [-1, cut), `above` retains [cut, 1].
inline PiecewiseDistribution truncate_renormalize(const PiecewiseDistribution& dist, double cut,
                                                  TruncationSide side) {
  if (cut < -1.0 || cut > 1.0)
    throw validation_error("truncate: cut must be in [-1, 1]");
  const double retained =
      side == TruncationSide::below ? dist.cdf(cut) : 1.0 - dist.cdf(cut);
  if (retained <= 0.0)
    throw degenerate_error("truncate: retained interval carries no mass");

  std::vector<double> bps = dist.breakpoints();
  std::vector<double> hs = dist.densities();
  if (cut > -1.0 && cut < 1.0 &&
      std::find(bps.begin(), bps.end(), cut) == bps.end()) {
    const auto it = std::upper_bound(bps.begin(), bps.end(), cut);
    const std::size_t i = static_cast<std::size_t>(it - bps.begin()) - 1;
    const double split_height = hs[i];
    bps.insert(bps.begin() + static_cast<std::ptrdiff_t>(i) + 1, cut);
    hs.insert(hs.begin() + static_cast<std::ptrdiff_t>(i), split_height);
  }
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const bool keep = side == TruncationSide::below ? bps[i + 1] <= cut : bps[i] >= cut;
    hs[i] = keep ? hs[i] / retained : 0.0;
  }
  return PiecewiseDistribution(std::move(bps), std::move(hs));
}

// The locally uniform density as an explicit step function on [-1, 1].
inline PiecewiseDistribution to_piecewise(const LocallyUniformDistribution& dist) {
  std::vector<double> bps{-1.0};
  std::vector<double> hs;
  if (dist.support_lo() > -1.0) {
    bps.push_back(dist.support_lo());
    hs.push_back(0.0);
  }
  if (dist.support_hi() < 1.0) {
    bps.push_back(dist.support_hi());
    hs.push_back(dist.height());
    bps.push_back(1.0);
    hs.push_back(0.0);
  } else {
    bps.push_back(1.0);
    hs.push_back(dist.height());
  }
  return PiecewiseDistribution(std::move(bps), std::move(hs));
}

}  // namespace gtr
