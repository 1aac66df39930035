#pragma once

// Measurement sessions with memory.
//
// Measurements are first kind: an immediate repetition reproduces the
// outcome because the collapsed state sits at an end of the outcome
// segment. Separated replicability (X ... Y ... X repeats the first X
// outcome with certainty) needs more: whenever a measurement follows an
// earlier measurement of the other observable, the earlier observable's
// density is truncated and renormalized so that its recorded outcome
// becomes certain from the state just produced. The retained side follows
// the recorded outcome; the cut sits at +cos(theta) or -cos(theta)
// according to whether the state just produced is a yes or a no state,
// since that sign is where the next repetition will be evaluated.
//
// The truncation can be degenerate (no mass on the required side) when
// -cos(theta) falls outside a support; this surfaces as degenerate_error.

#include <optional>
#include <span>
#include <vector>

#include "gtr/distributions.hpp"
#include "gtr/errors.hpp"
#include "gtr/model.hpp"
#include "gtr/rng.hpp"

namespace gtr {

struct MeasurementStep {
  Observable which;
  Outcome outcome;
  double probability;  // probability the realized outcome had when drawn
};

class Session {
public:
  explicit Session(const ModelParams& params)
      : params_(params),
        dist_a_(to_piecewise(params.dist_a())),
        dist_b_(to_piecewise(params.dist_b())) {}

  const ModelParams& params() const { return params_; }
  const std::vector<MeasurementStep>& history() const { return history_; }
  const PiecewiseDistribution& distribution(Observable w) const {
    return w == Observable::A ? dist_a_ : dist_b_;
  }

  // Position on the outcome segment of `which` at which the current state
  // sits: cos(theta_A)/cos(theta_B) from the initial state, +-cos(theta)
  // from the other observable's outcome states, +-1 from own outcome states.
  double current_cut(Observable which) const {
    if (!state_) return which == Observable::A ? params_.cos_theta_a : params_.cos_theta_b;
    const auto [obs, out] = *state_;
    if (obs == which) return out == Outcome::yes ? 1.0 : -1.0;
    return out == Outcome::yes ? params_.cos_theta : -params_.cos_theta;
  }

  MeasurementStep measure(Observable which, Rng& rng) {
    const double p_yes = yes_probability(which);
    // Single inverse-transform draw against the cut point: Q(u) < cut is the
    // same event as u < F(cut), and the latter stays consistent with the
    // reported probability when it is exactly 0 or 1.
    return commit(which, rng.uniform01() < p_yes ? Outcome::yes : Outcome::no, p_yes);
  }

  MeasurementStep measure_forced(Observable which, Outcome forced) {
    const double p_yes = yes_probability(which);
    const double p_forced = forced == Outcome::yes ? p_yes : 1.0 - p_yes;
    if (p_forced <= 0.0)
      throw impossible_outcome_error(std::string("measure: forced outcome ") + to_string(forced) +
                                     " of " + to_string(which) + " has probability zero");
    return commit(which, forced, p_yes);
  }

private:
  double yes_probability(Observable which) const {
    const PiecewiseDistribution& dist = which == Observable::A ? dist_a_ : dist_b_;
    return dist.cdf(current_cut(which));
  }

  MeasurementStep commit(Observable which, Outcome outcome, double p_yes) {
    const double probability = outcome == Outcome::yes ? p_yes : 1.0 - p_yes;

    state_ = std::make_pair(which, outcome);
    auto& recorded = which == Observable::A ? recorded_a_ : recorded_b_;
    if (!recorded) recorded = outcome;

    // Double transition: the partner's density narrows so its recorded
    // outcome is certain from the state just produced.
    auto& partner_recorded = which == Observable::A ? recorded_b_ : recorded_a_;
    if (partner_recorded) {
      PiecewiseDistribution& partner = which == Observable::A ? dist_b_ : dist_a_;
      const double cut_next = outcome == Outcome::yes ? params_.cos_theta : -params_.cos_theta;
      const TruncationSide side =
          *partner_recorded == Outcome::yes ? TruncationSide::below : TruncationSide::above;
      partner = truncate_renormalize(partner, cut_next, side);
    }

    const MeasurementStep step{which, outcome, probability};
    history_.push_back(step);
    return step;
  }

  ModelParams params_;
  PiecewiseDistribution dist_a_;
  PiecewiseDistribution dist_b_;
  std::optional<std::pair<Observable, Outcome>> state_;
  std::optional<Outcome> recorded_a_;
  std::optional<Outcome> recorded_b_;
  std::vector<MeasurementStep> history_;
};

// Run a whole label sequence from a fresh session; deterministic in
// (params, labels, seed).
inline std::vector<MeasurementStep> run_sequence(const ModelParams& params,
                                                 std::span<const Observable> labels,
                                                 std::uint64_t seed) {
  if (labels.empty()) throw validation_error("run_sequence: label list must be nonempty");
  Session session(params);
  Rng rng(seed);
  std::vector<MeasurementStep> transcript;
  transcript.reserve(labels.size());
  for (Observable w : labels) transcript.push_back(session.measure(w, rng));
  return transcript;
}

}  // namespace gtr
