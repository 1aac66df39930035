#pragma once

// Stochastic validation of the closed-form probabilities by direct
// simulation of the selection mechanism: draw a point from the density,
// answer yes when it falls below the cut.
//
// Sharding is by sample index, never by thread timing: shard s owns a
// contiguous block of indices and a substream seeded from (seed, s), so a
// report depends only on (params, order, n, seed, shards).

#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <vector>

#include "gtr/distributions.hpp"
#include "gtr/errors.hpp"
#include "gtr/model.hpp"
#include "gtr/rng.hpp"

namespace gtr {

inline Outcome sample_outcome(const PiecewiseDistribution& dist, double cut, Rng& rng) {
  if (cut < -1.0 || cut > 1.0) throw validation_error("sample: cut must be in [-1, 1]");
  return dist.quantile(rng.uniform01()) < cut ? Outcome::yes : Outcome::no;
}

struct EstimateReport {
  Order order = Order::AB;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned shards = 1;
  std::array<std::uint64_t, 4> counts{};     // yy, yn, ny, nn
  std::array<double, 4> estimates{};         // sum to 1 exactly
  std::array<double, 4> standard_errors{};   // sqrt(p(1-p)/n)
};

namespace detail {

inline std::array<std::uint64_t, 4> simulate_block(const PiecewiseDistribution& first,
                                                   const PiecewiseDistribution& second,
                                                   double first_cut, double cos_theta,
                                                   std::uint64_t count, std::uint64_t stream_seed) {
  Rng rng(stream_seed);
  std::array<std::uint64_t, 4> c{};
  for (std::uint64_t i = 0; i < count; ++i) {
    const bool first_yes = first.quantile(rng.uniform01()) < first_cut;
    const double second_cut = first_yes ? cos_theta : -cos_theta;
    const bool second_yes = second.quantile(rng.uniform01()) < second_cut;
    ++c[(first_yes ? 0u : 2u) + (second_yes ? 0u : 1u)];
  }
  return c;
}

}  // namespace detail

// n two-step runs of the given order. Estimates are the relative frequencies
// up to a couple of ulps, laid out so that the running left-to-right sum
// lands on cum_count/n at every position and on exactly 1 at the end.
inline EstimateReport estimate_sequential(const ModelParams& params, Order order, std::uint64_t n,
                                          std::uint64_t seed, unsigned shards = 1) {
  if (n < 1) throw validation_error("estimate: n must be at least 1");
  if (shards < 1) throw validation_error("estimate: shards must be at least 1");

  const PiecewiseDistribution dist_a = to_piecewise(params.dist_a());
  const PiecewiseDistribution dist_b = to_piecewise(params.dist_b());
  const bool a_first = order == Order::AB;
  const PiecewiseDistribution& first = a_first ? dist_a : dist_b;
  const PiecewiseDistribution& second = a_first ? dist_b : dist_a;
  const double first_cut = a_first ? params.cos_theta_a : params.cos_theta_b;

  std::vector<std::future<std::array<std::uint64_t, 4>>> jobs;
  jobs.reserve(shards);
  const std::uint64_t base = n / shards;
  const std::uint64_t rem = n % shards;
  for (unsigned s = 0; s < shards; ++s) {
    const std::uint64_t count = base + (s < rem ? 1 : 0);
    jobs.push_back(std::async(std::launch::async, [&, count, s] {
      return detail::simulate_block(first, second, first_cut, params.cos_theta, count,
                                    substream_seed(seed, s));
    }));
  }

  EstimateReport rep;
  rep.order = order;
  rep.n = n;
  rep.seed = seed;
  rep.shards = shards;
  for (auto& job : jobs) {
    const auto c = job.get();
    for (int k = 0; k < 4; ++k) rep.counts[k] += c[k];
  }

  // Aim each running sum at the cumulative frequency; the final target n/n
  // is exactly 1, a zero count contributes an exact zero, and each estimate
  // stays within a couple of ulps of count/n.
  std::uint64_t cum = 0;
  double running = 0.0;
  for (int k = 0; k < 4; ++k) {
    cum += rep.counts[k];
    const double target = static_cast<double>(cum) / static_cast<double>(n);
    rep.estimates[k] = std::max(0.0, target - running);
    running += rep.estimates[k];
  }
  for (int k = 0; k < 4; ++k) {
    const double p = rep.estimates[k];
    rep.standard_errors[k] = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
  }
  return rep;
}

}  // namespace gtr
