#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gtr/datasets.hpp"
#include "gtr/inversion.hpp"
#include "gtr/montecarlo.hpp"

using namespace gtr;

namespace {

ModelParams dataset_params(const char* name) {
  return concretize(fit_ratios(find_builtin_dataset(name)->to_table()), 0.5);
}

}  // namespace

TEST_CASE("sampling the Born density splits evenly at zero", "[montecarlo]") {
  const PiecewiseDistribution born({-1.0, 1.0}, {0.5});
  Rng rng(5);
  int yes = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    if (sample_outcome(born, 0.0, rng) == Outcome::yes) ++yes;
  CHECK(std::abs(yes / static_cast<double>(n) - 0.5) <= 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("a cut at the top of the segment always answers yes", "[montecarlo]") {
  const PiecewiseDistribution born({-1.0, 1.0}, {0.5});
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) CHECK(sample_outcome(born, 1.0, rng) == Outcome::yes);
  CHECK_THROWS_AS(sample_outcome(born, 1.5, rng), validation_error);
}

TEST_CASE("the fitted A marginal is recovered at a million draws", "[montecarlo]") {
  const ModelParams params = dataset_params("clinton-gore");
  const PiecewiseDistribution rho_a = to_piecewise(params.dist_a());
  Rng rng(7);
  std::uint64_t yes = 0;
  const std::uint64_t n = 1000000;
  for (std::uint64_t i = 0; i < n; ++i)
    if (sample_outcome(rho_a, params.cos_theta_a, rng) == Outcome::yes) ++yes;
  CHECK(std::abs(yes / static_cast<double>(n) - 0.5346) <= 3.0 * 0.0005);
}

TEST_CASE("sequential estimates settle on the closed form", "[montecarlo]") {
  const ModelParams params = dataset_params("clinton-gore");
  for (Order order : {Order::AB, Order::BA}) {
    const FourProbs expect = probabilities_from_params(params, order);
    const EstimateReport rep = estimate_sequential(params, order, 1000000, 42, 1);
    const double probs[4] = {expect.yy, expect.yn, expect.ny, expect.nn};
    for (int k = 0; k < 4; ++k) {
      const double sigma = std::sqrt(probs[k] * (1.0 - probs[k]) / 1e6);
      CHECK(std::abs(rep.estimates[k] - probs[k]) <= 4.0 * sigma);
    }
  }
}

TEST_CASE("an eigenstate start is noiseless", "[montecarlo]") {
  const ModelParams eigen{1.0, 0.0, 0.5, 0.0, 1.0, 0.1, 0.2};
  const EstimateReport rep = estimate_sequential(eigen, Order::AB, 10000, 3, 2);
  CHECK(rep.counts[2] == 0);
  CHECK(rep.counts[3] == 0);
  CHECK(rep.estimates[0] + rep.estimates[1] == 1.0);
  CHECK(rep.standard_errors[2] == 0.0);
  CHECK(rep.standard_errors[3] == 0.0);
}

TEST_CASE("identical seeds and shard counts give identical reports", "[montecarlo]") {
  const ModelParams params = dataset_params("rose-jackson");
  for (unsigned shards : {1u, 3u, 8u}) {
    const EstimateReport a = estimate_sequential(params, Order::AB, 100001, 99, shards);
    const EstimateReport b = estimate_sequential(params, Order::AB, 100001, 99, shards);
    CHECK(a.counts == b.counts);
    CHECK(a.estimates == b.estimates);
    CHECK(a.standard_errors == b.standard_errors);
  }
}

TEST_CASE("estimates sum to exactly one even for awkward sample counts", "[montecarlo]") {
  const ModelParams params = dataset_params("clinton-gore");
  for (std::uint64_t n : {3ull, 7ull, 999ull, 12345ull}) {
    const EstimateReport rep = estimate_sequential(params, Order::BA, n, 1, 2);
    CHECK(rep.estimates[0] + rep.estimates[1] + rep.estimates[2] + rep.estimates[3] == 1.0);
    std::uint64_t total = 0;
    for (auto c : rep.counts) total += c;
    CHECK(total == n);
  }
}

TEST_CASE("shards partition the sample count, not the statistics", "[montecarlo]") {
  const ModelParams params = dataset_params("clinton-gore");
  // different shard counts are different (documented) streams, but both must
  // land within Monte Carlo error of the same truth
  const FourProbs expect = probabilities_from_params(params, Order::AB);
  for (unsigned shards : {1u, 5u}) {
    const EstimateReport rep = estimate_sequential(params, Order::AB, 400000, 17, shards);
    for (int k = 0; k < 4; ++k) {
      const double p = k == 0 ? expect.yy : k == 1 ? expect.yn : k == 2 ? expect.ny : expect.nn;
      CHECK(std::abs(rep.estimates[k] - p) <= 5.0 * std::sqrt(p * (1.0 - p) / 400000.0));
    }
  }
}

TEST_CASE("estimate rejects empty runs", "[montecarlo]") {
  const ModelParams params = dataset_params("clinton-gore");
  CHECK_THROWS_AS(estimate_sequential(params, Order::AB, 0, 1, 1), validation_error);
  CHECK_THROWS_AS(estimate_sequential(params, Order::AB, 10, 1, 0), validation_error);
}
