#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gtr/hilbert.hpp"
#include "gtr/unpacking.hpp"

using namespace gtr;

TEST_CASE("additivity gaps classify on sign", "[unpacking]") {
  const auto additive = additivity_gap({0.6, 0.4}, {0.35, 0.25, 0.4});
  CHECK(additive.gap == Catch::Approx(0.0).margin(1e-12));
  CHECK(additive.classification == Additivity::additive);

  const auto super = additivity_gap({0.5, 0.5}, {0.2, 0.2, 0.6});
  CHECK(super.gap == Catch::Approx(0.1).margin(1e-12));
  CHECK(super.classification == Additivity::superadditive);

  const auto sub = additivity_gap({0.4, 0.6}, {0.3, 0.25, 0.45});
  CHECK(sub.gap == Catch::Approx(-0.15).margin(1e-12));
  CHECK(sub.classification == Additivity::subadditive);
}

TEST_CASE("swapping the packed label flips the gap", "[unpacking]") {
  Rng rng(8);
  for (int iter = 0; iter < 500; ++iter) {
    const double p_yes = rng.uniform(0.05, 0.95);
    const double yy = rng.uniform(0.0, 0.9) * (1.0 - 0.05);
    const double yn = rng.uniform(0.0, 1.0) * (1.0 - yy - 0.01);
    const PackedResult packed{p_yes, 1.0 - p_yes};
    const UnpackedResult unpacked{yy, yn, 1.0 - yy - yn};

    const double gap = additivity_gap(packed, unpacked).gap;
    // relabel: the aggregated unpacked pair becomes the packed result and a
    // (arbitrary) split of the old packed yes becomes the unpacked result
    const double w = rng.uniform01();
    const PackedResult swapped_packed{yy + yn, 1.0 - yy - yn};
    const UnpackedResult swapped_unpacked{w * p_yes, (1.0 - w) * p_yes, 1.0 - p_yes};
    const double swapped = additivity_gap(swapped_packed, swapped_unpacked).gap;
    CHECK(gap == Catch::Approx(-swapped).margin(1e-12));
  }
}

TEST_CASE("degenerate equality verdicts follow the tolerance", "[unpacking]") {
  CHECK(check_degenerate_equality({0.6, 0.4}, {0.35, 0.25, 0.4}, 1e-9));
  CHECK_FALSE(check_degenerate_equality({0.5, 0.5}, {0.2, 0.2, 0.6}, 1e-6));
}

TEST_CASE("coarse-graining a packed result always satisfies the equality", "[unpacking]") {
  Rng rng(9);
  for (int iter = 0; iter < 500; ++iter) {
    const double p_yes = rng.uniform(0.0, 1.0);
    const double w = rng.uniform01();
    const PackedResult packed{p_yes, 1.0 - p_yes};
    const UnpackedResult unpacked{w * p_yes, (1.0 - w) * p_yes, 1.0 - p_yes};
    CHECK(check_degenerate_equality(packed, unpacked, 1e-12));
  }
}

TEST_CASE("interference at 45 degrees carries half the weight", "[unpacking]") {
  const QubitState psi{1.0, 0.0};
  const Mat2 pa = Mat2::outer(psi);
  const double c = std::cos(0.25 * 3.14159265358979323846);
  const double s = std::sin(0.25 * 3.14159265358979323846);
  const Mat2 pb = Mat2::outer(QubitState{c, s});

  const auto dec = interference_decomposition(psi, pa, pb, Outcome::yes);
  CHECK(dec.direct_b_yes == Catch::Approx(0.25).margin(1e-12));
  CHECK(dec.direct_b_no == Catch::Approx(0.25).margin(1e-12));
  CHECK(dec.interference == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("identical projectors do not interfere", "[unpacking]") {
  Rng rng(10);
  for (int iter = 0; iter < 100; ++iter) {
    const QubitState psi = random_state(rng);
    const Mat2 p = random_projector(rng);
    const auto dec = interference_decomposition(psi, p, p, Outcome::yes);
    CHECK(std::abs(dec.interference) <= 1e-12);
  }
}

TEST_CASE("orthogonal axes push all weight into one direct term", "[unpacking]") {
  const QubitState psi{1.0, 0.0};
  const Mat2 pa = Mat2::outer(psi);
  const Mat2 pb = Mat2::outer(QubitState{0.0, 1.0});
  const auto dec = interference_decomposition(psi, pa, pb, Outcome::yes);
  CHECK(dec.direct_b_yes == Catch::Approx(0.0).margin(1e-12));
  CHECK(dec.direct_b_no == Catch::Approx(1.0).margin(1e-12));
  CHECK(dec.interference == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("the decomposition always reassembles the projector expectation", "[unpacking]") {
  Rng rng(11);
  for (int iter = 0; iter < 1000; ++iter) {
    const QubitState psi = random_state(rng);
    const Mat2 pa = random_projector(rng);
    const Mat2 pb = random_projector(rng);

    const auto yes = interference_decomposition(psi, pa, pb, Outcome::yes);
    const double p_a_yes = pa.expectation(psi).real();
    CHECK(std::abs(yes.direct_b_yes + yes.direct_b_no + yes.interference - p_a_yes) <= 1e-12);

    const auto no = interference_decomposition(psi, pa, pb, Outcome::no);
    CHECK(std::abs(yes.interference + no.interference) <= 1e-12);
  }
}

TEST_CASE("equal densities close the coarse-grained gap", "[unpacking]") {
  const LocallyUniformDistribution rho{0.5, 0.1};
  CHECK(gtr_unpacking_gap(0.2, rho, rho) == 0.0);
  const LocallyUniformDistribution born{1.0, 0.0};
  for (double c : {-0.5, 0.0, 0.25, 0.8}) CHECK(gtr_unpacking_gap(c, born, born) == 0.0);
}

TEST_CASE("density changes open the coarse-grained gap", "[unpacking]") {
  CHECK(gtr_unpacking_gap(0.25, {1.0, 0.0}, {0.5, 0.0}) == Catch::Approx(-0.125).margin(1e-12));
  CHECK(gtr_unpacking_gap(0.0, {0.5, -0.2}, {1.0, 0.0}) == Catch::Approx(0.2).margin(1e-12));
  CHECK_THROWS_AS(gtr_unpacking_gap(0.9, {0.5, 0.0}, {1.0, 0.0}), validation_error);
}

TEST_CASE("result types validate their probabilities", "[unpacking]") {
  CHECK_THROWS_AS(PackedResult(0.7, 0.4), validation_error);
  CHECK_THROWS_AS(PackedResult(-0.1, 1.1), validation_error);
  CHECK_THROWS_AS(UnpackedResult(0.5, 0.5, 0.5), validation_error);
  CHECK_NOTHROW(UnpackedResult(0.2, 0.3, 0.5));
}
