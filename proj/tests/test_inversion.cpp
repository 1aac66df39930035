#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gtr/bloch.hpp"
#include "gtr/datasets.hpp"
#include "gtr/hilbert.hpp"
#include "gtr/inversion.hpp"
#include "gtr/rng.hpp"

using namespace gtr;

namespace {

RatioSolution random_feasible_ratios(Rng& rng) {
  const double a = rng.uniform(-0.999, 0.999);
  const double b = rng.uniform(-0.999, 0.999);
  const double bp = rng.uniform(-0.999, 0.999);
  const double c = rng.uniform(-0.999, 0.999);
  const double ap = rng.uniform(-0.999, 0.999);
  const double app = rng.uniform(-0.999, 0.999);
  RatioSolution r;
  r.da_over_ea = 0.5 * (app - ap);
  r.costheta_over_ea = 0.5 * (app + ap);
  r.costhetaa_over_ea = a + r.da_over_ea;
  r.db_over_eb = 0.5 * (bp - b);
  r.costheta_over_eb = 0.5 * (b + bp);
  r.costhetab_over_eb = c + r.db_over_eb;
  return r;
}

void check_close(const RatioSolution& got, const RatioSolution& want, double tol) {
  CHECK(got.da_over_ea == Catch::Approx(want.da_over_ea).margin(tol));
  CHECK(got.costhetaa_over_ea == Catch::Approx(want.costhetaa_over_ea).margin(tol));
  CHECK(got.costheta_over_ea == Catch::Approx(want.costheta_over_ea).margin(tol));
  CHECK(got.db_over_eb == Catch::Approx(want.db_over_eb).margin(tol));
  CHECK(got.costhetab_over_eb == Catch::Approx(want.costhetab_over_eb).margin(tol));
  CHECK(got.costheta_over_eb == Catch::Approx(want.costheta_over_eb).margin(tol));
}

}  // namespace

TEST_CASE("Clinton/Gore fit matches the published ratio solution", "[inversion]") {
  const RatioSolution r = fit_ratios(find_builtin_dataset("clinton-gore")->to_table());
  check_close(r, {0.1545, 0.2237, 0.6316, -0.2961, 0.2271, 0.5367}, 5e-4);
}

TEST_CASE("Rose/Jackson fit matches the published ratio solution", "[inversion]") {
  const RatioSolution r = fit_ratios(find_builtin_dataset("rose-jackson")->to_table());
  check_close(r, {-0.0995, 0.2245, 0.6224, 0.4369, 0.4023, 0.4578}, 5e-4);
}

TEST_CASE("the symmetric table fits to zero ratios", "[inversion]") {
  const SequentialProbTable t{{0.25, 0.25, 0.25, 0.25}, {0.25, 0.25, 0.25, 0.25}};
  const RatioSolution r = fit_ratios(t);
  check_close(r, {}, 1e-15);
}

TEST_CASE("zero marginals make the fit degenerate", "[inversion]") {
  const SequentialProbTable t{{0.0, 0.0, 0.6, 0.4}, {0.25, 0.25, 0.25, 0.25}};
  CHECK_THROWS_AS(fit_ratios(t), degenerate_error);
  const SequentialProbTable t2{{0.25, 0.25, 0.25, 0.25}, {0.6, 0.4, 0.0, 0.0}};
  CHECK_THROWS_AS(fit_ratios(t2), degenerate_error);
}

TEST_CASE("concretization reproduces the published parameter sets", "[inversion]") {
  const RatioSolution cg = fit_ratios(find_builtin_dataset("clinton-gore")->to_table());
  const ModelParams p = concretize(cg, 0.5);
  CHECK(p.eps_b == Catch::Approx(0.59).margin(5e-3));
  CHECK(p.d_a == Catch::Approx(0.08).margin(5e-3));
  CHECK(p.d_b == Catch::Approx(-0.17).margin(5e-3));
  CHECK(p.cos_theta == Catch::Approx(0.32).margin(5e-3));
  CHECK(p.cos_theta_a == Catch::Approx(0.11).margin(5e-3));
  CHECK(p.cos_theta_b == Catch::Approx(0.13).margin(5e-3));

  const RatioSolution rj = fit_ratios(find_builtin_dataset("rose-jackson")->to_table());
  const ModelParams q = concretize(rj, 0.5);
  CHECK(q.eps_b == Catch::Approx(0.68).margin(5e-3));
  CHECK(q.d_a == Catch::Approx(-0.05).margin(5e-3));
  CHECK(q.d_b == Catch::Approx(0.30).margin(5e-3));
  CHECK(q.cos_theta == Catch::Approx(0.31).margin(5e-3));
  CHECK(q.cos_theta_a == Catch::Approx(0.11).margin(5e-3));
  CHECK(q.cos_theta_b == Catch::Approx(0.27).margin(5e-3));
}

TEST_CASE("zero ratios concretize to Born parameters", "[inversion]") {
  const ModelParams p = concretize({}, 1.0);
  CHECK(p.eps_a == 1.0);
  CHECK(p.d_a == 0.0);
  CHECK(p.eps_b == 1.0);  // eps_b = eps_a convention when cos_theta = 0
  CHECK(p.d_b == 0.0);
  CHECK(p.cos_theta_a == 0.0);
  CHECK(p.cos_theta == 0.0);
}

TEST_CASE("concretization failures name their constraint", "[inversion]") {
  const RatioSolution cg = fit_ratios(find_builtin_dataset("clinton-gore")->to_table());
  CHECK_THROWS_AS(concretize(cg, 0.9), infeasible_error);  // above the admissible upper bound
  CHECK_THROWS_AS(concretize(cg, 0.0), infeasible_error);
  CHECK_THROWS_AS(concretize(cg, 1.2), infeasible_error);

  RatioSolution inconsistent{};
  inconsistent.costheta_over_ea = 0.4;  // cos_theta != 0 on the A side, 0 on the B side
  CHECK_THROWS_AS(concretize(inconsistent, 0.5), infeasible_error);

  RatioSolution mirrored{};
  mirrored.costheta_over_eb = 0.4;  // forces eps_b = 0
  CHECK_THROWS_AS(concretize(mirrored, 0.5), infeasible_error);
}

TEST_CASE("round trip: ratios -> table -> ratios", "[inversion]") {
  Rng rng(101);
  for (int iter = 0; iter < 2000; ++iter) {
    const RatioSolution r = random_feasible_ratios(rng);
    const RatioSolution back = fit_ratios(table_from_ratios(r));
    check_close(back, r, 1e-12);
  }
}

TEST_CASE("round trip: table -> ratios -> table", "[inversion]") {
  Rng rng(103);
  for (int iter = 0; iter < 2000; ++iter) {
    FourProbs ab{rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0),
                 rng.uniform(0.01, 1.0)};
    FourProbs ba{rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0),
                 rng.uniform(0.01, 1.0)};
    const double sa = ab.sum();
    ab = {ab.yy / sa, ab.yn / sa, ab.ny / sa, ab.nn / sa};
    const double sb = ba.sum();
    ba = {ba.yy / sb, ba.yn / sb, ba.ny / sb, ba.nn / sb};
    const SequentialProbTable t{ab, ba};

    const SequentialProbTable back = table_from_ratios(fit_ratios(t));
    for (Order o : {Order::AB, Order::BA}) {
      CHECK(std::abs(back.order(o).yy - t.order(o).yy) <= 1e-12);
      CHECK(std::abs(back.order(o).yn - t.order(o).yn) <= 1e-12);
      CHECK(std::abs(back.order(o).ny - t.order(o).ny) <= 1e-12);
      CHECK(std::abs(back.order(o).nn - t.order(o).nn) <= 1e-12);
    }
  }
}

TEST_CASE("concretization induces the ratios it came from", "[inversion]") {
  Rng rng(105);
  int tested = 0;
  for (int iter = 0; iter < 2000 && tested < 500; ++iter) {
    const RatioSolution r = random_feasible_ratios(rng);
    const EpsilonInterval interval = admissible_epsilon_a_interval(r);
    if (interval.empty()) continue;
    const double e = interval.hi * rng.uniform(0.1, 1.0);
    const RatioSolution induced = concretize(r, e).ratios();
    check_close(induced, r, 1e-12);
    ++tested;
  }
  CHECK(tested == 500);
}

TEST_CASE("admissible interval matches a concretization sweep", "[inversion]") {
  const EpsilonInterval all = admissible_epsilon_a_interval({});
  CHECK(all.lo == 0.0);
  CHECK(all.hi == 1.0);

  const RatioSolution cg = fit_ratios(find_builtin_dataset("clinton-gore")->to_table());
  const EpsilonInterval icg = admissible_epsilon_a_interval(cg);
  CHECK(icg.contains(0.5));

  Rng rng(107);
  for (int iter = 0; iter < 50; ++iter) {
    const RatioSolution r = random_feasible_ratios(rng);
    const EpsilonInterval interval = admissible_epsilon_a_interval(r);
    for (int g = 1; g <= 200; ++g) {
      const double e = g / 200.0;
      bool ok = true;
      try {
        concretize(r, e);
      } catch (const infeasible_error&) {
        ok = false;
      }
      if (std::abs(e - interval.hi) > 1e-9)  // skip the boundary point itself
        CHECK(ok == interval.contains(e));
    }
  }
}

TEST_CASE("a large d ratio caps the admissible interval", "[inversion]") {
  RatioSolution r{};
  r.da_over_ea = 0.9;
  r.costheta_over_ea = 0.3;
  r.costheta_over_eb = 0.3;
  const EpsilonInterval interval = admissible_epsilon_a_interval(r);
  CHECK(interval.hi <= 1.0 / 1.9 + 1e-15);
  CHECK(interval.hi == Catch::Approx(1.0 / 1.9).margin(1e-12));
}

TEST_CASE("feasibility reports flag the Moore data as non-Born", "[inversion]") {
  for (const char* name : {"clinton-gore", "rose-jackson"}) {
    const RatioSolution r = fit_ratios(find_builtin_dataset(name)->to_table());
    const FeasibilityReport rep = feasibility_report(r);
    CHECK_FALSE(rep.born_compatible);
    CHECK_FALSE(rep.same_distribution_possible);
    CHECK(rep.admissible_eps_a.contains(0.5));
    for (const auto& c : rep.constraints) CHECK(c.pass);
  }
  const FeasibilityReport sym = feasibility_report({});
  CHECK(sym.born_compatible);
  CHECK(sym.same_distribution_possible);
}

TEST_CASE("the Clinton/Gore embedding reproduces all three cosines", "[inversion]") {
  const ModelParams p = concretize(fit_ratios(find_builtin_dataset("clinton-gore")->to_table()), 0.5);
  const BlochEmbedding emb = embed_bloch(p);
  CHECK(std::abs(emb.x_psi.dot(emb.a_y) - p.cos_theta_a) <= 1e-12);
  CHECK(std::abs(emb.x_psi.dot(emb.b_y) - p.cos_theta_b) <= 1e-12);
  CHECK(std::abs(emb.a_y.dot(emb.b_y) - p.cos_theta) <= 1e-12);
  CHECK(emb.x_psi.y >= 0.0);
}

TEST_CASE("embedding handles the aligned-state edge cases", "[inversion]") {
  const ModelParams aligned{1.0, 0.0, 1.0, 0.0, 1.0, 0.3, 0.3};
  const BlochEmbedding emb = embed_bloch(aligned);
  CHECK(emb.x_psi.x == Catch::Approx(0.0).margin(1e-12));
  CHECK(emb.x_psi.z == Catch::Approx(1.0).margin(1e-12));

  const ModelParams broken{1.0, 0.0, 1.0, 0.0, 1.0, 0.5, 0.3};
  CHECK_THROWS_AS(embed_bloch(broken), infeasible_error);
}

TEST_CASE("random geometries embed and reproduce their cosines", "[inversion]") {
  Rng rng(109);
  for (int iter = 0; iter < 1000; ++iter) {
    const BlochVector x = random_bloch_vector(rng);
    const BlochVector a = random_bloch_vector(rng);
    const BlochVector b = random_bloch_vector(rng);
    const ModelParams p{1.0, 0.0, 1.0, 0.0, x.dot(a), x.dot(b), a.dot(b)};
    const BlochEmbedding emb = embed_bloch(p);
    CHECK(std::abs(emb.x_psi.dot(emb.a_y) - p.cos_theta_a) <= 1e-12);
    CHECK(std::abs(emb.x_psi.dot(emb.b_y) - p.cos_theta_b) <= 1e-12);
    CHECK(std::abs(emb.a_y.dot(emb.b_y) - p.cos_theta) <= 1e-12);
  }
}
