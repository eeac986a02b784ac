#include <numeric>
#include <vector>

#include "chainscreen/complete_info.hpp"
#include "chainscreen/errors.hpp"
#include "chainscreen/mechanism.hpp"
#include "chainscreen/solver.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace chainscreen;

TEST_CASE("check_ic") {
  CHECK(check_ic(PromisedUtility({0.8, 0.8, 2}), 0.0).pass);
  auto v = check_ic(PromisedUtility({1, 0.5}), 0.0);
  CHECK_FALSE(v.pass);
  CHECK(v.floor_ok);
  CHECK(v.monotonicity_violations == std::vector<std::size_t>{0});
  v = check_ic(PromisedUtility({-0.1, 0.2}), 0.0);
  CHECK_FALSE(v.pass);
  CHECK_FALSE(v.floor_ok);
  CHECK(v.monotonicity_violations.empty());
}

TEST_CASE("implement_allocation") {
  std::vector<Vertex> pts{{0, 1}, {1, 2}};
  Vertex o{0, 0};
  ValueSurface s({Frontier::from_points(pts)}, Frontier::from_points(std::span(&o, 1)));
  auto a = implement_allocation(s, 0, 0.25);
  REQUIRE(a.support.size() == 2);
  CHECK(a.support[0].weight == doctest::Approx(0.75));
  CHECK(a.support[1].weight == doctest::Approx(0.25));
  CHECK(a.v == 1.25);
  CHECK(a.v == eval_surface(s, 0, 0.25));
  double mixed_u = a.support[0].weight * a.support[0].point.u + a.support[1].weight * a.support[1].point.u;
  CHECK(mixed_u == 0.25);

  a = implement_allocation(s, 0, 1.0);
  REQUIRE(a.support.size() == 1);
  CHECK(a.support[0].weight == 1.0);
  CHECK(a.support[0].point == Vertex{1, 2});

  try {
    implement_allocation(s, 0, 1.5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasiblePromise);
  }
}

TEST_CASE("solve_dp output is incentive compatible") {
  auto sc = fixtures::e1();
  auto prof = complete_info_curve(sc.surface);
  CHECK(check_ic(solve_dp(sc, prof).promise, prof.ubar).pass);
}

TEST_CASE("rationalize by distribution") {
  std::vector<double> inc{0, 1, 2};
  auto w = rationalize_by_distribution(inc, PromisedUtility(inc));
  for (double x : w) CHECK(x == doctest::Approx(1.0 / 3));

  std::vector<double> uc{1, 0, 2};
  w = rationalize_by_distribution(uc, PromisedUtility({0.8, 0.8, 2}));
  CHECK(w == std::vector<double>{0, 0, 1});

  auto sc = fixtures::e1();
  sc.chain = sc.chain.with_weights(w);
  auto sol = solve_dp(sc, complete_info_curve(sc.surface));
  CHECK(sol.promise[2] == 2.0);

  std::vector<double> dec{2, 1, 0};
  try {
    rationalize_by_distribution(dec, PromisedUtility({1.5, 1.5, 1.5}));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACandidate);
  }
  CHECK_THROWS_AS(rationalize_by_distribution(uc, PromisedUtility({1, 0.5, 2})), Error);
}

TEST_CASE("rationalize by technology") {
  std::vector<double> inc{0, 1, 2};
  std::vector<double> w(3, 1.0 / 3);
  auto s = rationalize_by_technology(inc, PromisedUtility(inc), w);
  CHECK(validate_nesting(s).empty());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.frontier(i).quadratic_params().curvature == 1.0);
    CHECK(s.frontier(i).peak() == inc[i]);
  }
  Scenario sc{TypeChain::uniform({1, 2, 3}), s, uniform_grid(0, 2, 8), {}};
  CHECK(solve_dp(sc, complete_info_curve(sc.surface)).promise.values() == inc);

  std::vector<double> uc{1, 0, 2};
  PromisedUtility cand({0.8, 0.8, 2});
  s = rationalize_by_technology(uc, cand, w);
  CHECK(validate_nesting(s).empty());
  CHECK(s.frontier(0).quadratic_params().curvature == 0.0);
  CHECK(s.frontier(1).quadratic_params().curvature == 0.0);
  CHECK(s.frontier(2).quadratic_params().curvature == 1.0);
  Scenario sc2{TypeChain::uniform({1, 2, 3}), s, uniform_grid(0, 2, 10), {}};
  auto sol = solve_dp(sc2, complete_info_curve(sc2.surface));
  CHECK(sol.promise[2] == 2.0);
  CHECK(sol.value == doctest::Approx(objective(sc2, cand)));

  auto one = rationalize_by_technology(std::vector<double>{0.4}, PromisedUtility({0.4}), std::vector<double>{1.0});
  CHECK(one.size() == 1);
  CHECK(one.frontier(0).peak() == 0.4);
}
