#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lp/rng.hpp"
#include "lp/simplex.hpp"

using lp::LpProblem;
using lp::LpResult;
using lp::solveSimplex;

TEST_CASE("weight goes to the cheapest coordinate") {
  LpProblem p;
  p.c = {3.0, 1.0};
  p.aEq = {{1.0, 1.0}};
  p.bEq = {1.0};
  LpResult r = solveSimplex(p);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.x[0] == doctest::Approx(0.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("degenerate objective still reaches the common value") {
  LpProblem p;
  p.c = {1.0, 1.0};
  p.aEq = {{1.0, 1.0}};
  p.bEq = {1.0};
  LpResult r = solveSimplex(p);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("forced infeasibility is detected") {
  // x1 + x2 >= 2 cannot hold on the unit simplex
  LpProblem p;
  p.c = {1.0, 1.0};
  p.aUb = {{-1.0, -1.0}};
  p.bUb = {-2.0};
  p.aEq = {{1.0, 1.0}};
  p.bEq = {1.0};
  CHECK(solveSimplex(p).status == LpResult::Status::Infeasible);
}

TEST_CASE("inequality-only bounded problem") {
  LpProblem p;
  p.c = {-1.0, -1.0};
  p.aUb = {{1.0, 1.0}};
  p.bUb = {1.0};
  LpResult r = solveSimplex(p);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(-1.0));
}

TEST_CASE("equality with negative rhs is normalized internally") {
  LpProblem p;
  p.c = {1.0};
  p.aEq = {{-1.0}};
  p.bEq = {-2.0};
  LpResult r = solveSimplex(p);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.x[0] == doctest::Approx(2.0));
}

TEST_CASE("random simplex-constrained LPs: feasible and not beaten by sampling") {
  lp::Rng rng(321);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int optimalCount = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int rows = static_cast<int>(rng() % 4);
    LpProblem p;
    p.c.resize(n);
    for (double& x : p.c) x = unif(rng);
    p.aEq = {std::vector<double>(n, 1.0)};
    p.bEq = {1.0};
    for (int r = 0; r < rows; ++r) {
      std::vector<double> row(n);
      for (double& x : row) x = 2.0 * unif(rng) - 1.0;
      p.aUb.push_back(row);
      p.bUb.push_back(unif(rng));  // nonnegative rhs keeps some feasibility likely
    }
    LpResult r = solveSimplex(p);
    if (r.status != LpResult::Status::Optimal) continue;
    ++optimalCount;

    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      CHECK(r.x[j] >= -1e-9);
      sum += r.x[j];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 0; i < p.aUb.size(); ++i) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += p.aUb[i][j] * r.x[j];
      CHECK(lhs <= p.bUb[i] + 1e-8);
    }

    // sample feasible points on the simplex; none may beat the optimum
    std::exponential_distribution<double> expo(1.0);
    for (int s = 0; s < 300; ++s) {
      std::vector<double> x(n);
      double total = 0.0;
      for (double& xi : x) {
        xi = expo(rng);
        total += xi;
      }
      for (double& xi : x) xi /= total;
      bool feasible = true;
      for (std::size_t i = 0; i < p.aUb.size() && feasible; ++i) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += p.aUb[i][j] * x[j];
        feasible = lhs <= p.bUb[i];
      }
      if (!feasible) continue;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += p.c[j] * x[j];
      CHECK(obj >= r.objective - 1e-8);
    }
  }
  CHECK(optimalCount > 30);  // most random instances should be feasible
}
