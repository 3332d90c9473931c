#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lp/cocluster.hpp"
#include "lp/dataset.hpp"
#include "lp/graph.hpp"
#include "lp/rng.hpp"

using lp::CoclusterModel;
using lp::Graph;

TEST_CASE("single block recovers the global density") {
  Graph g = Graph::fromEdges({{0, 1}, {1, 2}, {2, 3}}, 4);
  CoclusterModel m = lp::fitCocluster(g, 1, 1, 7);
  CHECK(m.edges(0, 0) == 2 * g.numEdges());  // symmetric matrix nonzeros
  CHECK(m.cells(0, 0) == 16);
  CHECK(m.density(0, 1) == doctest::Approx((6.0 + 1.0) / (16.0 + 2.0)));
}

TEST_CASE("empty graph: every smoothed density is 1/(n+2)") {
  Graph g = Graph::fromEdges({}, 6);
  CoclusterModel m = lp::fitCocluster(g, 2, 2, 3);
  long long totalCells = 0;
  for (int r = 0; r < m.kRows; ++r) {
    for (int c = 0; c < m.kCols; ++c) {
      CHECK(m.edges(r, c) == 0);
      totalCells += m.cells(r, c);
    }
  }
  CHECK(totalCells == 36);
  CHECK(m.density(0, 0) ==
        doctest::Approx(1.0 / (m.cells(m.rowGroup[0], m.colGroup[0]) + 2.0)));
}

TEST_CASE("surprise values from fixed densities") {
  // build a model by hand to pin the formulas
  CoclusterModel m;
  m.kRows = m.kCols = 1;
  m.rowGroup = {0, 0};
  m.colGroup = {0, 0};
  m.blockCells = {2};
  m.blockEdges = {0};  // density (0+1)/(2+2) = 0.25
  auto [sExist, sAbsent] = m.surprise(0, 1);
  CHECK(sExist == doctest::Approx(2.0));
  CHECK(sAbsent == doctest::Approx(-std::log2(0.75)));

  m.blockCells = {2};
  m.blockEdges = {1};  // density 0.5
  auto [e2, a2] = m.surprise(0, 1);
  CHECK(e2 == doctest::Approx(1.0));
  CHECK(a2 == doctest::Approx(1.0));
}

TEST_CASE("surprise strictly positive and finite on a fitted model") {
  lp::PlantedBlockParams params;
  params.numGroups = 2;
  params.nodesPerGroup = 20;
  auto data = lp::synthPlantedBlocks(params, 5);
  CoclusterModel m = lp::fitCocluster(data.graph, 4, 4, 9);
  for (int u = 0; u < data.graph.numNodes(); ++u) {
    auto [sExist, sAbsent] = m.surprise(u, (u + 1) % data.graph.numNodes());
    CHECK(sExist > 0.0);
    CHECK(sAbsent > 0.0);
    CHECK(std::isfinite(sExist));
    CHECK(std::isfinite(sAbsent));
  }
}

TEST_CASE("coding cost is non-increasing across sweeps") {
  lp::PlantedBlockParams params;
  params.numGroups = 3;
  params.nodesPerGroup = 25;
  params.withinP = 0.6;
  params.acrossP = 0.08;
  auto data = lp::synthPlantedBlocks(params, 11);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<double> trace;
    lp::fitCocluster(data.graph, 5, 5, seed, 50, &trace);
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      CHECK(trace[i] <= trace[i - 1] + 1e-6);
    }
  }
}

TEST_CASE("planted 2x2 blocks are recovered for at least 8 of 10 seeds") {
  lp::PlantedBlockParams params;
  params.numGroups = 2;
  params.nodesPerGroup = 40;
  params.withinP = 0.9;
  params.acrossP = 0.1;
  int recovered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto data = lp::synthPlantedBlocks(params, 77);
    CoclusterModel m = lp::fitCocluster(data.graph, 2, 2, seed);
    // partition matches the plant up to relabeling: group pure in rows
    bool pure = true;
    for (int u = 0; u < 80 && pure; ++u) {
      pure = m.rowGroup[u] == m.rowGroup[lp::plantedGroupOf(u, 40) * 40];
    }
    if (pure && m.rowGroup[0] != m.rowGroup[40]) ++recovered;
  }
  CHECK(recovered >= 8);
}

TEST_CASE("fit is deterministic given graph, k and seed") {
  lp::PlantedBlockParams params;
  params.numGroups = 2;
  params.nodesPerGroup = 30;
  auto data = lp::synthPlantedBlocks(params, 4);
  CoclusterModel a = lp::fitCocluster(data.graph, 3, 3, 42);
  CoclusterModel b = lp::fitCocluster(data.graph, 3, 3, 42);
  CHECK(a.rowGroup == b.rowGroup);
  CHECK(a.colGroup == b.colGroup);
  CHECK(a.blockEdges == b.blockEdges);
  CHECK(a.codingCost() == b.codingCost());
}

TEST_CASE("model round-trips through the text serialization") {
  lp::PlantedBlockParams params;
  params.numGroups = 2;
  params.nodesPerGroup = 15;
  auto data = lp::synthPlantedBlocks(params, 2);
  CoclusterModel m = lp::fitCocluster(data.graph, 3, 3, 8);
  std::stringstream ss;
  m.save(ss);
  CoclusterModel back = CoclusterModel::load(ss);
  CHECK(back.kRows == m.kRows);
  CHECK(back.kCols == m.kCols);
  CHECK(back.graphHash == m.graphHash);
  CHECK(back.rowGroup == m.rowGroup);
  CHECK(back.colGroup == m.colGroup);
  CHECK(back.blockEdges == m.blockEdges);
  CHECK(back.blockCells == m.blockCells);
}

TEST_CASE("block counts account for the whole matrix") {
  lp::PlantedBlockParams params;
  params.numGroups = 3;
  params.nodesPerGroup = 12;
  auto data = lp::synthPlantedBlocks(params, 6);
  CoclusterModel m = lp::fitCocluster(data.graph, 4, 4, 3);
  long long edges = 0, cells = 0;
  for (int r = 0; r < m.kRows; ++r) {
    for (int c = 0; c < m.kCols; ++c) {
      edges += m.edges(r, c);
      cells += m.cells(r, c);
    }
  }
  long long n = data.graph.numNodes();
  CHECK(edges == 2 * data.graph.numEdges());
  CHECK(cells == n * n);
}

TEST_CASE("group count heuristic") {
  CHECK(lp::defaultGroupCount(1) == 2);
  CHECK(lp::defaultGroupCount(100) == 10);
  CHECK(lp::defaultGroupCount(2708) == 52);
  CHECK(lp::defaultGroupCount(20000) == 64);
}
