#include "lp/local_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lp/simplex.hpp"

namespace lp {

namespace {

std::vector<int> neighborsWithout(const Graph& g, int u, int excluded) {
  auto nu = g.neighbors(u);
  std::vector<int> out;
  out.reserve(nu.size());
  for (int x : nu) {
    if (x != excluded) out.push_back(x);
  }
  return out;
}

// mean over A of |θ_u − θ_x|, accumulated into row (full dimension)
void addMeanAbsDiff(const NodeFeatureMatrix& f, int u, const std::vector<int>& group,
                    double scale, std::vector<double>& row) {
  auto tu = f.row(u);
  double inv = scale / static_cast<double>(group.size());
  for (int x : group) {
    auto tx = f.row(x);
    for (int j = 0; j < f.dim(); ++j) row[j] += inv * std::abs(tu[j] - tx[j]);
  }
}

}  // namespace

double setDissimilarity(std::span<const double> w, const NodeFeatureMatrix& features,
                        int u, std::span<const int> group) {
  if (group.empty()) return 0.0;
  if (static_cast<int>(w.size()) != features.dim()) {
    throw std::invalid_argument("weight length does not match feature dimension");
  }
  auto tu = features.row(u);
  double total = 0.0;
  for (int x : group) {
    auto tx = features.row(x);
    for (int j = 0; j < features.dim(); ++j) {
      total += w[j] * std::abs(tu[j] - tx[j]);
    }
  }
  return total / static_cast<double>(group.size());
}

LocalLpInstance buildLocalLp(const Graph& g, const NodeFeatureMatrix& features,
                             int u, int v, LocalMargins margins) {
  if (u == v) throw std::invalid_argument("local LP requires u != v");
  if (!(margins.alpha > 0.0 && margins.alpha <= 1.0 && margins.beta >= 1.0)) {
    throw std::invalid_argument("margins require 0 < alpha <= 1 <= beta");
  }
  const int dim = features.dim();

  auto gammaU = neighborsWithout(g, u, v);
  auto gammaV = neighborsWithout(g, v, u);
  std::vector<int> exclU, exclV;
  std::set_difference(gammaU.begin(), gammaU.end(), gammaV.begin(), gammaV.end(),
                      std::back_inserter(exclU));
  std::set_difference(gammaV.begin(), gammaV.end(), gammaU.begin(), gammaU.end(),
                      std::back_inserter(exclV));

  std::vector<double> cost(dim, 0.0);
  auto tu = features.row(u);
  auto tv = features.row(v);
  for (int j = 0; j < dim; ++j) cost[j] = std::abs(tu[j] - tv[j]);

  std::vector<std::vector<double>> rows;
  // Δ(u, Γ(u)∖Γ(v)) <= α Δ(u,v)  and  Δ(v, Γ(u)∖Γ(v)) >= β Δ(u,v)
  if (!exclU.empty()) {
    std::vector<double> r1(dim, 0.0), r4(dim, 0.0);
    addMeanAbsDiff(features, u, exclU, 1.0, r1);
    addMeanAbsDiff(features, v, exclU, -1.0, r4);
    for (int j = 0; j < dim; ++j) {
      r1[j] -= margins.alpha * cost[j];
      r4[j] += margins.beta * cost[j];
    }
    rows.push_back(std::move(r1));
    rows.push_back(std::move(r4));
  }
  // Δ(v, Γ(v)∖Γ(u)) <= α Δ(u,v)  and  Δ(u, Γ(v)∖Γ(u)) >= β Δ(u,v)
  if (!exclV.empty()) {
    std::vector<double> r2(dim, 0.0), r3(dim, 0.0);
    addMeanAbsDiff(features, v, exclV, 1.0, r2);
    addMeanAbsDiff(features, u, exclV, -1.0, r3);
    for (int j = 0; j < dim; ++j) {
      r2[j] -= margins.alpha * cost[j];
      r3[j] += margins.beta * cost[j];
    }
    rows.push_back(std::move(r2));
    rows.push_back(std::move(r3));
  }

  LocalLpInstance inst;
  inst.fullDim = dim;
  for (int j = 0; j < dim; ++j) {
    bool used = cost[j] != 0.0;
    for (const auto& r : rows) {
      if (used) break;
      used = r[j] != 0.0;
    }
    if (used) inst.support.push_back(j);
  }
  inst.cost.reserve(inst.support.size());
  for (int j : inst.support) inst.cost.push_back(cost[j]);
  inst.ineqRows.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> reduced;
    reduced.reserve(inst.support.size());
    for (int j : inst.support) reduced.push_back(r[j]);
    inst.ineqRows.push_back(std::move(reduced));
  }
  return inst;
}

LocalSolution solveLocalLp(const LocalLpInstance& inst) {
  LocalSolution sol;
  const int dim = inst.fullDim;
  if (dim == 0) throw std::invalid_argument("empty feature dimension");

  if (inst.support.empty()) {
    // zero cost and no active constraints: any simplex point is optimal
    sol.status = LocalSolution::Status::Optimal;
    sol.w.assign(dim, 1.0 / dim);
    sol.deltaUv = 0.0;
    return sol;
  }

  LpProblem prob;
  prob.c = inst.cost;
  prob.aUb = inst.ineqRows;
  prob.bUb.assign(inst.ineqRows.size(), 0.0);
  prob.aEq.push_back(std::vector<double>(inst.support.size(), 1.0));
  prob.bEq.push_back(1.0);

  LpResult res = solveSimplex(prob);
  if (res.status == LpResult::Status::Optimal) {
    sol.status = LocalSolution::Status::Optimal;
    sol.w.assign(dim, 0.0);
    for (std::size_t i = 0; i < inst.support.size(); ++i) {
      sol.w[inst.support[i]] = std::max(0.0, res.x[i]);
    }
    sol.deltaUv = res.objective;
  } else {
    sol.status = LocalSolution::Status::InfeasibleFallback;
    sol.w.assign(dim, 1.0 / dim);
    double delta = 0.0;
    for (double c : inst.cost) delta += c;
    sol.deltaUv = delta / dim;
  }
  return sol;
}

double llFeature(const Graph& g, const NodeFeatureMatrix& features, int u, int v,
                 LocalMargins margins) {
  LocalSolution sol = solveLocalLp(buildLocalLp(g, features, u, v, margins));
  auto common = g.commonNeighbors(u, v);
  double triangulated = setDissimilarity(sol.w, features, u, common) +
                        setDissimilarity(sol.w, features, v, common);
  return triangulated - sol.deltaUv;
}

}  // namespace lp
