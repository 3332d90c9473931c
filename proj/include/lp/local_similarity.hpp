#pragma once

#include <span>
#include <vector>

#include "lp/feature_matrix.hpp"
#include "lp/graph.hpp"

namespace lp {

/// Margin parameters for the per-pair dissimilarity program.
/// Requires 0 < alpha <= 1 <= beta.
struct LocalMargins {
  double alpha = 0.8;
  double beta = 1.2;
};

/// Per-pair linear program in the weight vector w:
///   minimize cost·w  with  Σ w = 1, w >= 0
/// and up to four homogeneous margin rows (ineqRows·w <= 0), one per
/// non-empty exclusive-neighbor set. Assembled on the reduced support
/// (feature coordinates where the cost or any row is nonzero); the
/// remaining coordinates are pinned to zero weight.
struct LocalLpInstance {
  std::vector<int> support;                 // original feature coordinates
  std::vector<double> cost;                 // |θ_u − θ_v| on support
  std::vector<std::vector<double>> ineqRows;  // each row: a·w <= 0
  int fullDim = 0;
};

struct LocalSolution {
  enum class Status { Optimal, InfeasibleFallback };
  Status status = Status::InfeasibleFallback;
  std::vector<double> w;  // full-dimension weights, w >= 0, Σ w = 1
  double deltaUv = 0.0;   // w · |θ_u − θ_v|
};

/// Δ_w(u, A) = (1/|A|) Σ_{v∈A} w·|θ_u − θ_v|; 0 for empty A.
double setDissimilarity(std::span<const double> w, const NodeFeatureMatrix& features,
                        int u, std::span<const int> group);

/// Constraint system for pair (u, v): exclusive-neighbor rows at margins
/// alpha/beta, with the edge (u, v) excluded from neighborhood
/// computation when present. Empty defining sets contribute no row.
LocalLpInstance buildLocalLp(const Graph& g, const NodeFeatureMatrix& features,
                             int u, int v, LocalMargins margins);

/// Minimizes cost·w on the instance; infeasible or stalled instances
/// fall back to uniform weights over the full feature dimension.
LocalSolution solveLocalLp(const LocalLpInstance& inst);

/// f(u,v)[LL]: triangulated dissimilarity through common neighbors
/// minus the optimized direct dissimilarity δ_uv.
double llFeature(const Graph& g, const NodeFeatureMatrix& features, int u, int v,
                 LocalMargins margins);

}  // namespace lp
