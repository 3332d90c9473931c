#pragma once

#include <unordered_map>
#include <vector>

#include "lp/graph.hpp"

namespace lp {

enum class NeighborWeighting { AdamicAdar, ResourceAllocation };

struct WalkParams {
  int t = 3;         // LRW/CRW horizon
  double beta = 0.05;  // Katz damping, must stay below 1/λ₁
  int l = 5;         // PropFlow depth
};

/// Σ over common neighbors k of 1/ln d(k) (AA) or 1/d(k) (RA).
/// Natural log; any common neighbor has d(k) >= 2 by construction.
double adamicAdar(const Graph& g, int u, int v,
                  NeighborWeighting variant = NeighborWeighting::AdamicAdar);

/// Largest eigenvalue of the adjacency matrix by power iteration.
double spectralRadius(const Graph& g, int iters = 100, double relTol = 1e-6);

/// Σ_{p=1..maxLen} β^p (A^p)_{uv} for all v, from an impulse at u.
/// Throws std::invalid_argument when beta >= 1/λ₁ (non-convergent).
std::vector<double> katzScoresFrom(const Graph& g, int u, double beta, int maxLen);
double katzScore(const Graph& g, int u, int v, double beta, int maxLen);

/// t-step uniform random-walk distribution from an impulse at u.
/// A node with no neighbors keeps its mass in place.
std::vector<double> walkDistribution(const Graph& g, int u, int t);

/// q_u π_u(t)[v] + q_v π_v(t)[u] with q_u = d(u)/(2M).
double lrwScore(const Graph& g, int u, int v, int t);

/// Σ_{τ=1..t} LRW(τ).
double crwScore(const Graph& g, int u, int v, int t);

/// CRW scores from u to every node at once. The uniform walk is
/// reversible w.r.t. the degree distribution (d(u) P^t[u,v] = d(v) P^t[v,u]),
/// so LRW(u,v) = 2 q_u π_u(t)[v] and one walk per source suffices.
std::vector<double> crwScoresFrom(const Graph& g, int u, int t);

/// Depth-limited breadth-first propagation of unit mass from source.
/// Each node first reached at depth d keeps its total inflow as score
/// and forwards it, split uniformly across strictly deeper neighbors.
/// The source itself is not scored.
std::unordered_map<int, double> propFlow(const Graph& g, int source, int maxDepth);

}  // namespace lp
