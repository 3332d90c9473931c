#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lp/graph.hpp"

namespace lp {

/// Row/column grouping of the adjacency matrix with per-block edge
/// counts. Densities are Laplace-smoothed, (e+1)/(n+2), so surprise
/// values stay finite.
struct CoclusterModel {
  int kRows = 0;
  int kCols = 0;
  std::uint64_t graphHash = 0;
  std::vector<int> rowGroup;
  std::vector<int> colGroup;
  std::vector<long long> blockEdges;  // kRows x kCols, row-major
  std::vector<long long> blockCells;

  long long edges(int r, int c) const { return blockEdges[static_cast<std::size_t>(r) * kCols + c]; }
  long long cells(int r, int c) const { return blockCells[static_cast<std::size_t>(r) * kCols + c]; }

  /// Smoothed density of the block containing matrix cell (u, v).
  double density(int u, int v) const;

  /// (-log2 d, -log2(1-d)): surprise of asserting the edge exists / is absent.
  std::pair<double, double> surprise(int u, int v) const;

  /// Total Bernoulli coding cost in bits, Σ_blocks n_b H(e_b / n_b).
  double codingCost() const;

  void save(std::ostream& os) const;
  static CoclusterModel load(std::istream& is);
};

/// Alternating single-row / single-column reassignment from a seeded
/// random start. Coding cost is non-increasing across sweeps; stops at
/// the first sweep with no move or after maxSweeps. When costTrace is
/// given it receives the cost after init and after every sweep.
CoclusterModel fitCocluster(const Graph& g, int kRows, int kCols, std::uint64_t seed,
                            int maxSweeps = 50, std::vector<double>* costTrace = nullptr);

/// Default group count heuristic: round(sqrt(N)) clamped to [2, 64].
int defaultGroupCount(int numNodes);

}  // namespace lp
