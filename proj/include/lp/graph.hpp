#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lp {

/// Immutable sparse undirected graph over dense node ids [0, N).
/// Adjacency is stored CSR-style with sorted neighbor lists, so
/// intersections are O(d1 + d2) and all outputs are deterministic.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list: symmetrizes, removes self-loops and
  /// duplicates. Throws std::out_of_range naming the offending pair
  /// if a node id falls outside [0, n).
  static Graph fromEdges(const std::vector<std::pair<int, int>>& edges, int n);

  /// Reads "u v" pairs, one per line; '#' starts a comment line.
  /// n < 0 infers node count as max id + 1.
  static Graph fromEdgeListFile(const std::string& path, int n = -1);

  int numNodes() const { return n_; }
  long long numEdges() const { return m_; }

  int degree(int u) const {
    checkNode(u);
    return static_cast<int>(offsets_[u + 1] - offsets_[u]);
  }

  std::span<const int> neighbors(int u) const {
    checkNode(u);
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }

  bool hasEdge(int u, int v) const;

  /// Sorted Γ(u) ∩ Γ(v). Requires u != v.
  std::vector<int> commonNeighbors(int u, int v) const;

  /// Number of unordered pairs {a,b} ⊆ Γ(u) with (a,b) an edge.
  long long triangleCount(int u) const;

  /// Edge list with u < v, sorted; round-trips bit-identically.
  std::vector<std::pair<int, int>> edgeList() const;
  void writeEdgeList(std::ostream& os) const;

  /// Stable content hash over (N, sorted edge list).
  std::uint64_t hash() const;

 private:
  void checkNode(int u) const;

  int n_ = 0;
  long long m_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<int> adj_;
};

}  // namespace lp
