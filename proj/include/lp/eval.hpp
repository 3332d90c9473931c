#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lp/graph.hpp"

namespace lp {

/// Per-query partition of neighbors (good) and non-neighbors (bad)
/// into train/test samples at fraction sigma.
struct QuerySplit {
  int q = -1;
  double sigma = 0.0;
  std::vector<int> trainGood, testGood;
  std::vector<int> trainBad, testBad;

  std::uint64_t hash() const;
};

/// Nodes eligible as queries: at least one neighbor and at least one
/// two-hop non-neighbor (a triangle-closing candidate).
std::vector<int> eligibleQueryNodes(const Graph& g);

/// Seeded uniform sample (without replacement) of up to `budget`
/// eligible nodes, returned in ascending id order.
/// Throws std::runtime_error when no node is eligible.
std::vector<int> sampleQueries(const Graph& g, int budget, std::uint64_t seed);

/// Samples ⌈σ|G(q)|⌉ train good and ⌈σ|B(q)|⌉ train bad nodes.
/// Returns nullopt (discard) when either test side would be empty.
std::optional<QuerySplit> splitEdges(const Graph& g, int q, double sigma,
                                     std::uint64_t seed);

/// The input graph minus every (q, t) edge with t in testGood(q).
Graph buildTrainingGraph(const Graph& g, const std::vector<QuerySplit>& splits);

/// Standard IR definitions over a ranked candidate list.
std::pair<double, double> precisionRecallAtK(const std::vector<int>& ranked,
                                             const std::unordered_set<int>& relevant,
                                             int k);

/// AvP = (1/L) Σ_k P(k) r(k) with L the number of relevant items in the list.
double averagePrecision(const std::vector<int>& ranked,
                        const std::unordered_set<int>& relevant);

/// Fraction of (good, bad) pairs scored in the correct order; ties 1/2.
double aucPairs(const std::vector<std::pair<int, double>>& scored,
                const std::unordered_set<int>& good,
                const std::unordered_set<int>& bad);

enum class BinAxis { Degree, Triangles };

/// Queries sorted by the axis statistic (ties by node id), split into
/// 6 contiguous buckets with sizes differing by at most one (remainder
/// goes to the leading buckets). Fewer than 6 queries collapse into a
/// single bucket.
std::vector<std::vector<int>> workloadBins(const std::vector<int>& queries,
                                           const Graph& g, BinAxis axis);

struct PerQueryMetrics {
  int q = -1;
  int degree = 0;
  long long triangles = 0;
  double avp = 0.0;
  double auc = 0.0;
  int poolSize = 0;
  int relevant = 0;
};

struct MetricsReport {
  std::vector<PerQueryMetrics> perQuery;
  double map = 0.0;
  double meanAuc = 0.0;
  std::vector<double> precisionAtK;  // index k-1; averaged over queries with pool >= k
  std::vector<double> recallAtK;
  std::vector<double> binMapDegree;     // 6 entries
  std::vector<double> binMapTriangles;  // 6 entries
  std::vector<std::pair<long long, long long>> binBoundsDegree;
  std::vector<std::pair<long long, long long>> binBoundsTriangles;

  void writeSummary(std::ostream& os) const;
  void writePerQueryTsv(std::ostream& os) const;
  void writePrCurveTsv(std::ostream& os) const;
  void writeBinsTsv(std::ostream& os, BinAxis axis) const;
};

/// Aggregates per-query ranked results into the full report.
/// rankedPerQuery[i] matches queries[i]; relevant sets are the test
/// goods. Queries come pre-filtered (non-empty test sides).
MetricsReport aggregateMetrics(const Graph& fullGraph, const std::vector<int>& queries,
                               const std::vector<std::vector<std::pair<int, double>>>& rankedPerQuery,
                               const std::vector<std::unordered_set<int>>& relevantPerQuery);

}  // namespace lp
