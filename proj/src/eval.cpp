#include "lp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "lp/rng.hpp"

namespace lp {

std::uint64_t QuerySplit::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 0x100000001b3ULL;
    h = splitmix64(h);
  };
  mix(static_cast<std::uint64_t>(q));
  std::uint64_t sigmaBits;
  static_assert(sizeof(sigmaBits) == sizeof(sigma));
  std::memcpy(&sigmaBits, &sigma, sizeof(sigmaBits));
  mix(sigmaBits);
  for (const auto* part : {&trainGood, &testGood, &trainBad, &testBad}) {
    mix(part->size());
    for (int x : *part) mix(static_cast<std::uint64_t>(x));
  }
  return h;
}

std::vector<int> eligibleQueryNodes(const Graph& g) {
  std::vector<int> eligible;
  std::vector<int> mark(g.numNodes(), -1);
  for (int u = 0; u < g.numNodes(); ++u) {
    auto nu = g.neighbors(u);
    if (nu.empty()) continue;
    mark[u] = u;
    for (int a : nu) mark[a] = u;
    bool found = false;
    for (int a : nu) {
      for (int b : g.neighbors(a)) {
        if (mark[b] != u) {  // two hops away, not u, not a neighbor
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) eligible.push_back(u);
  }
  return eligible;
}

std::vector<int> sampleQueries(const Graph& g, int budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("query budget must be >= 1");
  std::vector<int> eligible = eligibleQueryNodes(g);
  if (eligible.empty()) {
    throw std::runtime_error("no eligible query nodes (no open triads)");
  }
  if (budget >= static_cast<int>(eligible.size())) return eligible;
  Rng rng(seed);
  // partial Fisher-Yates for the first `budget` positions
  for (int i = 0; i < budget; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, eligible.size() - 1);
    std::swap(eligible[i], eligible[pick(rng)]);
  }
  eligible.resize(budget);
  std::sort(eligible.begin(), eligible.end());
  return eligible;
}

std::optional<QuerySplit> splitEdges(const Graph& g, int q, double sigma,
                                     std::uint64_t seed) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("sigma must lie in (0, 1)");
  }
  auto nq = g.neighbors(q);
  std::vector<int> good(nq.begin(), nq.end());
  std::vector<int> bad;
  bad.reserve(g.numNodes());
  {
    std::size_t gi = 0;
    for (int v = 0; v < g.numNodes(); ++v) {
      if (v == q) continue;
      if (gi < good.size() && good[gi] == v) {
        ++gi;
        continue;
      }
      bad.push_back(v);
    }
  }
  auto ceilFrac = [sigma](std::size_t n) {
    return static_cast<std::size_t>(std::ceil(sigma * static_cast<double>(n)));
  };
  const std::size_t nTrainGood = ceilFrac(good.size());
  const std::size_t nTrainBad = ceilFrac(bad.size());
  if (good.empty() || bad.empty() || nTrainGood == good.size() ||
      nTrainBad == bad.size()) {
    return std::nullopt;  // discard rule
  }

  Rng rng(seed);
  auto sampleSplit = [&rng](std::vector<int>& pool, std::size_t nTrain,
                            std::vector<int>& train, std::vector<int>& test) {
    for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    train.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(nTrain));
    test.assign(pool.begin() + static_cast<std::ptrdiff_t>(nTrain), pool.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
  };

  QuerySplit split;
  split.q = q;
  split.sigma = sigma;
  sampleSplit(good, nTrainGood, split.trainGood, split.testGood);
  sampleSplit(bad, nTrainBad, split.trainBad, split.testBad);
  return split;
}

Graph buildTrainingGraph(const Graph& g, const std::vector<QuerySplit>& splits) {
  std::vector<std::pair<int, int>> removed;
  for (const auto& s : splits) {
    for (int t : s.testGood) {
      removed.emplace_back(std::min(s.q, t), std::max(s.q, t));
    }
  }
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());

  std::vector<std::pair<int, int>> kept;
  kept.reserve(static_cast<std::size_t>(g.numEdges()));
  for (const auto& e : g.edgeList()) {
    if (!std::binary_search(removed.begin(), removed.end(), e)) kept.push_back(e);
  }
  return Graph::fromEdges(kept, g.numNodes());
}

std::pair<double, double> precisionRecallAtK(const std::vector<int>& ranked,
                                             const std::unordered_set<int>& relevant,
                                             int k) {
  if (k < 1 || k > static_cast<int>(ranked.size())) {
    throw std::invalid_argument("k must lie in [1, list length]");
  }
  if (relevant.empty()) {
    throw std::invalid_argument("empty relevant set; query should be excluded");
  }
  int hits = 0;
  for (int i = 0; i < k; ++i) {
    if (relevant.count(ranked[i])) ++hits;
  }
  return {static_cast<double>(hits) / k,
          static_cast<double>(hits) / static_cast<double>(relevant.size())};
}

double averagePrecision(const std::vector<int>& ranked,
                        const std::unordered_set<int>& relevant) {
  if (relevant.empty()) {
    throw std::invalid_argument("empty relevant set; query should be excluded");
  }
  int hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (relevant.count(ranked[k])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  if (hits == 0) return 0.0;
  return sum / static_cast<double>(hits);
}

double aucPairs(const std::vector<std::pair<int, double>>& scored,
                const std::unordered_set<int>& good,
                const std::unordered_set<int>& bad) {
  if (good.empty() || bad.empty()) {
    throw std::invalid_argument("auc needs non-empty good and bad sets");
  }
  std::vector<double> gs, bs;
  for (const auto& [v, s] : scored) {
    if (good.count(v)) gs.push_back(s);
    else if (bad.count(v)) bs.push_back(s);
  }
  if (gs.empty() || bs.empty()) {
    throw std::invalid_argument("scored list missing good or bad members");
  }
  double correct = 0.0;
  for (double g : gs) {
    for (double b : bs) {
      if (g > b) correct += 1.0;
      else if (g == b) correct += 0.5;
    }
  }
  return correct / (static_cast<double>(gs.size()) * static_cast<double>(bs.size()));
}

std::vector<std::vector<int>> workloadBins(const std::vector<int>& queries,
                                           const Graph& g, BinAxis axis) {
  std::vector<std::pair<long long, int>> keyed;
  keyed.reserve(queries.size());
  for (int q : queries) {
    long long stat = axis == BinAxis::Degree ? g.degree(q) : g.triangleCount(q);
    keyed.emplace_back(stat, q);
  }
  std::sort(keyed.begin(), keyed.end());
  if (queries.size() < 6) {
    std::cerr << "workload_bins: fewer than 6 queries; emitting a single bucket\n";
    std::vector<int> all;
    for (const auto& [s, q] : keyed) all.push_back(q);
    return {all};
  }
  const std::size_t n = keyed.size();
  const std::size_t base = n / 6, rem = n % 6;
  std::vector<std::vector<int>> buckets(6);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < 6; ++b) {
    std::size_t size = base + (b < rem ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) buckets[b].push_back(keyed[pos++].second);
  }
  return buckets;
}

MetricsReport aggregateMetrics(
    const Graph& fullGraph, const std::vector<int>& queries,
    const std::vector<std::vector<std::pair<int, double>>>& rankedPerQuery,
    const std::vector<std::unordered_set<int>>& relevantPerQuery) {
  if (queries.size() != rankedPerQuery.size() ||
      queries.size() != relevantPerQuery.size()) {
    throw std::invalid_argument("aggregate_metrics: size mismatch");
  }
  MetricsReport report;
  std::size_t maxPool = 0;
  for (const auto& r : rankedPerQuery) maxPool = std::max(maxPool, r.size());
  std::vector<double> pSum(maxPool, 0.0), rSum(maxPool, 0.0);
  std::vector<int> kCount(maxPool, 0);

  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& scored = rankedPerQuery[i];
    const auto& relevant = relevantPerQuery[i];
    std::vector<int> ranked;
    ranked.reserve(scored.size());
    for (const auto& [v, s] : scored) ranked.push_back(v);
    std::unordered_set<int> badSet;
    for (int v : ranked) {
      if (!relevant.count(v)) badSet.insert(v);
    }

    PerQueryMetrics m;
    m.q = queries[i];
    m.degree = fullGraph.degree(m.q);
    m.triangles = fullGraph.triangleCount(m.q);
    m.poolSize = static_cast<int>(ranked.size());
    m.relevant = static_cast<int>(relevant.size());
    m.avp = averagePrecision(ranked, relevant);
    m.auc = aucPairs(scored, relevant, badSet);
    report.perQuery.push_back(m);

    int hits = 0;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      if (relevant.count(ranked[k])) ++hits;
      pSum[k] += static_cast<double>(hits) / static_cast<double>(k + 1);
      rSum[k] += static_cast<double>(hits) / static_cast<double>(relevant.size());
      ++kCount[k];
    }
  }

  const std::size_t nq = report.perQuery.size();
  if (nq > 0) {
    for (const auto& m : report.perQuery) {
      report.map += m.avp;
      report.meanAuc += m.auc;
    }
    report.map /= static_cast<double>(nq);
    report.meanAuc /= static_cast<double>(nq);
  }
  report.precisionAtK.resize(maxPool);
  report.recallAtK.resize(maxPool);
  for (std::size_t k = 0; k < maxPool; ++k) {
    report.precisionAtK[k] = kCount[k] ? pSum[k] / kCount[k] : 0.0;
    report.recallAtK[k] = kCount[k] ? rSum[k] / kCount[k] : 0.0;
  }

  // per-bin MAP over both axes
  auto binify = [&](BinAxis axis, std::vector<double>& maps,
                    std::vector<std::pair<long long, long long>>& bounds) {
    std::vector<int> qs(queries.begin(), queries.end());
    auto buckets = workloadBins(qs, fullGraph, axis);
    std::unordered_map<int, double> avpByQuery;
    for (const auto& m : report.perQuery) avpByQuery[m.q] = m.avp;
    for (const auto& bucket : buckets) {
      double sum = 0.0;
      long long lo = std::numeric_limits<long long>::max(), hi = 0;
      for (int q : bucket) {
        sum += avpByQuery.at(q);
        long long stat = axis == BinAxis::Degree ? fullGraph.degree(q)
                                                 : fullGraph.triangleCount(q);
        lo = std::min(lo, stat);
        hi = std::max(hi, stat);
      }
      maps.push_back(bucket.empty() ? 0.0 : sum / static_cast<double>(bucket.size()));
      bounds.emplace_back(bucket.empty() ? 0 : lo, hi);
    }
  };
  if (nq > 0) {
    binify(BinAxis::Degree, report.binMapDegree, report.binBoundsDegree);
    binify(BinAxis::Triangles, report.binMapTriangles, report.binBoundsTriangles);
  }
  return report;
}

void MetricsReport::writeSummary(std::ostream& os) const {
  os.precision(17);
  os << "num_queries = " << perQuery.size() << '\n';
  os << "map = " << map << '\n';
  os << "mean_auc = " << meanAuc << '\n';
  for (std::size_t b = 0; b < binMapDegree.size(); ++b) {
    os << "bin_map_degree_" << b << " = " << binMapDegree[b] << '\n';
  }
  for (std::size_t b = 0; b < binMapTriangles.size(); ++b) {
    os << "bin_map_triangles_" << b << " = " << binMapTriangles[b] << '\n';
  }
}

void MetricsReport::writePerQueryTsv(std::ostream& os) const {
  os.precision(17);
  os << "query\tdegree\ttriangles\tavp\tauc\tpool\trelevant\n";
  for (const auto& m : perQuery) {
    os << m.q << '\t' << m.degree << '\t' << m.triangles << '\t' << m.avp << '\t'
       << m.auc << '\t' << m.poolSize << '\t' << m.relevant << '\n';
  }
}

void MetricsReport::writePrCurveTsv(std::ostream& os) const {
  os.precision(17);
  os << "k\tprecision\trecall\n";
  for (std::size_t k = 0; k < precisionAtK.size(); ++k) {
    os << (k + 1) << '\t' << precisionAtK[k] << '\t' << recallAtK[k] << '\n';
  }
}

void MetricsReport::writeBinsTsv(std::ostream& os, BinAxis axis) const {
  const auto& maps = axis == BinAxis::Degree ? binMapDegree : binMapTriangles;
  const auto& bounds = axis == BinAxis::Degree ? binBoundsDegree : binBoundsTriangles;
  os.precision(17);
  os << "bin\tstat_lo\tstat_hi\tmap\n";
  for (std::size_t b = 0; b < maps.size(); ++b) {
    os << b << '\t' << bounds[b].first << '\t' << bounds[b].second << '\t' << maps[b]
       << '\n';
  }
}

}  // namespace lp
