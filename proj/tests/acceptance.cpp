// Acceptance gate: one pass/fail line per criterion, nonzero exit on
// any failure.
//
// Criteria 4 and 7-12 need citation-style corpora. When LP_DATA_DIR is
// set and holds <name>.content / <name>.cites files for webkb, cora and
// citeseer, those are used. Otherwise the suite generates three
// citation-format stand-in corpora (planted-block graphs with binary
// keyword features, written to disk and read back through the corpus
// loader) so the gate runs self-contained. Band criteria are ordering
// and tolerance checks averaged over 5 master seeds, not exact paper
// numbers.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lp/baselines.hpp"
#include "lp/bench.hpp"
#include "lp/cocluster.hpp"
#include "lp/dataset.hpp"
#include "lp/eval.hpp"
#include "lp/graph.hpp"
#include "lp/local_similarity.hpp"
#include "lp/ranker.hpp"
#include "lp/rng.hpp"

namespace fs = std::filesystem;
using lp::Graph;

namespace {

int failures = 0;

void criterion(int n, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

Graph randomGraph(int n, double p, lp::Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.emplace_back(u, v);
  return Graph::fromEdges(edges, n);
}

// ---- criterion 1: AA/RA vs brute-force triple loop --------------------

void checkAdamicAdar() {
  lp::Rng rng(1001);
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    int n = 4 + static_cast<int>(rng() % 12);
    Graph g = randomGraph(n, 0.35, rng);
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) {
        double aa = 0.0, ra = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k != u && k != v && g.hasEdge(u, k) && g.hasEdge(v, k)) {
            aa += 1.0 / std::log(static_cast<double>(g.degree(k)));
            ra += 1.0 / g.degree(k);
          }
        }
        ok = std::abs(lp::adamicAdar(g, u, v) - aa) <= 1e-12 * std::max(1.0, aa) &&
             std::abs(lp::adamicAdar(g, u, v,
                                     lp::NeighborWeighting::ResourceAllocation) -
                      ra) <= 1e-12 * std::max(1.0, ra);
      }
    }
  }
  criterion(1, ok, "AA/RA match the brute-force oracle on 200 random graphs");
}

// ---- criterion 2: Katz vs dense inversion ------------------------------

std::vector<std::vector<double>> denseKatz(const Graph& g, double beta) {
  int n = g.numNodes();
  std::vector<std::vector<double>> m(n, std::vector<double>(2 * n, 0.0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 1.0;
    m[i][n + i] = 1.0;
    for (int j : g.neighbors(i)) m[i][j] -= beta;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    std::swap(m[col], m[pivot]);
    double d = m[col][col];
    for (int j = 0; j < 2 * n; ++j) m[col][j] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0.0) continue;
      double f = m[r][col];
      for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j] - (i == j ? 1.0 : 0.0);
  return out;
}

void checkKatz() {
  lp::Rng rng(1002);
  bool ok = true;
  int tested = 0;
  while (tested < 60) {
    int n = 3 + static_cast<int>(rng() % 4);
    Graph g = randomGraph(n, 0.5, rng);
    if (g.numEdges() == 0) continue;
    ++tested;
    double beta = 0.5 / lp::spectralRadius(g);
    auto closed = denseKatz(g, beta);
    for (int u = 0; u < n && ok; ++u) {
      auto truncated = lp::katzScoresFrom(g, u, beta, 30);
      for (int v = 0; v < n && ok; ++v) {
        ok = std::abs(truncated[v] - closed[u][v]) <= 1e-8;
      }
    }
    if (!ok) break;
  }
  criterion(2, ok, "truncated Katz matches dense (I-bA)^-1 - I within 1e-8");
}

// ---- criterion 3: CRW vs walk enumeration ------------------------------

void enumerateWalks(const Graph& g, int node, int stepsLeft, double prob,
                    std::vector<double>& out) {
  if (stepsLeft == 0) {
    out[node] += prob;
    return;
  }
  auto nbrs = g.neighbors(node);
  if (nbrs.empty()) {
    out[node] += prob;
    return;
  }
  for (int next : nbrs) enumerateWalks(g, next, stepsLeft - 1, prob / nbrs.size(), out);
}

void checkCrw() {
  lp::Rng rng(1003);
  bool ok = true;
  int tested = 0;
  while (tested < 40 && ok) {
    int n = 3 + static_cast<int>(rng() % 6);
    Graph g = randomGraph(n, 0.4, rng);
    if (g.numEdges() == 0) continue;
    ++tested;
    double twoM = 2.0 * g.numEdges();
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) {
        double cumulative = 0.0;
        for (int t = 1; t <= 3 && ok; ++t) {
          std::vector<double> pu(n, 0.0), pv(n, 0.0);
          enumerateWalks(g, u, t, 1.0, pu);
          enumerateWalks(g, v, t, 1.0, pv);
          cumulative += g.degree(u) / twoM * pu[v] + g.degree(v) / twoM * pv[u];
          ok = std::abs(lp::crwScore(g, u, v, t) - cumulative) <= 1e-12;
        }
      }
    }
  }
  criterion(3, ok, "CRW equals the path-enumeration oracle for t<=3");
}

// ---- corpora -----------------------------------------------------------

struct Corpus {
  std::string name;
  std::string contentFile, citesFile;
};

void writeStandIn(const std::string& dir, const std::string& name,
                  const lp::PlantedBlockParams& params, std::uint64_t seed,
                  Corpus& out) {
  auto bundle = lp::synthPlantedBlocks(params, seed, name);
  out.name = name;
  out.contentFile = dir + "/" + name + ".content";
  out.citesFile = dir + "/" + name + ".cites";
  std::ofstream content(out.contentFile);
  for (int u = 0; u < bundle.graph.numNodes(); ++u) {
    content << 'n' << u;
    for (double x : bundle.features.row(u)) content << ' ' << static_cast<int>(x);
    content << " g" << lp::plantedGroupOf(u, params.nodesPerGroup) << '\n';
  }
  std::ofstream cites(out.citesFile);
  for (auto [u, v] : bundle.graph.edgeList()) cites << 'n' << u << " n" << v << '\n';
}

std::vector<Corpus> prepareCorpora() {
  if (const char* dir = std::getenv("LP_DATA_DIR")) {
    std::vector<Corpus> real;
    for (const char* name : {"webkb", "cora", "citeseer"}) {
      Corpus c;
      c.name = name;
      c.contentFile = std::string(dir) + "/" + name + ".content";
      c.citesFile = std::string(dir) + "/" + name + ".cites";
      real.push_back(c);
    }
    if (fs::exists(real[0].contentFile) && fs::exists(real[1].contentFile) &&
        fs::exists(real[2].contentFile)) {
      std::printf("using corpora from LP_DATA_DIR\n");
      return real;
    }
    std::printf("LP_DATA_DIR set but corpora missing; using stand-ins\n");
  }
  std::string dir = (fs::temp_directory_path() / "lp_acceptance_corpora").string();
  fs::create_directories(dir);
  std::vector<Corpus> corpora(3);
  lp::PlantedBlockParams p;

  p.numGroups = 6;
  p.nodesPerGroup = 40;
  p.withinP = 0.30;
  p.acrossP = 0.02;
  p.featureDim = 60;
  p.featureNoise = 0.05;
  writeStandIn(dir, "webkb-sim", p, 101, corpora[0]);

  p.numGroups = 8;
  p.nodesPerGroup = 40;
  p.withinP = 0.25;
  p.acrossP = 0.02;
  p.featureDim = 80;
  writeStandIn(dir, "cora-sim", p, 102, corpora[1]);

  p.numGroups = 8;
  p.nodesPerGroup = 45;
  p.withinP = 0.24;
  p.acrossP = 0.015;
  p.featureDim = 100;
  writeStandIn(dir, "citeseer-sim", p, 103, corpora[2]);
  return corpora;
}

// ---- criterion 4: LP validity on corpus pairs --------------------------

void checkLpValidity(const lp::DatasetBundle& corpus) {
  lp::Rng rng(1004);
  std::exponential_distribution<double> expo(1.0);
  const Graph& g = corpus.graph;
  bool ok = true;
  int optimalSeen = 0;
  for (int trial = 0; trial < 500 && ok; ++trial) {
    int u = static_cast<int>(rng() % g.numNodes());
    int v = static_cast<int>(rng() % g.numNodes());
    if (u == v) {
      --trial;
      continue;
    }
    auto inst = lp::buildLocalLp(g, corpus.features, u, v, lp::LocalMargins{});
    auto sol = lp::solveLocalLp(inst);
    double wsum = std::accumulate(sol.w.begin(), sol.w.end(), 0.0);
    ok = std::abs(wsum - 1.0) <= 1e-9;
    if (!ok || sol.status != lp::LocalSolution::Status::Optimal) continue;
    ++optimalSeen;
    for (const auto& row : inst.ineqRows) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < inst.support.size(); ++j)
        lhs += row[j] * sol.w[inst.support[j]];
      if (lhs > 1e-9) ok = false;
    }
    if (inst.support.empty()) continue;
    for (int s = 0; s < 1000 && ok; ++s) {
      std::vector<double> w(inst.support.size());
      double total = 0.0;
      for (double& x : w) {
        x = expo(rng);
        total += x;
      }
      for (double& x : w) x /= total;
      bool feasible = true;
      for (const auto& row : inst.ineqRows) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) lhs += row[j] * w[j];
        if (lhs > 0.0) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      double obj = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) obj += inst.cost[j] * w[j];
      if (obj < sol.deltaUv - 1e-9) ok = false;
    }
  }
  std::ostringstream d;
  d << "local LPs valid and unbeaten by sampling on 500 pairs (" << optimalSeen
    << " optimal)";
  criterion(4, ok && optimalSeen > 0, d.str());
}

// ---- criterion 5: co-clustering ----------------------------------------

void checkCocluster() {
  lp::PlantedBlockParams params;
  params.numGroups = 2;
  params.nodesPerGroup = 40;
  params.withinP = 0.9;
  params.acrossP = 0.1;
  auto data = lp::synthPlantedBlocks(params, 2026);
  bool monotone = true;
  int recovered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::vector<double> trace;
    auto m = lp::fitCocluster(data.graph, 2, 2, seed, 50, &trace);
    for (std::size_t i = 1; i < trace.size(); ++i)
      if (trace[i] > trace[i - 1] + 1e-6) monotone = false;
    bool pure = true;
    for (int u = 0; u < 80 && pure; ++u)
      pure = m.rowGroup[u] == m.rowGroup[lp::plantedGroupOf(u, 40) * 40];
    if (pure && m.rowGroup[0] != m.rowGroup[40]) ++recovered;
  }
  std::ostringstream d;
  d << "coding cost monotone; planted blocks recovered for " << recovered
    << "/10 seeds";
  criterion(5, monotone && recovered >= 8, d.str());
}

// ---- criterion 6: MAP oracle -------------------------------------------

double avpOracle(const std::vector<int>& ranked, const std::unordered_set<int>& relevant) {
  double total = 0.0;
  int hits = 0;
  for (std::size_t k = 1; k <= ranked.size(); ++k) {
    int prefixHits = 0;
    for (std::size_t i = 0; i < k; ++i) prefixHits += relevant.count(ranked[i]);
    if (relevant.count(ranked[k - 1])) {
      total += static_cast<double>(prefixHits) / k;
      ++hits;
    }
  }
  return hits ? total / hits : 0.0;
}

void checkMapOracle() {
  lp::Rng rng(1006);
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    int n = 2 + static_cast<int>(rng() % 25);
    std::vector<int> ranked(n);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::shuffle(ranked.begin(), ranked.end(), rng);
    std::unordered_set<int> relevant;
    int numRel = 1 + static_cast<int>(rng() % n);
    for (int i = 0; i < numRel; ++i) relevant.insert(static_cast<int>(rng() % n));
    ok = lp::averagePrecision(ranked, relevant) == avpOracle(ranked, relevant);
  }
  // perfect ranking scores exactly 1
  std::vector<int> perfect = {7, 8, 9, 1, 2};
  ok = ok && lp::averagePrecision(perfect, {7, 8, 9}) == 1.0;
  criterion(6, ok, "average precision equals the prefix-enumeration oracle");
}

// ---- criterion 7: ranker sanity ----------------------------------------

void checkRankerSanity(const lp::DatasetBundle& corpus) {
  // AA-only model with positive weight reproduces the raw AA order
  lp::FeatureConfig fc;
  fc.useLL = false;
  fc.useCC = false;
  lp::RankModel model;
  model.config = fc;
  model.standardizer.mean = {0.0};
  model.standardizer.stddev = {1.0};
  model.nu = {1.0};
  const Graph& g = corpus.graph;
  lp::FeatureAssembler assembler(g, corpus.features, nullptr, lp::LocalMargins{}, fc);
  auto queries = lp::sampleQueries(g, 120, 9);
  bool ok = true;
  for (int q : queries) {
    std::vector<int> candidates;
    for (int v = 0; v < g.numNodes(); ++v)
      if (v != q) candidates.push_back(v);
    auto ranked = lp::scoreAndRank(model, assembler, q, candidates);
    std::vector<std::pair<int, double>> aa;
    for (int v : candidates) aa.emplace_back(v, lp::adamicAdar(g, q, v));
    std::sort(aa.begin(), aa.end(), [](const auto& l, const auto& r) {
      if (l.second != r.second) return l.second > r.second;
      return l.first < r.first;
    });
    for (std::size_t i = 0; i < aa.size() && ok; ++i)
      ok = ranked[i].first == aa[i].first;
    if (!ok) break;
  }

  // separable synthetic training pools
  std::vector<lp::QueryTrainingSet> sets(4);
  for (int q = 0; q < 4; ++q) {
    sets[q].q = q;
    for (int i = 0; i < 10; ++i) {
      sets[q].good.push_back({1.0 + 0.02 * i, 0.0, 0.2, 0.2});
      sets[q].bad.push_back({0.0, 1.0 + 0.02 * i, 0.2, 0.2});
    }
  }
  lp::TrainStats stats;
  lp::trainPairwiseRanker(sets, lp::FeatureConfig{}, lp::RankerHyper{}, &stats);
  criterion(7, ok && stats.trainAuc >= 0.99,
            "AA-only ranking matches raw AA on every query; separable AUC >= 0.99");
}

// ---- criteria 8-12: paired benchmark bands ------------------------------

struct SeedOutcome {
  double ccll09 = 0, quad09 = 0, ablLL = 0, ablCC = 0, ablAA = 0;
  double aa09 = 0, crw09 = 0;
  double ccll08 = 0, crw08 = 0;
  std::string mapLine09;  // every sigma=0.9 MAP, full precision
};

lp::RunConfig corpusConfig(const Corpus& corpus, std::uint64_t seed) {
  lp::RunConfig cfg;
  cfg.datasetKind = "citation";
  cfg.datasetName = corpus.name;
  cfg.contentFile = corpus.contentFile;
  cfg.citesFile = corpus.citesFile;
  cfg.masterSeed = seed;
  cfg.queryBudget = 100;
  cfg.threads = 4;
  cfg.trainBadCap = 100;
  cfg.ranker.epochs = 15;
  cfg.ranker.triplesPerEpoch = 100000;
  return cfg;
}

SeedOutcome runSeed(const lp::DatasetBundle& data, const Corpus& corpus,
                    std::uint64_t seed) {
  lp::RunConfig base = corpusConfig(corpus, seed);

  std::vector<lp::RunConfig> grid09;
  grid09.push_back(base);  // CCLL full
  lp::RunConfig quad = base;
  quad.quadratic = true;
  grid09.push_back(quad);
  lp::RunConfig noLL = base;
  noLL.ablateLL = true;
  grid09.push_back(noLL);
  lp::RunConfig noCC = base;
  noCC.ablateCC = true;
  grid09.push_back(noCC);
  lp::RunConfig noAA = base;
  noAA.ablateAA = true;
  grid09.push_back(noAA);
  lp::RunConfig aa = base;
  aa.method = lp::Method::AA;
  grid09.push_back(aa);
  lp::RunConfig crw = base;
  crw.method = lp::Method::CRW;
  grid09.push_back(crw);
  auto r09 = lp::runMatrix(grid09, &data);

  lp::RunConfig base08 = base;
  base08.sigma = 0.8;
  lp::RunConfig crw08 = base08;
  crw08.method = lp::Method::CRW;
  auto r08 = lp::runMatrix({base08, crw08}, &data);

  SeedOutcome out;
  out.ccll09 = r09[0].report.map;
  out.quad09 = r09[1].report.map;
  out.ablLL = r09[2].report.map;
  out.ablCC = r09[3].report.map;
  out.ablAA = r09[4].report.map;
  out.aa09 = r09[5].report.map;
  out.crw09 = r09[6].report.map;
  out.ccll08 = r08[0].report.map;
  out.crw08 = r08[1].report.map;
  std::ostringstream line;
  line.precision(17);
  for (const auto& r : r09) line << r.method << ':' << r.featureLayout << '='
                                 << r.report.map << ' ';
  out.mapLine09 = line.str();
  return out;
}

template <typename Get>
double seedMean(const std::vector<SeedOutcome>& seeds, Get get) {
  double s = 0.0;
  for (const auto& o : seeds) s += get(o);
  return s / seeds.size();
}

void checkBenchmarkBands(const std::vector<Corpus>& corpora) {
  const std::vector<std::uint64_t> masterSeeds = {1, 2, 3, 4, 5};
  std::vector<std::vector<SeedOutcome>> all;  // per corpus, per seed
  std::vector<lp::DatasetBundle> bundles;
  for (const auto& corpus : corpora) {
    bundles.push_back(lp::loadCitationCorpus(corpus.contentFile, corpus.citesFile,
                                             corpus.name));
  }
  for (std::size_t c = 0; c < corpora.size(); ++c) {
    std::vector<SeedOutcome> seeds;
    for (std::uint64_t s : masterSeeds) seeds.push_back(runSeed(bundles[c], corpora[c], s));
    all.push_back(std::move(seeds));
  }

  // criterion 8: CCLL beats AA and CRW; margin >= 0.03 on >= 2 corpora
  bool beatsAll = true;
  int marginWins = 0;
  std::ostringstream d8;
  d8.precision(4);
  for (std::size_t c = 0; c < all.size(); ++c) {
    double ccll = seedMean(all[c], [](const SeedOutcome& o) { return o.ccll09; });
    double aa = seedMean(all[c], [](const SeedOutcome& o) { return o.aa09; });
    double crw = seedMean(all[c], [](const SeedOutcome& o) { return o.crw09; });
    if (!(ccll > aa && ccll > crw)) beatsAll = false;
    double margin = std::min(ccll - aa, ccll - crw);
    if (margin >= 0.03) ++marginWins;
    d8 << corpora[c].name << "(CCLL=" << ccll << ",AA=" << aa << ",CRW=" << crw
       << ") ";
  }
  criterion(8, beatsAll && marginWins >= 2, d8.str());

  // criterion 9: sigma robustness
  bool bounded = true;
  int degradationWins = 0;
  std::ostringstream d9;
  d9.precision(4);
  for (std::size_t c = 0; c < all.size(); ++c) {
    double ccll09 = seedMean(all[c], [](const SeedOutcome& o) { return o.ccll09; });
    double ccll08 = seedMean(all[c], [](const SeedOutcome& o) { return o.ccll08; });
    double crw09 = seedMean(all[c], [](const SeedOutcome& o) { return o.crw09; });
    double crw08 = seedMean(all[c], [](const SeedOutcome& o) { return o.crw08; });
    if (!(ccll08 >= ccll09 - 0.08)) bounded = false;
    if (ccll09 - ccll08 < crw09 - crw08) ++degradationWins;
    d9 << corpora[c].name << "(dCCLL=" << ccll09 - ccll08 << ",dCRW=" << crw09 - crw08
       << ") ";
  }
  criterion(9, bounded && degradationWins >= 2, d9.str());

  // criterion 10: full model within 0.01 of every two-block ablation
  bool ablationOk = true;
  std::ostringstream d10;
  d10.precision(4);
  for (std::size_t c = 0; c < all.size(); ++c) {
    double full = seedMean(all[c], [](const SeedOutcome& o) { return o.ccll09; });
    double worst = std::max({seedMean(all[c], [](const SeedOutcome& o) { return o.ablLL; }),
                             seedMean(all[c], [](const SeedOutcome& o) { return o.ablCC; }),
                             seedMean(all[c], [](const SeedOutcome& o) { return o.ablAA; })});
    if (!(full >= worst - 0.01)) ablationOk = false;
    d10 << corpora[c].name << "(full=" << full << ",bestAblation=" << worst << ") ";
  }
  criterion(10, ablationOk, d10.str());

  // criterion 11: linear vs quadratic side by side; resolved configs
  // differ only in the feature-layout field
  lp::RunConfig lin = corpusConfig(corpora[0], 1);
  lp::RunConfig quad = lin;
  quad.quadratic = true;
  std::istringstream la(lin.resolvedText()), lb(quad.resolvedText());
  std::string sa, sb;
  int differing = 0;
  bool onlyLayout = true;
  while (std::getline(la, sa) && std::getline(lb, sb)) {
    if (sa != sb) {
      ++differing;
      if (sa.rfind("feature_layout", 0) != 0) onlyLayout = false;
    }
  }
  std::ostringstream d11;
  d11.precision(4);
  for (std::size_t c = 0; c < all.size(); ++c) {
    d11 << corpora[c].name << "(linear="
        << seedMean(all[c], [](const SeedOutcome& o) { return o.ccll09; })
        << ",quadratic="
        << seedMean(all[c], [](const SeedOutcome& o) { return o.quad09; }) << ") ";
  }
  criterion(11, differing == 1 && onlyLayout, d11.str());

  // criterion 12: replay seed 1 on every corpus, MAPs identical to the
  // last emitted digit
  bool deterministic = true;
  for (std::size_t c = 0; c < corpora.size(); ++c) {
    SeedOutcome replay = runSeed(bundles[c], corpora[c], masterSeeds[0]);
    if (replay.mapLine09 != all[c][0].mapLine09) deterministic = false;
  }
  criterion(12, deterministic, "replayed runs reproduce every MAP digit");
}

}  // namespace

int main() {
  checkAdamicAdar();
  checkKatz();
  checkCrw();

  auto corpora = prepareCorpora();
  auto coraLike = lp::loadCitationCorpus(corpora[1].contentFile, corpora[1].citesFile,
                                         corpora[1].name);
  checkLpValidity(coraLike);
  checkCocluster();
  checkMapOracle();
  checkRankerSanity(coraLike);
  checkBenchmarkBands(corpora);

  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
