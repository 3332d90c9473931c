#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lp/dataset.hpp"
#include "lp/eval.hpp"
#include "lp/ranker.hpp"

namespace lp {

enum class Method { CCLL, LL, AA, RA, Katz, CRW, PropFlow };

Method methodFromString(const std::string& s);
std::string methodToString(Method m);
bool methodIsLearning(Method m);

/// Fully resolved benchmark run configuration. Defaults here, config
/// file overrides defaults, CLI flags override the config file.
struct RunConfig {
  // dataset
  std::string datasetKind = "synth";  // synth | citation | coview | edgelist
  std::string datasetName = "synth";
  std::string contentFile, citesFile;
  std::string ratingsFile, movieFeaturesFile;
  int minCommonViewers = 100;
  PlantedBlockParams synth;
  std::uint64_t synthSeed = 7;

  // method and feature layout
  Method method = Method::CCLL;
  bool ablateAA = false, ablateLL = false, ablateCC = false;
  bool quadratic = false;

  // protocol
  double sigma = 0.9;
  int queryBudget = 500;
  std::uint64_t masterSeed = 1;

  // local similarity margins
  LocalMargins margins;

  // co-clustering
  int coclusterK = 0;  // 0 = round(sqrt(N)) clamped to [2, 64]
  int coclusterSweeps = 50;
  std::string coclusterCacheDir;

  // baseline parameters
  int crwT = 3;
  double katzBeta = 0.0;  // 0 = 0.5 / lambda1 of the training graph
  int katzMaxLen = 6;
  int propflowDepth = 5;

  // ranker
  RankerHyper ranker;
  int trainBadCap = 0;  // 0 = keep every sampled train bad

  int threads = 1;
  std::string outputDir;

  FeatureConfig featureConfig() const;
  /// Flat key = value text of every resolved field; replayable.
  std::string resolvedText() const;
};

std::map<std::string, std::string> parseConfigFile(const std::string& path);
void applyConfigEntries(RunConfig& cfg, const std::map<std::string, std::string>& kv);

DatasetBundle loadDataset(const RunConfig& cfg);

/// Shared per-(dataset, sigma, seed) state: sampled queries, their
/// splits (discards already dropped), and the training graph.
struct PreparedProtocol {
  std::vector<QuerySplit> splits;
  Graph trainGraph;
  std::uint64_t splitsHash = 0;
};

PreparedProtocol prepareProtocol(const DatasetBundle& data, const RunConfig& cfg);

struct RunResult {
  std::string method;
  std::string featureLayout;
  MetricsReport report;
  double trainAuc = 0.0;  // learning methods only
  std::uint64_t splitsHash = 0;
};

/// Full pipeline: load, sample, split, train graph, co-cluster,
/// features, ranker, scoring, metrics. Writes artifacts into
/// cfg.outputDir when set; a stage failure removes partial outputs and
/// rethrows with a stage-tagged message.
RunResult runBenchmark(const RunConfig& cfg, const DatasetBundle* preloaded = nullptr);

/// Paired comparison: every config must share the dataset spec, master
/// seed, sigma, and query budget, so all methods see identical splits
/// (hash-checked). Expensive shared stages (splits, co-cluster, raw
/// feature assembly) run once.
std::vector<RunResult> runMatrix(const std::vector<RunConfig>& configs,
                                 const DatasetBundle* preloaded = nullptr);

}  // namespace lp
