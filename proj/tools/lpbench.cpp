// lpbench: benchmark driver for the link-prediction toolkit.
//
//   lpbench run      one method on one dataset, full protocol
//   lpbench matrix   several configs paired on identical splits
//   lpbench cocluster  fit and save a co-clustering of an edge list
//   lpbench score    score explicit (u, v) pairs with a saved model
//   lpbench metrics  recompute the report from a scored-pairs TSV

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "lp/bench.hpp"
#include "lp/cocluster.hpp"
#include "lp/rng.hpp"

namespace {

struct CommonOpts {
  std::string configPath;
  std::vector<std::string> sets;
};

void addCommon(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.configPath, "key = value config file");
  cmd->add_option("--set", opts.sets, "override, key=value (repeatable)");
}

std::map<std::string, std::string> parseOverrides(const std::vector<std::string>& sets) {
  std::map<std::string, std::string> kv;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value, got: " + s);
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return kv;
}

lp::RunConfig buildConfig(const CommonOpts& opts) {
  lp::RunConfig cfg;
  if (!opts.configPath.empty()) lp::applyConfigEntries(cfg, lp::parseConfigFile(opts.configPath));
  lp::applyConfigEntries(cfg, parseOverrides(opts.sets));
  return cfg;
}

void printResult(const lp::RunResult& r) {
  std::cout << "method = " << r.method << '\n';
  std::cout << "feature_layout = " << r.featureLayout << '\n';
  std::cout << "splits_hash = " << r.splitsHash << '\n';
  if (r.method == "CCLL") std::cout << "train_auc = " << r.trainAuc << '\n';
  r.report.writeSummary(std::cout);
}

int cmdRun(const CommonOpts& opts) {
  lp::RunConfig cfg = buildConfig(opts);
  lp::RunResult result = lp::runBenchmark(cfg);
  printResult(result);
  return 0;
}

int cmdMatrix(const CommonOpts& opts, const std::vector<std::string>& runs) {
  lp::RunConfig base = buildConfig(opts);
  std::vector<lp::RunConfig> configs;
  for (const auto& spec : runs) {
    // "name:key=value,key=value" — name becomes the output subdirectory
    auto colon = spec.find(':');
    std::string name = colon == std::string::npos ? spec : spec.substr(0, colon);
    lp::RunConfig c = base;
    if (colon != std::string::npos) {
      std::map<std::string, std::string> kv;
      std::istringstream is(spec.substr(colon + 1));
      std::string tok;
      while (std::getline(is, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--run override needs key=value: " + tok);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      lp::applyConfigEntries(c, kv);
    }
    if (!base.outputDir.empty()) c.outputDir = base.outputDir + "/" + name;
    configs.push_back(std::move(c));
  }
  auto results = lp::runMatrix(configs);
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i) std::cout << '\n';
    std::cout << "--- " << runs[i] << " ---\n";
    printResult(results[i]);
  }
  return 0;
}

int cmdCocluster(const std::string& edgesPath, int k, std::uint64_t seed, int sweeps,
                 const std::string& outPath, bool trace) {
  lp::Graph g = lp::Graph::fromEdgeListFile(edgesPath);
  if (k <= 0) k = lp::defaultGroupCount(g.numNodes());
  std::vector<double> costs;
  lp::CoclusterModel model = lp::fitCocluster(g, k, k, seed, sweeps, trace ? &costs : nullptr);
  if (trace) {
    for (std::size_t i = 0; i < costs.size(); ++i) {
      std::cout << "sweep " << i << " cost_bits " << costs[i] << '\n';
    }
  }
  std::cout << "k = " << k << "\ncoding_cost_bits = " << model.codingCost() << '\n';
  if (!outPath.empty()) {
    std::ofstream out(outPath);
    if (!out) throw std::runtime_error("cannot write " + outPath);
    model.save(out);
    std::cout << "saved " << outPath << '\n';
  }
  return 0;
}

int cmdScore(const CommonOpts& opts, const std::string& modelPath,
             const std::string& coclusterPath, const std::vector<std::string>& pairArgs) {
  lp::RunConfig cfg = buildConfig(opts);
  lp::DatasetBundle data = lp::loadDataset(cfg);

  std::ifstream min(modelPath);
  if (!min) throw std::runtime_error("cannot open model: " + modelPath);
  lp::RankModel model = lp::RankModel::load(min);

  lp::CoclusterModel cocluster;
  const lp::CoclusterModel* ccPtr = nullptr;
  if (!coclusterPath.empty()) {
    std::ifstream cin_(coclusterPath);
    if (!cin_) throw std::runtime_error("cannot open cocluster model: " + coclusterPath);
    cocluster = lp::CoclusterModel::load(cin_);
    ccPtr = &cocluster;
  }
  if (model.config.useCC && !ccPtr) {
    throw std::runtime_error("model uses co-cluster features; pass --cocluster");
  }

  lp::FeatureAssembler assembler(data.graph, data.features, ccPtr, cfg.margins,
                                 model.config);
  auto scoreOne = [&](int u, int v) {
    std::cout << u << '\t' << v << '\t' << model.score(assembler.assemble(u, v)) << '\n';
  };
  if (pairArgs.empty()) {
    int u, v;  // pairs on stdin, one "u v" per line
    while (std::cin >> u >> v) scoreOne(u, v);
  } else {
    if (pairArgs.size() % 2 != 0) throw CLI::ValidationError("pairs come as u v u v ...");
    for (std::size_t i = 0; i + 1 < pairArgs.size(); i += 2) {
      scoreOne(std::stoi(pairArgs[i]), std::stoi(pairArgs[i + 1]));
    }
  }
  return 0;
}

int cmdMetrics(const CommonOpts& opts, const std::string& scoredPath) {
  // rows: q \t v \t score \t label(0/1); grouping by q
  lp::RunConfig cfg = buildConfig(opts);
  lp::DatasetBundle data = lp::loadDataset(cfg);

  std::ifstream in(scoredPath);
  if (!in) throw std::runtime_error("cannot open " + scoredPath);
  std::map<int, std::vector<std::pair<int, double>>> scoredByQ;
  std::map<int, std::unordered_set<int>> relevantByQ;
  int q, v, label;
  double score;
  while (in >> q >> v >> score >> label) {
    scoredByQ[q].emplace_back(v, score);
    if (label) relevantByQ[q].insert(v);
  }
  if (scoredByQ.empty()) throw std::runtime_error("no rows in " + scoredPath);

  std::vector<int> queries;
  std::vector<std::vector<std::pair<int, double>>> ranked;
  std::vector<std::unordered_set<int>> relevant;
  for (auto& [qq, list] : scoredByQ) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    queries.push_back(qq);
    ranked.push_back(std::move(list));
    relevant.push_back(std::move(relevantByQ[qq]));
  }
  lp::MetricsReport report = lp::aggregateMetrics(data.graph, queries, ranked, relevant);
  report.writeSummary(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link-prediction benchmark toolkit"};
  app.require_subcommand(1);

  CommonOpts runOpts;
  auto* run = app.add_subcommand("run", "run one benchmark config");
  addCommon(run, runOpts);

  CommonOpts matrixOpts;
  std::vector<std::string> matrixRuns;
  auto* matrix = app.add_subcommand("matrix", "paired runs on shared splits");
  addCommon(matrix, matrixOpts);
  matrix->add_option("--run", matrixRuns, "name:key=value,... (repeatable)")->required();

  std::string ccEdges, ccOut;
  int ccK = 0, ccSweeps = 50;
  std::uint64_t ccSeed = 1;
  bool ccTrace = false;
  auto* cocluster = app.add_subcommand("cocluster", "fit a co-clustering of an edge list");
  cocluster->add_option("--edges", ccEdges, "edge list file, 'u v' per line")->required();
  cocluster->add_option("--k", ccK, "group count (0 = sqrt heuristic)");
  cocluster->add_option("--seed", ccSeed, "init seed");
  cocluster->add_option("--sweeps", ccSweeps, "max sweeps");
  cocluster->add_option("--out", ccOut, "model output path");
  cocluster->add_flag("--trace", ccTrace, "print per-sweep coding cost");

  CommonOpts scoreOpts;
  std::string scoreModel, scoreCocluster;
  std::vector<std::string> scorePairs;
  auto* score = app.add_subcommand("score", "score (u, v) pairs with a saved model");
  addCommon(score, scoreOpts);
  score->add_option("--model", scoreModel, "saved ranking model")->required();
  score->add_option("--cocluster", scoreCocluster, "saved co-cluster model");
  score->add_option("pairs", scorePairs, "u v u v ... (stdin when omitted)");

  CommonOpts metricsOpts;
  std::string metricsScored;
  auto* metrics = app.add_subcommand("metrics", "recompute the report from scored pairs");
  addCommon(metrics, metricsOpts);
  metrics->add_option("--scored", metricsScored, "TSV: q v score label")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmdRun(runOpts);
    if (matrix->parsed()) return cmdMatrix(matrixOpts, matrixRuns);
    if (cocluster->parsed()) return cmdCocluster(ccEdges, ccK, ccSeed, ccSweeps, ccOut, ccTrace);
    if (score->parsed()) return cmdScore(scoreOpts, scoreModel, scoreCocluster, scorePairs);
    if (metrics->parsed()) return cmdMetrics(metricsOpts, metricsScored);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
