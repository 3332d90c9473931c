#include "lp/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lp/baselines.hpp"
#include "lp/cocluster.hpp"
#include "lp/local_similarity.hpp"
#include "lp/rng.hpp"

namespace fs = std::filesystem;

namespace lp {

Method methodFromString(const std::string& s) {
  if (s == "CCLL") return Method::CCLL;
  if (s == "LL") return Method::LL;
  if (s == "AA") return Method::AA;
  if (s == "RA") return Method::RA;
  if (s == "Katz") return Method::Katz;
  if (s == "CRW") return Method::CRW;
  if (s == "PropFlow") return Method::PropFlow;
  throw std::invalid_argument("unknown method: " + s);
}

std::string methodToString(Method m) {
  switch (m) {
    case Method::CCLL: return "CCLL";
    case Method::LL: return "LL";
    case Method::AA: return "AA";
    case Method::RA: return "RA";
    case Method::Katz: return "Katz";
    case Method::CRW: return "CRW";
    case Method::PropFlow: return "PropFlow";
  }
  throw std::logic_error("unreachable");
}

bool methodIsLearning(Method m) { return m == Method::CCLL; }

FeatureConfig RunConfig::featureConfig() const {
  FeatureConfig fc;
  fc.useAA = !ablateAA;
  fc.useLL = !ablateLL;
  fc.useCC = !ablateCC;
  fc.quadratic = quadratic;
  return fc;
}

std::string RunConfig::resolvedText() const {
  std::ostringstream os;
  os.precision(17);
  os << "alpha = " << margins.alpha << '\n';
  os << "beta = " << margins.beta << '\n';
  os << "cocluster.cache_dir = " << coclusterCacheDir << '\n';
  os << "cocluster.k = " << coclusterK << '\n';
  os << "cocluster.sweeps = " << coclusterSweeps << '\n';
  os << "crw.t = " << crwT << '\n';
  os << "dataset.cites = " << citesFile << '\n';
  os << "dataset.content = " << contentFile << '\n';
  os << "dataset.kind = " << datasetKind << '\n';
  os << "dataset.min_common_viewers = " << minCommonViewers << '\n';
  os << "dataset.movie_features = " << movieFeaturesFile << '\n';
  os << "dataset.name = " << datasetName << '\n';
  os << "dataset.ratings = " << ratingsFile << '\n';
  os << "feature_layout = "
     << (methodIsLearning(method) ? featureConfig().layoutString() : std::string("n/a"))
     << '\n';
  os << "katz.beta = " << katzBeta << '\n';
  os << "katz.max_len = " << katzMaxLen << '\n';
  os << "master_seed = " << masterSeed << '\n';
  os << "method = " << methodToString(method) << '\n';
  os << "output_dir = " << outputDir << '\n';
  os << "propflow.depth = " << propflowDepth << '\n';
  os << "query_budget = " << queryBudget << '\n';
  os << "ranker.epochs = " << ranker.epochs << '\n';
  os << "ranker.lambda = " << ranker.lambda << '\n';
  os << "ranker.triples_per_epoch = " << ranker.triplesPerEpoch << '\n';
  os << "sigma = " << sigma << '\n';
  os << "synth.across_p = " << synth.acrossP << '\n';
  os << "synth.feature_dim = " << synth.featureDim << '\n';
  os << "synth.feature_noise = " << synth.featureNoise << '\n';
  os << "synth.groups = " << synth.numGroups << '\n';
  os << "synth.nodes_per_group = " << synth.nodesPerGroup << '\n';
  os << "synth.seed = " << synthSeed << '\n';
  os << "synth.within_p = " << synth.withinP << '\n';
  os << "threads = " << threads << '\n';
  os << "train_bad_cap = " << trainBadCap << '\n';
  return os.str();
}

std::map<std::string, std::string> parseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    auto notSpace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
    }
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

namespace {

bool parseBool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected boolean, got '" + v + "'");
}

}  // namespace

void applyConfigEntries(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "alpha") cfg.margins.alpha = std::stod(value);
    else if (key == "beta") cfg.margins.beta = std::stod(value);
    else if (key == "cocluster.cache_dir") cfg.coclusterCacheDir = value;
    else if (key == "cocluster.k") cfg.coclusterK = std::stoi(value);
    else if (key == "cocluster.sweeps") cfg.coclusterSweeps = std::stoi(value);
    else if (key == "crw.t") cfg.crwT = std::stoi(value);
    else if (key == "dataset.cites") cfg.citesFile = value;
    else if (key == "dataset.content") cfg.contentFile = value;
    else if (key == "dataset.kind") cfg.datasetKind = value;
    else if (key == "dataset.min_common_viewers") cfg.minCommonViewers = std::stoi(value);
    else if (key == "dataset.movie_features") cfg.movieFeaturesFile = value;
    else if (key == "dataset.name") cfg.datasetName = value;
    else if (key == "dataset.ratings") cfg.ratingsFile = value;
    else if (key == "ablate") {
      std::istringstream is(value);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        if (tok == "AA") cfg.ablateAA = true;
        else if (tok == "LL") cfg.ablateLL = true;
        else if (tok == "CC") cfg.ablateCC = true;
        else if (!tok.empty()) throw std::invalid_argument("unknown ablation block: " + tok);
      }
    }
    else if (key == "quadratic") cfg.quadratic = parseBool(value);
    else if (key == "feature_layout") {
      if (value != "n/a") {
        FeatureConfig fc = FeatureConfig::fromLayoutString(value);
        cfg.ablateAA = !fc.useAA;
        cfg.ablateLL = !fc.useLL;
        cfg.ablateCC = !fc.useCC;
        cfg.quadratic = fc.quadratic;
      }
    }
    else if (key == "katz.beta") cfg.katzBeta = std::stod(value);
    else if (key == "katz.max_len") cfg.katzMaxLen = std::stoi(value);
    else if (key == "master_seed") cfg.masterSeed = std::stoull(value);
    else if (key == "method") cfg.method = methodFromString(value);
    else if (key == "output_dir") cfg.outputDir = value;
    else if (key == "propflow.depth") cfg.propflowDepth = std::stoi(value);
    else if (key == "query_budget") cfg.queryBudget = std::stoi(value);
    else if (key == "ranker.epochs") cfg.ranker.epochs = std::stoi(value);
    else if (key == "ranker.lambda") cfg.ranker.lambda = std::stod(value);
    else if (key == "ranker.triples_per_epoch") cfg.ranker.triplesPerEpoch = std::stoll(value);
    else if (key == "sigma") cfg.sigma = std::stod(value);
    else if (key == "synth.across_p") cfg.synth.acrossP = std::stod(value);
    else if (key == "synth.feature_dim") cfg.synth.featureDim = std::stoi(value);
    else if (key == "synth.feature_noise") cfg.synth.featureNoise = std::stod(value);
    else if (key == "synth.groups") cfg.synth.numGroups = std::stoi(value);
    else if (key == "synth.nodes_per_group") cfg.synth.nodesPerGroup = std::stoi(value);
    else if (key == "synth.seed") cfg.synthSeed = std::stoull(value);
    else if (key == "synth.within_p") cfg.synth.withinP = std::stod(value);
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "train_bad_cap") cfg.trainBadCap = std::stoi(value);
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

DatasetBundle loadDataset(const RunConfig& cfg) {
  if (cfg.datasetKind == "synth") {
    return synthPlantedBlocks(cfg.synth, cfg.synthSeed, cfg.datasetName);
  }
  if (cfg.datasetKind == "citation") {
    return loadCitationCorpus(cfg.contentFile, cfg.citesFile, cfg.datasetName);
  }
  if (cfg.datasetKind == "coview") {
    return buildCoviewGraph(cfg.ratingsFile, cfg.movieFeaturesFile,
                            cfg.minCommonViewers, cfg.datasetName);
  }
  throw std::invalid_argument("unknown dataset kind: " + cfg.datasetKind);
}

namespace {

template <typename F>
void parallelFor(int n, int threads, F&& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(errorMutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int count = std::min(threads, n);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

[[noreturn]] void stageFail(const char* stage, const std::exception& e) {
  throw std::runtime_error(std::string("[stage ") + stage + "] " + e.what());
}

// Raw linear feature layout shared by all learning configs of a matrix.
using RawFeature = std::array<double, 4>;  // AA, LL, CCexist, CCabsent

struct BlockNeed {
  bool aa = false, ll = false, cc = false;
};

struct QueryFeatureCache {
  std::vector<RawFeature> trainGood, trainBad, testPool;
  std::vector<int> trainBadIds;
  std::vector<int> testPoolIds;  // testGood ∪ testBad, ascending
};

std::vector<int> mergedPool(const QuerySplit& s) {
  std::vector<int> pool;
  pool.reserve(s.testGood.size() + s.testBad.size());
  std::merge(s.testGood.begin(), s.testGood.end(), s.testBad.begin(), s.testBad.end(),
             std::back_inserter(pool));
  return pool;
}

std::vector<QueryFeatureCache> computeFeatureCaches(
    const DatasetBundle& data, const PreparedProtocol& prep, const RunConfig& cfg,
    BlockNeed need, const CoclusterModel* cocluster) {
  const Graph& g = prep.trainGraph;
  std::vector<QueryFeatureCache> caches(prep.splits.size());
  parallelFor(static_cast<int>(prep.splits.size()), cfg.threads, [&](int i) {
    const QuerySplit& s = prep.splits[i];
    QueryFeatureCache& cache = caches[i];
    cache.trainBadIds = s.trainBad;
    if (cfg.trainBadCap > 0 &&
        static_cast<int>(cache.trainBadIds.size()) > cfg.trainBadCap) {
      Rng rng(deriveSeed(cfg.masterSeed, "trainbad", static_cast<std::uint64_t>(s.q)));
      auto& ids = cache.trainBadIds;
      for (int j = 0; j < cfg.trainBadCap; ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, ids.size() - 1);
        std::swap(ids[j], ids[pick(rng)]);
      }
      ids.resize(cfg.trainBadCap);
      std::sort(ids.begin(), ids.end());
    }
    cache.testPoolIds = mergedPool(s);

    auto fill = [&](int v) {
      RawFeature f{0.0, 0.0, 0.0, 0.0};
      if (need.aa) f[0] = adamicAdar(g, s.q, v);
      if (need.ll) f[1] = llFeature(g, data.features, s.q, v, cfg.margins);
      if (need.cc) {
        auto [sExist, sAbsent] = cocluster->surprise(s.q, v);
        f[2] = sExist;
        f[3] = sAbsent;
      }
      return f;
    };
    cache.trainGood.reserve(s.trainGood.size());
    for (int v : s.trainGood) cache.trainGood.push_back(fill(v));
    cache.trainBad.reserve(cache.trainBadIds.size());
    for (int v : cache.trainBadIds) cache.trainBad.push_back(fill(v));
    cache.testPool.reserve(cache.testPoolIds.size());
    for (int v : cache.testPoolIds) cache.testPool.push_back(fill(v));
  });
  return caches;
}

std::vector<double> sliceFeature(const RawFeature& raw, const FeatureConfig& fc) {
  std::vector<double> f;
  f.reserve(fc.length());
  if (fc.useAA) f.push_back(raw[0]);
  if (fc.useLL) f.push_back(raw[1]);
  if (fc.useCC) {
    f.push_back(raw[2]);
    f.push_back(raw[3]);
  }
  if (fc.quadratic) {
    const int n = static_cast<int>(f.size());
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) f.push_back(f[i] * f[j]);
    }
  }
  return f;
}

void sortCandidates(std::vector<std::pair<int, double>>& scored) {
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
}

// Non-learning scorers over a candidate pool.
std::vector<std::pair<int, double>> scoreBaseline(const RunConfig& cfg, const Graph& g,
                                                  const NodeFeatureMatrix& features,
                                                  double katzBetaResolved, int q,
                                                  const std::vector<int>& pool) {
  std::vector<std::pair<int, double>> scored;
  scored.reserve(pool.size());
  switch (cfg.method) {
    case Method::AA:
    case Method::RA: {
      auto variant = cfg.method == Method::AA ? NeighborWeighting::AdamicAdar
                                              : NeighborWeighting::ResourceAllocation;
      for (int v : pool) scored.emplace_back(v, adamicAdar(g, q, v, variant));
      break;
    }
    case Method::LL: {
      for (int v : pool) {
        scored.emplace_back(v, llFeature(g, features, q, v, cfg.margins));
      }
      break;
    }
    case Method::Katz: {
      auto all = katzScoresFrom(g, q, katzBetaResolved, cfg.katzMaxLen);
      for (int v : pool) scored.emplace_back(v, all[v]);
      break;
    }
    case Method::CRW: {
      auto all = crwScoresFrom(g, q, cfg.crwT);
      for (int v : pool) scored.emplace_back(v, all[v]);
      break;
    }
    case Method::PropFlow: {
      auto flow = propFlow(g, q, cfg.propflowDepth);
      for (int v : pool) {
        auto it = flow.find(v);
        scored.emplace_back(v, it == flow.end() ? 0.0 : it->second);
      }
      break;
    }
    case Method::CCLL:
      throw std::logic_error("scoreBaseline called for a learning method");
  }
  sortCandidates(scored);
  return scored;
}

CoclusterModel loadOrFitCocluster(const Graph& trainGraph, const RunConfig& cfg,
                                  std::vector<double>* costTrace = nullptr) {
  int k = cfg.coclusterK > 0 ? cfg.coclusterK : defaultGroupCount(trainGraph.numNodes());
  std::uint64_t seed = deriveSeed(cfg.masterSeed, "cocluster");
  fs::path cachePath;
  if (!cfg.coclusterCacheDir.empty()) {
    std::ostringstream key;
    key << "cocluster_" << std::hex << trainGraph.hash() << std::dec << "_k" << k
        << "_s" << seed << ".txt";
    cachePath = fs::path(cfg.coclusterCacheDir) / key.str();
    if (fs::exists(cachePath)) {
      std::ifstream in(cachePath);
      CoclusterModel m = CoclusterModel::load(in);
      if (m.graphHash == trainGraph.hash()) return m;
    }
  }
  CoclusterModel model =
      fitCocluster(trainGraph, k, k, seed, cfg.coclusterSweeps, costTrace);
  if (!cachePath.empty()) {
    fs::create_directories(cachePath.parent_path());
    std::ofstream out(cachePath);
    model.save(out);
  }
  return model;
}

void writeArtifacts(const RunConfig& cfg, const RunResult& result,
                    const RankModel* model, const CoclusterModel* cocluster) {
  if (cfg.outputDir.empty()) return;
  std::vector<fs::path> written;
  try {
    fs::create_directories(cfg.outputDir);
    auto writeFile = [&](const std::string& name, auto&& writer) {
      fs::path p = fs::path(cfg.outputDir) / name;
      std::ofstream out(p);
      if (!out) throw std::runtime_error("cannot write " + p.string());
      writer(out);
      written.push_back(p);
    };
    writeFile("config.resolved", [&](std::ostream& os) { os << cfg.resolvedText(); });
    writeFile("summary.txt", [&](std::ostream& os) {
      os << "method = " << result.method << '\n';
      os << "feature_layout = " << result.featureLayout << '\n';
      os << "splits_hash = " << result.splitsHash << '\n';
      if (methodIsLearning(cfg.method)) os << "train_auc = " << result.trainAuc << '\n';
      result.report.writeSummary(os);
    });
    writeFile("per_query.tsv",
              [&](std::ostream& os) { result.report.writePerQueryTsv(os); });
    writeFile("pr_curve.tsv",
              [&](std::ostream& os) { result.report.writePrCurveTsv(os); });
    writeFile("bins_degree.tsv",
              [&](std::ostream& os) { result.report.writeBinsTsv(os, BinAxis::Degree); });
    writeFile("bins_triangles.tsv", [&](std::ostream& os) {
      result.report.writeBinsTsv(os, BinAxis::Triangles);
    });
    if (model) {
      writeFile("rank_model.txt", [&](std::ostream& os) { model->save(os); });
    }
    if (cocluster) {
      writeFile("cocluster_model.txt", [&](std::ostream& os) { cocluster->save(os); });
    }
  } catch (...) {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
}

}  // namespace

PreparedProtocol prepareProtocol(const DatasetBundle& data, const RunConfig& cfg) {
  PreparedProtocol prep;
  std::vector<int> queries;
  try {
    queries = sampleQueries(data.graph, cfg.queryBudget,
                            deriveSeed(cfg.masterSeed, "queries"));
  } catch (const std::exception& e) {
    stageFail("sample_queries", e);
  }
  try {
    for (int q : queries) {
      auto split = splitEdges(data.graph, q, cfg.sigma,
                              deriveSeed(cfg.masterSeed, "split",
                                         static_cast<std::uint64_t>(q)));
      if (split) prep.splits.push_back(std::move(*split));
    }
    if (prep.splits.empty()) {
      throw std::runtime_error("every sampled query was discarded by the split rule");
    }
  } catch (const std::exception& e) {
    stageFail("split_edges", e);
  }
  try {
    prep.trainGraph = buildTrainingGraph(data.graph, prep.splits);
  } catch (const std::exception& e) {
    stageFail("build_training_graph", e);
  }
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& s : prep.splits) h = splitmix64(h ^ s.hash());
  prep.splitsHash = h;
  return prep;
}

namespace {

RunResult evaluateConfig(const RunConfig& cfg, const DatasetBundle& data,
                         const PreparedProtocol& prep,
                         const std::vector<QueryFeatureCache>* caches,
                         const CoclusterModel* cocluster, double katzBetaResolved,
                         RankModel* modelOut) {
  RunResult result;
  result.method = methodToString(cfg.method);
  result.splitsHash = prep.splitsHash;
  const auto& splits = prep.splits;
  std::vector<int> queries;
  queries.reserve(splits.size());
  for (const auto& s : splits) queries.push_back(s.q);

  std::vector<std::vector<std::pair<int, double>>> ranked(splits.size());
  if (methodIsLearning(cfg.method)) {
    const FeatureConfig fc = cfg.featureConfig();
    result.featureLayout = fc.layoutString();
    std::vector<QueryTrainingSet> sets(splits.size());
    for (std::size_t i = 0; i < splits.size(); ++i) {
      sets[i].q = splits[i].q;
      for (const auto& raw : (*caches)[i].trainGood) {
        sets[i].good.push_back(sliceFeature(raw, fc));
      }
      for (const auto& raw : (*caches)[i].trainBad) {
        sets[i].bad.push_back(sliceFeature(raw, fc));
      }
    }
    RankerHyper hyper = cfg.ranker;
    hyper.seed = deriveSeed(cfg.masterSeed, "ranker");
    TrainStats stats;
    RankModel model;
    try {
      model = trainPairwiseRanker(sets, fc, hyper, &stats);
    } catch (const std::exception& e) {
      stageFail("train_ranker", e);
    }
    result.trainAuc = stats.trainAuc;
    try {
      parallelFor(static_cast<int>(splits.size()), cfg.threads, [&](int i) {
        const auto& cache = (*caches)[i];
        auto& scored = ranked[i];
        scored.reserve(cache.testPoolIds.size());
        for (std::size_t j = 0; j < cache.testPoolIds.size(); ++j) {
          scored.emplace_back(cache.testPoolIds[j],
                              model.score(sliceFeature(cache.testPool[j], fc)));
        }
        sortCandidates(scored);
      });
    } catch (const std::exception& e) {
      stageFail("score", e);
    }
    if (modelOut) *modelOut = std::move(model);
  } else {
    result.featureLayout = "n/a";
    try {
      parallelFor(static_cast<int>(splits.size()), cfg.threads, [&](int i) {
        ranked[i] = scoreBaseline(cfg, prep.trainGraph, data.features,
                                  katzBetaResolved, splits[i].q, mergedPool(splits[i]));
      });
    } catch (const std::exception& e) {
      stageFail("score", e);
    }
  }

  try {
    std::vector<std::unordered_set<int>> relevant(splits.size());
    for (std::size_t i = 0; i < splits.size(); ++i) {
      relevant[i].insert(splits[i].testGood.begin(), splits[i].testGood.end());
    }
    result.report = aggregateMetrics(data.graph, queries, ranked, relevant);
  } catch (const std::exception& e) {
    stageFail("metrics", e);
  }
  return result;
}

}  // namespace

RunResult runBenchmark(const RunConfig& cfg, const DatasetBundle* preloaded) {
  DatasetBundle local;
  const DatasetBundle* data = preloaded;
  if (!data) {
    try {
      local = loadDataset(cfg);
    } catch (const std::exception& e) {
      stageFail("load_dataset", e);
    }
    data = &local;
  }
  PreparedProtocol prep = prepareProtocol(*data, cfg);

  const bool learning = methodIsLearning(cfg.method);
  CoclusterModel cocluster;
  bool haveCocluster = false;
  if (learning && !cfg.ablateCC) {
    try {
      cocluster = loadOrFitCocluster(prep.trainGraph, cfg);
      haveCocluster = true;
    } catch (const std::exception& e) {
      stageFail("cocluster", e);
    }
  }

  std::vector<QueryFeatureCache> caches;
  if (learning) {
    BlockNeed need{!cfg.ablateAA, !cfg.ablateLL, !cfg.ablateCC};
    try {
      caches = computeFeatureCaches(*data, prep, cfg, need,
                                    haveCocluster ? &cocluster : nullptr);
    } catch (const std::exception& e) {
      stageFail("assemble_features", e);
    }
  }

  double katzBetaResolved = cfg.katzBeta;
  if (cfg.method == Method::Katz && katzBetaResolved <= 0.0) {
    katzBetaResolved = 0.5 / spectralRadius(prep.trainGraph);
  }

  RankModel model;
  RunResult result = evaluateConfig(cfg, *data, prep, learning ? &caches : nullptr,
                                    haveCocluster ? &cocluster : nullptr,
                                    katzBetaResolved, learning ? &model : nullptr);
  writeArtifacts(cfg, result, learning ? &model : nullptr,
                 haveCocluster ? &cocluster : nullptr);
  return result;
}

std::vector<RunResult> runMatrix(const std::vector<RunConfig>& configs,
                                 const DatasetBundle* preloaded) {
  if (configs.empty()) throw std::invalid_argument("run_matrix needs at least one config");
  const RunConfig& base = configs.front();
  for (const auto& c : configs) {
    bool sameDataset = c.datasetKind == base.datasetKind &&
                       c.datasetName == base.datasetName &&
                       c.contentFile == base.contentFile &&
                       c.citesFile == base.citesFile &&
                       c.ratingsFile == base.ratingsFile &&
                       c.movieFeaturesFile == base.movieFeaturesFile &&
                       c.minCommonViewers == base.minCommonViewers &&
                       c.synthSeed == base.synthSeed;
    if (!sameDataset || c.masterSeed != base.masterSeed || c.sigma != base.sigma ||
        c.queryBudget != base.queryBudget) {
      throw std::invalid_argument(
          "run_matrix configs must share dataset, master seed, sigma and query budget");
    }
  }

  DatasetBundle local;
  const DatasetBundle* data = preloaded;
  if (!data) {
    try {
      local = loadDataset(base);
    } catch (const std::exception& e) {
      stageFail("load_dataset", e);
    }
    data = &local;
  }
  PreparedProtocol prep = prepareProtocol(*data, base);

  BlockNeed need;
  bool anyCC = false;
  for (const auto& c : configs) {
    if (!methodIsLearning(c.method)) continue;
    need.aa = need.aa || !c.ablateAA;
    need.ll = need.ll || !c.ablateLL;
    need.cc = need.cc || !c.ablateCC;
    anyCC = anyCC || !c.ablateCC;
  }

  CoclusterModel cocluster;
  bool haveCocluster = false;
  if (anyCC) {
    try {
      cocluster = loadOrFitCocluster(prep.trainGraph, base);
      haveCocluster = true;
    } catch (const std::exception& e) {
      stageFail("cocluster", e);
    }
  }

  std::vector<QueryFeatureCache> caches;
  if (need.aa || need.ll || need.cc) {
    try {
      caches = computeFeatureCaches(*data, prep, base, need,
                                    haveCocluster ? &cocluster : nullptr);
    } catch (const std::exception& e) {
      stageFail("assemble_features", e);
    }
  }

  double lambda1 = 0.0;
  for (const auto& c : configs) {
    if (c.method == Method::Katz && c.katzBeta <= 0.0) {
      lambda1 = spectralRadius(prep.trainGraph);
      break;
    }
  }

  std::vector<RunResult> results;
  results.reserve(configs.size());
  for (const auto& c : configs) {
    double katzBetaResolved = c.katzBeta;
    if (c.method == Method::Katz && katzBetaResolved <= 0.0) {
      katzBetaResolved = 0.5 / lambda1;
    }
    bool learning = methodIsLearning(c.method);
    RankModel model;
    RunResult r = evaluateConfig(c, *data, prep, learning ? &caches : nullptr,
                                 haveCocluster ? &cocluster : nullptr,
                                 katzBetaResolved, learning ? &model : nullptr);
    writeArtifacts(c, r, learning ? &model : nullptr,
                   (learning && !c.ablateCC && haveCocluster) ? &cocluster : nullptr);
    results.push_back(std::move(r));
  }
  // paired comparison sanity: every method saw identical splits
  for (const auto& r : results) {
    if (r.splitsHash != prep.splitsHash) {
      throw std::logic_error("split hash mismatch inside run_matrix");
    }
  }
  return results;
}

}  // namespace lp
