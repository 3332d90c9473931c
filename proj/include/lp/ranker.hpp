#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lp/baselines.hpp"
#include "lp/cocluster.hpp"
#include "lp/feature_matrix.hpp"
#include "lp/graph.hpp"
#include "lp/local_similarity.hpp"

namespace lp {

/// Which feature blocks go into f(u,v), and whether the quadratic
/// expansion (all unordered pairwise products, squares included) is
/// appended. Full linear layout is [AA, LL, CCexist, CCabsent].
struct FeatureConfig {
  bool useAA = true;
  bool useLL = true;
  bool useCC = true;
  bool quadratic = false;

  int linearLength() const { return (useAA ? 1 : 0) + (useLL ? 1 : 0) + (useCC ? 2 : 0); }
  int length() const {
    int n = linearLength();
    return quadratic ? n + n * (n + 1) / 2 : n;
  }
  std::string layoutString() const;
  static FeatureConfig fromLayoutString(const std::string& s);
};

/// Computes raw (unstandardized) feature vectors on a frozen training
/// graph. AA and LL see the graph with edge (u,v) removed when present,
/// so training-edge features match test-time conditions.
class FeatureAssembler {
 public:
  FeatureAssembler(const Graph& trainGraph, const NodeFeatureMatrix& features,
                   const CoclusterModel* cocluster, LocalMargins margins,
                   FeatureConfig config);

  std::vector<double> assemble(int u, int v) const;

  const FeatureConfig& config() const { return config_; }

 private:
  const Graph& graph_;
  const NodeFeatureMatrix& features_;
  const CoclusterModel* cocluster_;
  LocalMargins margins_;
  FeatureConfig config_;
};

/// Per-feature mean/stddev transform fitted on training pairs.
/// Constant features get stddev 1 and therefore contribute nothing.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  static Standardizer fit(const std::vector<std::vector<double>>& samples, int dim);
  void apply(std::vector<double>& f) const;
};

struct RankerHyper {
  double lambda = 1e-4;
  int epochs = 30;
  long long triplesPerEpoch = 100000;
  std::uint64_t seed = 1;
};

struct RankModel {
  FeatureConfig config;
  Standardizer standardizer;
  std::vector<double> nu;
  RankerHyper hyper;

  double score(const std::vector<double>& rawFeature) const;

  void save(std::ostream& os) const;
  static RankModel load(std::istream& is);
};

/// Training pool for one query: raw features of its sampled good and
/// bad candidates.
struct QueryTrainingSet {
  int q = -1;
  std::vector<std::vector<double>> good;
  std::vector<std::vector<double>> bad;
};

struct TrainStats {
  std::vector<double> epochHingeLoss;  // running average per epoch
  double trainAuc = 0.0;
};

/// Regularized pairwise hinge objective
///   λ‖ν‖² + Σ_q (1/(|G||B|)) Σ_{g,b} max{0, 1 − ν·(f_g − f_b)}
/// minimized by averaged stochastic subgradient over sampled (q,g,b)
/// triples, step 1/(λt). Features are standardized first.
/// Deterministic given hyper.seed.
RankModel trainPairwiseRanker(const std::vector<QueryTrainingSet>& queries,
                              FeatureConfig config, RankerHyper hyper,
                              TrainStats* stats = nullptr);

/// Item-wise alternative: hinge classification on labeled single pairs.
RankModel trainItemwise(const std::vector<std::vector<double>>& features,
                        const std::vector<int>& labels,  // +1 / -1
                        FeatureConfig config, RankerHyper hyper,
                        TrainStats* stats = nullptr);

/// Candidates sorted by decreasing ν·f; ties broken by ascending id.
std::vector<std::pair<int, double>> scoreAndRank(const RankModel& model,
                                                 const FeatureAssembler& assembler,
                                                 int q, const std::vector<int>& candidates);

/// Pairwise AUC of a trained model on its own training pools.
double pairwiseTrainAuc(const RankModel& model, const std::vector<QueryTrainingSet>& queries);

}  // namespace lp
