#include "lp/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lp/rng.hpp"

namespace lp {

std::string FeatureConfig::layoutString() const {
  std::string s;
  auto add = [&s](const char* block) {
    if (!s.empty()) s += '+';
    s += block;
  };
  if (useAA) add("AA");
  if (useLL) add("LL");
  if (useCC) add("CC");
  if (s.empty()) s = "none";
  if (quadratic) s += ":quadratic";
  return s;
}

FeatureConfig FeatureConfig::fromLayoutString(const std::string& s) {
  FeatureConfig cfg;
  cfg.useAA = cfg.useLL = cfg.useCC = false;
  std::string body = s;
  if (auto pos = body.find(':'); pos != std::string::npos) {
    std::string mod = body.substr(pos + 1);
    if (mod == "quadratic") {
      cfg.quadratic = true;
    } else if (mod != "linear") {
      throw std::invalid_argument("unknown layout modifier: " + mod);
    }
    body = body.substr(0, pos);
  }
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, '+')) {
    if (tok == "AA") cfg.useAA = true;
    else if (tok == "LL") cfg.useLL = true;
    else if (tok == "CC") cfg.useCC = true;
    else if (tok != "none") throw std::invalid_argument("unknown feature block: " + tok);
  }
  return cfg;
}

FeatureAssembler::FeatureAssembler(const Graph& trainGraph,
                                   const NodeFeatureMatrix& features,
                                   const CoclusterModel* cocluster,
                                   LocalMargins margins, FeatureConfig config)
    : graph_(trainGraph), features_(features), cocluster_(cocluster),
      margins_(margins), config_(config) {
  if (config_.useCC && cocluster_ == nullptr) {
    throw std::invalid_argument("CC block enabled without a fitted co-cluster model");
  }
  if (config_.linearLength() == 0) {
    throw std::invalid_argument("feature config enables no blocks");
  }
}

std::vector<double> FeatureAssembler::assemble(int u, int v) const {
  std::vector<double> f;
  f.reserve(config_.length());
  if (config_.useAA) f.push_back(adamicAdar(graph_, u, v));
  if (config_.useLL) f.push_back(llFeature(graph_, features_, u, v, margins_));
  if (config_.useCC) {
    auto [sExist, sAbsent] = cocluster_->surprise(u, v);
    f.push_back(sExist);
    f.push_back(sAbsent);
  }
  if (config_.quadratic) {
    const int n = static_cast<int>(f.size());
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) f.push_back(f[i] * f[j]);
    }
  }
  return f;
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& samples, int dim) {
  Standardizer s;
  s.mean.assign(dim, 0.0);
  s.stddev.assign(dim, 1.0);
  if (samples.empty()) return s;
  for (const auto& f : samples) {
    for (int j = 0; j < dim; ++j) s.mean[j] += f[j];
  }
  for (int j = 0; j < dim; ++j) s.mean[j] /= static_cast<double>(samples.size());
  std::vector<double> var(dim, 0.0);
  for (const auto& f : samples) {
    for (int j = 0; j < dim; ++j) {
      double d = f[j] - s.mean[j];
      var[j] += d * d;
    }
  }
  for (int j = 0; j < dim; ++j) {
    double sd = std::sqrt(var[j] / static_cast<double>(samples.size()));
    s.stddev[j] = sd > 1e-12 ? sd : 1.0;  // constant features contribute nothing
  }
  return s;
}

void Standardizer::apply(std::vector<double>& f) const {
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = (f[j] - mean[j]) / stddev[j];
}

double RankModel::score(const std::vector<double>& rawFeature) const {
  double s = 0.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    s += nu[j] * (rawFeature[j] - standardizer.mean[j]) / standardizer.stddev[j];
  }
  return s;
}

namespace {

std::vector<std::vector<double>> standardizeAll(
    const std::vector<std::vector<double>>& raw, const Standardizer& s) {
  std::vector<std::vector<double>> out = raw;
  for (auto& f : out) s.apply(f);
  return out;
}

RankModel finishModel(FeatureConfig config, RankerHyper hyper, Standardizer std_,
                      std::vector<double> nu) {
  RankModel m;
  m.config = config;
  m.hyper = hyper;
  m.standardizer = std::move(std_);
  m.nu = std::move(nu);
  for (double x : m.nu) {
    if (!std::isfinite(x)) throw std::runtime_error("non-finite ranker weight");
  }
  return m;
}

}  // namespace

RankModel trainPairwiseRanker(const std::vector<QueryTrainingSet>& queries,
                              FeatureConfig config, RankerHyper hyper,
                              TrainStats* stats) {
  const int dim = config.length();
  std::vector<int> usable;
  std::vector<std::vector<double>> pooled;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (!queries[i].good.empty() && !queries[i].bad.empty()) {
      usable.push_back(static_cast<int>(i));
    }
    for (const auto& f : queries[i].good) pooled.push_back(f);
    for (const auto& f : queries[i].bad) pooled.push_back(f);
  }
  if (usable.empty()) {
    throw std::runtime_error("pairwise training needs a query with both good and bad samples");
  }
  Standardizer std_ = Standardizer::fit(pooled, dim);

  // Standardized copies indexed as the queries are.
  std::vector<QueryTrainingSet> zq(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    zq[i].q = queries[i].q;
    zq[i].good = standardizeAll(queries[i].good, std_);
    zq[i].bad = standardizeAll(queries[i].bad, std_);
  }

  Rng rng(hyper.seed);
  std::uniform_int_distribution<std::size_t> pickQ(0, usable.size() - 1);
  std::vector<double> nu(dim, 0.0), avg(dim, 0.0), diff(dim, 0.0);
  long long t = 0;
  if (stats) stats->epochHingeLoss.clear();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    double epochLoss = 0.0;
    for (long long step = 0; step < hyper.triplesPerEpoch; ++step) {
      ++t;
      const auto& qs = zq[static_cast<std::size_t>(usable[pickQ(rng)])];
      const auto& fg = qs.good[std::uniform_int_distribution<std::size_t>(
          0, qs.good.size() - 1)(rng)];
      const auto& fb = qs.bad[std::uniform_int_distribution<std::size_t>(
          0, qs.bad.size() - 1)(rng)];
      double margin = 0.0;
      for (int j = 0; j < dim; ++j) {
        diff[j] = fg[j] - fb[j];
        margin += nu[j] * diff[j];
      }
      epochLoss += std::max(0.0, 1.0 - margin);
      double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
      double shrink = 1.0 - eta * hyper.lambda;  // = 1 - 1/t
      if (margin < 1.0) {
        for (int j = 0; j < dim; ++j) nu[j] = shrink * nu[j] + eta * diff[j];
      } else {
        for (int j = 0; j < dim; ++j) nu[j] *= shrink;
      }
      for (int j = 0; j < dim; ++j) avg[j] += (nu[j] - avg[j]) / static_cast<double>(t);
    }
    if (stats) {
      stats->epochHingeLoss.push_back(epochLoss /
                                      static_cast<double>(hyper.triplesPerEpoch));
    }
  }

  RankModel model = finishModel(config, hyper, std::move(std_), std::move(avg));
  if (stats) stats->trainAuc = pairwiseTrainAuc(model, queries);
  return model;
}

RankModel trainItemwise(const std::vector<std::vector<double>>& features,
                        const std::vector<int>& labels, FeatureConfig config,
                        RankerHyper hyper, TrainStats* stats) {
  if (features.size() != labels.size()) {
    throw std::invalid_argument("feature/label size mismatch");
  }
  bool hasPos = false, hasNeg = false;
  for (int y : labels) {
    if (y > 0) hasPos = true;
    else hasNeg = true;
  }
  if (!hasPos || !hasNeg) {
    throw std::runtime_error("itemwise training needs both classes");
  }
  const int dim = config.length();
  Standardizer std_ = Standardizer::fit(features, dim);
  auto z = standardizeAll(features, std_);

  Rng rng(hyper.seed);
  std::uniform_int_distribution<std::size_t> pick(0, z.size() - 1);
  std::vector<double> nu(dim, 0.0), avg(dim, 0.0);
  long long t = 0;
  if (stats) stats->epochHingeLoss.clear();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    double epochLoss = 0.0;
    for (long long step = 0; step < hyper.triplesPerEpoch; ++step) {
      ++t;
      std::size_t i = pick(rng);
      double y = labels[i] > 0 ? 1.0 : -1.0;
      double margin = 0.0;
      for (int j = 0; j < dim; ++j) margin += nu[j] * z[i][j];
      margin *= y;
      epochLoss += std::max(0.0, 1.0 - margin);
      double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
      double shrink = 1.0 - 1.0 / static_cast<double>(t);
      if (margin < 1.0) {
        for (int j = 0; j < dim; ++j) nu[j] = shrink * nu[j] + eta * y * z[i][j];
      } else {
        for (int j = 0; j < dim; ++j) nu[j] *= shrink;
      }
      for (int j = 0; j < dim; ++j) avg[j] += (nu[j] - avg[j]) / static_cast<double>(t);
    }
    if (stats) {
      stats->epochHingeLoss.push_back(epochLoss /
                                      static_cast<double>(hyper.triplesPerEpoch));
    }
  }
  return finishModel(config, hyper, std::move(std_), std::move(avg));
}

std::vector<std::pair<int, double>> scoreAndRank(const RankModel& model,
                                                 const FeatureAssembler& assembler,
                                                 int q,
                                                 const std::vector<int>& candidates) {
  std::vector<std::pair<int, double>> out;
  out.reserve(candidates.size());
  for (int v : candidates) {
    if (v == q) throw std::invalid_argument("candidate list must exclude the query");
    out.emplace_back(v, model.score(assembler.assemble(q, v)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

double pairwiseTrainAuc(const RankModel& model,
                        const std::vector<QueryTrainingSet>& queries) {
  double total = 0.0;
  int counted = 0;
  for (const auto& qs : queries) {
    if (qs.good.empty() || qs.bad.empty()) continue;
    double correct = 0.0;
    for (const auto& fg : qs.good) {
      double sg = model.score(fg);
      for (const auto& fb : qs.bad) {
        double sb = model.score(fb);
        if (sg > sb) correct += 1.0;
        else if (sg == sb) correct += 0.5;
      }
    }
    total += correct / (static_cast<double>(qs.good.size()) * qs.bad.size());
    ++counted;
  }
  return counted == 0 ? 0.0 : total / counted;
}

void RankModel::save(std::ostream& os) const {
  os << "rankmodel v1\n";
  os << config.layoutString() << '\n';
  os << nu.size() << '\n';
  os.precision(17);
  for (std::size_t j = 0; j < nu.size(); ++j) {
    os << standardizer.mean[j] << ' ' << standardizer.stddev[j] << ' ' << nu[j] << '\n';
  }
  os << hyper.lambda << ' ' << hyper.epochs << ' ' << hyper.triplesPerEpoch << ' '
     << hyper.seed << '\n';
}

RankModel RankModel::load(std::istream& is) {
  std::string tag, version;
  is >> tag >> version;
  if (tag != "rankmodel" || version != "v1") {
    throw std::runtime_error("not a rank model file");
  }
  std::string layout;
  is >> layout;
  RankModel m;
  m.config = FeatureConfig::fromLayoutString(layout);
  std::size_t dim = 0;
  is >> dim;
  m.standardizer.mean.resize(dim);
  m.standardizer.stddev.resize(dim);
  m.nu.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    is >> m.standardizer.mean[j] >> m.standardizer.stddev[j] >> m.nu[j];
  }
  is >> m.hyper.lambda >> m.hyper.epochs >> m.hyper.triplesPerEpoch >> m.hyper.seed;
  if (!is) throw std::runtime_error("truncated rank model file");
  if (static_cast<int>(dim) != m.config.length()) {
    throw std::runtime_error("rank model layout/dimension mismatch");
  }
  return m;
}

}  // namespace lp
