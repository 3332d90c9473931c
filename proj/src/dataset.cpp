#include "lp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lp/rng.hpp"

namespace lp {

namespace {

struct CanonicalShape {
  int nodes;
  long long edges;
  int featureDim;
};

// Published dataset summaries, keyed by lowercase name.
const std::unordered_map<std::string, CanonicalShape>& canonicalShapes() {
  static const std::unordered_map<std::string, CanonicalShape> shapes = {
      {"cora", {2708, 5429, 1433}},
      {"citeseer", {3312, 4732, 3703}},
      {"webkb", {877, 1608, 1703}},
      {"movielens", {3952, 5669, 18}},
      {"netflix", {17770, 20466, 64}},
  };
  return shapes;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void selfCheckCanonical(const DatasetBundle& bundle) {
  auto it = canonicalShapes().find(lowercase(bundle.name));
  if (it == canonicalShapes().end()) return;
  const auto& shape = it->second;
  if (bundle.graph.numNodes() != shape.nodes || bundle.graph.numEdges() != shape.edges ||
      bundle.features.dim() != shape.featureDim) {
    std::ostringstream msg;
    msg << bundle.name << ": loaded shape (N=" << bundle.graph.numNodes()
        << ", M=" << bundle.graph.numEdges() << ", n(a)=" << bundle.features.dim()
        << ") does not match the published summary (N=" << shape.nodes
        << ", M=" << shape.edges << ", n(a)=" << shape.featureDim << ")";
    throw std::runtime_error(msg.str());
  }
}

std::uint64_t fileHash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

}  // namespace

std::uint64_t DatasetBundle::hash() const {
  std::uint64_t h = graph.hash();
  h = splitmix64(h ^ fnv1a(name));
  h = splitmix64(h ^ static_cast<std::uint64_t>(features.dim()));
  for (int u = 0; u < features.numNodes(); ++u) {
    for (double x : features.row(u)) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      h = splitmix64(h ^ bits);
    }
  }
  return h;
}

DatasetBundle loadCitationCorpus(const std::string& contentFile,
                                 const std::string& citesFile,
                                 const std::string& name) {
  std::ifstream content(contentFile);
  if (!content) throw std::runtime_error("cannot open content file: " + contentFile);

  std::vector<std::pair<std::string, std::vector<double>>> rows;
  int featureDim = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(content, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() < 3) {
      throw std::runtime_error(contentFile + ":" + std::to_string(lineno) +
                               ": content row needs id, features, label");
    }
    int d = static_cast<int>(toks.size()) - 2;
    if (featureDim < 0) featureDim = d;
    if (d != featureDim) {
      throw std::runtime_error(contentFile + ":" + std::to_string(lineno) +
                               ": inconsistent feature count");
    }
    std::vector<double> feats(d);
    for (int j = 0; j < d; ++j) {
      try {
        feats[j] = std::stod(toks[j + 1]);
      } catch (const std::exception&) {
        throw std::runtime_error(contentFile + ":" + std::to_string(lineno) +
                                 ": malformed feature value '" + toks[j + 1] + "'");
      }
    }
    rows.emplace_back(toks[0], std::move(feats));
  }
  if (rows.empty()) throw std::runtime_error(contentFile + ": no content rows");

  // Dense remap in file order; duplicate ids rejected.
  std::unordered_map<std::string, int> idMap;
  idMap.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!idMap.emplace(rows[i].first, static_cast<int>(i)).second) {
      throw std::runtime_error(contentFile + ": duplicate id " + rows[i].first);
    }
  }

  const int n = static_cast<int>(rows.size());
  DatasetBundle bundle;
  bundle.name = name;
  bundle.features = NodeFeatureMatrix(n, featureDim);
  bundle.externalIds.reserve(rows.size());
  for (int i = 0; i < n; ++i) {
    bundle.externalIds.push_back(rows[i].first);
    auto dst = bundle.features.row(i);
    std::copy(rows[i].second.begin(), rows[i].second.end(), dst.begin());
  }
  if (!bundle.features.allFinite()) {
    throw std::runtime_error(contentFile + ": non-finite feature value");
  }

  std::ifstream cites(citesFile);
  if (!cites) throw std::runtime_error("cannot open cites file: " + citesFile);
  std::vector<std::pair<int, int>> edges;
  lineno = 0;
  while (std::getline(cites, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) {
      throw std::runtime_error(citesFile + ":" + std::to_string(lineno) +
                               ": cites row needs exactly two ids");
    }
    auto a = idMap.find(toks[0]);
    auto b = idMap.find(toks[1]);
    if (a == idMap.end() || b == idMap.end()) {
      ++bundle.droppedCitations;
      continue;
    }
    edges.emplace_back(a->second, b->second);
  }
  if (bundle.droppedCitations > 0) {
    std::cerr << name << ": dropped " << bundle.droppedCitations
              << " citations to unknown ids\n";
  }
  bundle.graph = Graph::fromEdges(edges, n);
  bundle.provenance = "content:" + std::to_string(fileHash(contentFile)) +
                      " cites:" + std::to_string(fileHash(citesFile));
  selfCheckCanonical(bundle);
  return bundle;
}

DatasetBundle buildCoviewGraph(const std::string& ratingsFile,
                               const std::string& movieFeaturesFile,
                               int minCommonViewers, const std::string& name) {
  if (minCommonViewers < 1) {
    throw std::invalid_argument("minCommonViewers must be >= 1");
  }
  std::ifstream featIn(movieFeaturesFile);
  if (!featIn) {
    throw std::runtime_error("cannot open movie feature file: " + movieFeaturesFile);
  }
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  int featureDim = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(featIn, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() < 2) {
      throw std::runtime_error(movieFeaturesFile + ":" + std::to_string(lineno) +
                               ": feature row needs id plus features");
    }
    int d = static_cast<int>(toks.size()) - 1;
    if (featureDim < 0) featureDim = d;
    if (d != featureDim) {
      throw std::runtime_error(movieFeaturesFile + ":" + std::to_string(lineno) +
                               ": inconsistent feature count");
    }
    std::vector<double> feats(d);
    for (int j = 0; j < d; ++j) feats[j] = std::stod(toks[j + 1]);
    rows.emplace_back(toks[0], std::move(feats));
  }
  if (rows.empty()) throw std::runtime_error(movieFeaturesFile + ": no feature rows");

  std::unordered_map<std::string, int> movieMap;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!movieMap.emplace(rows[i].first, static_cast<int>(i)).second) {
      throw std::runtime_error(movieFeaturesFile + ": duplicate movie id " +
                               rows[i].first);
    }
  }
  const int n = static_cast<int>(rows.size());

  // Ratings grouped per user; movies without features dropped.
  std::ifstream ratings(ratingsFile);
  if (!ratings) throw std::runtime_error("cannot open ratings file: " + ratingsFile);
  std::unordered_map<std::string, std::vector<int>> byUser;
  DatasetBundle bundle;
  std::unordered_set<std::string> unknownMovies;
  lineno = 0;
  while (std::getline(ratings, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() < 2) {
      throw std::runtime_error(ratingsFile + ":" + std::to_string(lineno) +
                               ": ratings row needs user and movie");
    }
    auto it = movieMap.find(toks[1]);
    if (it == movieMap.end()) {
      unknownMovies.insert(toks[1]);
      continue;
    }
    byUser[toks[0]].push_back(it->second);
  }
  bundle.droppedMovies = static_cast<int>(unknownMovies.size());
  if (bundle.droppedMovies > 0) {
    std::cerr << name << ": dropped " << bundle.droppedMovies
              << " rated movies absent from the feature file\n";
  }

  // Pair co-occurrence counts enumerated per user.
  std::unordered_map<std::uint64_t, int> pairCount;
  for (auto& [user, movies] : byUser) {
    std::sort(movies.begin(), movies.end());
    movies.erase(std::unique(movies.begin(), movies.end()), movies.end());
    for (std::size_t i = 0; i < movies.size(); ++i) {
      for (std::size_t j = i + 1; j < movies.size(); ++j) {
        std::uint64_t key = (static_cast<std::uint64_t>(movies[i]) << 32) |
                            static_cast<std::uint32_t>(movies[j]);
        ++pairCount[key];
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [key, count] : pairCount) {
    if (count >= minCommonViewers) {
      edges.emplace_back(static_cast<int>(key >> 32),
                         static_cast<int>(key & 0xffffffffULL));
    }
  }

  bundle.name = name;
  bundle.graph = Graph::fromEdges(edges, n);
  bundle.features = NodeFeatureMatrix(n, featureDim);
  bundle.externalIds.reserve(rows.size());
  for (int i = 0; i < n; ++i) {
    bundle.externalIds.push_back(rows[i].first);
    auto dst = bundle.features.row(i);
    std::copy(rows[i].second.begin(), rows[i].second.end(), dst.begin());
  }
  bundle.provenance = "ratings:" + std::to_string(fileHash(ratingsFile)) +
                      " features:" + std::to_string(fileHash(movieFeaturesFile)) +
                      " min_common_viewers:" + std::to_string(minCommonViewers);
  selfCheckCanonical(bundle);
  return bundle;
}

DatasetBundle synthPlantedBlocks(const PlantedBlockParams& params, std::uint64_t seed,
                                 const std::string& name) {
  if (params.numGroups < 1 || params.nodesPerGroup < 1) {
    throw std::invalid_argument("planted blocks need positive group shape");
  }
  if (params.withinP < 0.0 || params.withinP > 1.0 || params.acrossP < 0.0 ||
      params.acrossP > 1.0) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  const int n = params.numGroups * params.nodesPerGroup;
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    int gu = plantedGroupOf(u, params.nodesPerGroup);
    for (int v = u + 1; v < n; ++v) {
      int gv = plantedGroupOf(v, params.nodesPerGroup);
      double p = gu == gv ? params.withinP : params.acrossP;
      if (unif(rng) < p) edges.emplace_back(u, v);
    }
  }

  DatasetBundle bundle;
  bundle.name = name;
  bundle.graph = Graph::fromEdges(edges, n);
  bundle.features = NodeFeatureMatrix(n, params.featureDim);
  // group prototypes: contiguous stripes of active bits, then per-node noise
  for (int u = 0; u < n; ++u) {
    int gu = plantedGroupOf(u, params.nodesPerGroup);
    auto row = bundle.features.row(u);
    for (int j = 0; j < params.featureDim; ++j) {
      int owner = params.numGroups > 0
                      ? j * params.numGroups / std::max(1, params.featureDim)
                      : 0;
      double bit = owner == gu ? 1.0 : 0.0;
      if (unif(rng) < params.featureNoise) bit = 1.0 - bit;
      row[j] = bit;
    }
  }
  bundle.externalIds.reserve(n);
  for (int u = 0; u < n; ++u) bundle.externalIds.push_back(std::to_string(u));
  std::ostringstream prov;
  prov << "synth groups:" << params.numGroups << " per_group:" << params.nodesPerGroup
       << " within:" << params.withinP << " across:" << params.acrossP
       << " dim:" << params.featureDim << " noise:" << params.featureNoise
       << " seed:" << seed;
  bundle.provenance = prov.str();
  return bundle;
}

}  // namespace lp
