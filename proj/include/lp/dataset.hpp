#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lp/feature_matrix.hpp"
#include "lp/graph.hpp"

namespace lp {

struct DatasetBundle {
  std::string name;
  Graph graph;
  NodeFeatureMatrix features;
  std::vector<std::string> externalIds;  // dense id -> source id
  std::string provenance;                // source file hashes / generator params
  int droppedCitations = 0;
  int droppedMovies = 0;

  std::uint64_t hash() const;
};

/// Citation corpus: content rows "id feat_1 ... feat_d label", cites
/// rows "id id". Features binary, edges symmetrized, external ids
/// remapped densely. Citations touching unknown ids are dropped and
/// counted. Canonical corpora (Cora, CiteSeer, WebKb) self-check their
/// (N, M, n(a)) against the published summary.
DatasetBundle loadCitationCorpus(const std::string& contentFile,
                                 const std::string& citesFile,
                                 const std::string& name);

/// Movie co-view graph: an edge between two movies iff they share at
/// least `minCommonViewers` viewers. Ratings rows are "user movie
/// [rating]"; features rows are "movie f_1 ... f_k". Movies rated but
/// missing from the feature file are dropped with a warning.
DatasetBundle buildCoviewGraph(const std::string& ratingsFile,
                               const std::string& movieFeaturesFile,
                               int minCommonViewers, const std::string& name);

struct PlantedBlockParams {
  int numGroups = 2;
  int nodesPerGroup = 40;
  double withinP = 0.9;
  double acrossP = 0.1;
  int featureDim = 16;
  double featureNoise = 0.05;  // per-bit flip probability
};

/// Stochastic block graph with per-group prototype features plus
/// seeded bit-flip noise. Test fixture for co-clustering and the
/// end-to-end pipeline.
DatasetBundle synthPlantedBlocks(const PlantedBlockParams& params, std::uint64_t seed,
                                 const std::string& name = "synth");

/// Group of node id within a planted-blocks bundle.
inline int plantedGroupOf(int node, int nodesPerGroup) { return node / nodesPerGroup; }

}  // namespace lp
