#include "lp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lp/rng.hpp"

namespace lp {

void Graph::checkNode(int u) const {
  if (u < 0 || u >= n_) {
    throw std::out_of_range("node id " + std::to_string(u) +
                            " outside [0, " + std::to_string(n_) + ")");
  }
}

Graph Graph::fromEdges(const std::vector<std::pair<int, int>>& edges, int n) {
  if (n < 0) throw std::invalid_argument("negative node count");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw std::out_of_range("edge (" + std::to_string(u) + ", " +
                              std::to_string(v) + ") has node id outside [0, " +
                              std::to_string(n) + ")");
    }
  }
  std::vector<std::pair<int, int>> sym;
  sym.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    sym.emplace_back(u, v);
    sym.emplace_back(v, u);
  }
  std::sort(sym.begin(), sym.end());
  sym.erase(std::unique(sym.begin(), sym.end()), sym.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adj_.reserve(sym.size());
  std::size_t pos = 0;
  for (int u = 0; u < n; ++u) {
    while (pos < sym.size() && sym[pos].first == u) {
      g.adj_.push_back(sym[pos].second);
      ++pos;
    }
    g.offsets_[static_cast<std::size_t>(u) + 1] = g.adj_.size();
  }
  g.m_ = static_cast<long long>(g.adj_.size()) / 2;
  return g;
}

Graph Graph::fromEdgeListFile(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int maxId = -1;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto firstNonSpace = line.find_first_not_of(" \t\r");
    if (firstNonSpace == std::string::npos || line[firstNonSpace] == '#') continue;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed edge line");
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    maxId = std::max({maxId, static_cast<int>(u), static_cast<int>(v)});
  }
  if (n < 0) n = maxId + 1;
  return fromEdges(edges, n);
}

bool Graph::hasEdge(int u, int v) const {
  checkNode(u);
  checkNode(v);
  auto nu = neighbors(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<int> Graph::commonNeighbors(int u, int v) const {
  checkNode(u);
  checkNode(v);
  if (u == v) throw std::invalid_argument("common_neighbors requires u != v");
  auto nu = neighbors(u);
  auto nv = neighbors(v);
  std::vector<int> out;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                        std::back_inserter(out));
  return out;
}

long long Graph::triangleCount(int u) const {
  checkNode(u);
  auto nu = neighbors(u);
  long long count = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    auto na = neighbors(nu[i]);
    // count neighbors b of a with b in Γ(u) and b > a to avoid double count
    for (int b : na) {
      if (b <= nu[i]) continue;
      if (std::binary_search(nu.begin(), nu.end(), b)) ++count;
    }
  }
  return count;
}

std::vector<std::pair<int, int>> Graph::edgeList() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::writeEdgeList(std::ostream& os) const {
  for (const auto& [u, v] : edgeList()) os << u << ' ' << v << '\n';
}

std::uint64_t Graph::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 0x100000001b3ULL;
    h = splitmix64(h);
  };
  mix(static_cast<std::uint64_t>(n_));
  for (const auto& [u, v] : edgeList()) {
    mix((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v));
  }
  return h;
}

}  // namespace lp
