#include "lp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lp {

double adamicAdar(const Graph& g, int u, int v, NeighborWeighting variant) {
  if (u == v) throw std::invalid_argument("adamic_adar requires u != v");
  double score = 0.0;
  for (int k : g.commonNeighbors(u, v)) {
    double d = static_cast<double>(g.degree(k));
    score += variant == NeighborWeighting::AdamicAdar ? 1.0 / std::log(d) : 1.0 / d;
  }
  return score;
}

namespace {

// y = A x
void adjacencyApply(const Graph& g, const std::vector<double>& x,
                    std::vector<double>& y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (int u = 0; u < g.numNodes(); ++u) {
    if (x[u] == 0.0) continue;
    for (int v : g.neighbors(u)) y[v] += x[u];
  }
}

}  // namespace

double spectralRadius(const Graph& g, int iters, double relTol) {
  const int n = g.numNodes();
  if (n == 0 || g.numEdges() == 0) return 0.0;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n, 0.0);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    adjacencyApply(g, x, y);
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    double next = norm;  // Rayleigh quotient of the normalized iterate
    for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (lambda > 0.0 && std::abs(next - lambda) <= relTol * lambda) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

std::vector<double> katzScoresFrom(const Graph& g, int u, double beta, int maxLen) {
  if (maxLen < 1) throw std::invalid_argument("katz maxLen must be >= 1");
  if (beta <= 0.0) throw std::invalid_argument("katz beta must be positive");
  double lambda1 = spectralRadius(g);
  if (lambda1 > 0.0 && beta >= 1.0 / lambda1) {
    throw std::invalid_argument("katz beta >= 1/lambda1; series does not converge");
  }
  const int n = g.numNodes();
  std::vector<double> x(n, 0.0), y(n, 0.0), score(n, 0.0);
  x[u] = 1.0;
  double betaPow = 1.0;
  for (int p = 1; p <= maxLen; ++p) {
    adjacencyApply(g, x, y);
    std::swap(x, y);
    betaPow *= beta;
    for (int v = 0; v < n; ++v) score[v] += betaPow * x[v];
  }
  return score;
}

double katzScore(const Graph& g, int u, int v, double beta, int maxLen) {
  return katzScoresFrom(g, u, beta, maxLen)[v];
}

std::vector<double> walkDistribution(const Graph& g, int u, int t) {
  const int n = g.numNodes();
  std::vector<double> pi(n, 0.0), next(n, 0.0);
  pi[u] = 1.0;
  for (int step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int a = 0; a < n; ++a) {
      if (pi[a] == 0.0) continue;
      int d = g.degree(a);
      if (d == 0) {
        next[a] += pi[a];
        continue;
      }
      double share = pi[a] / d;
      for (int b : g.neighbors(a)) next[b] += share;
    }
    std::swap(pi, next);
  }
  return pi;
}

double lrwScore(const Graph& g, int u, int v, int t) {
  if (t < 1) throw std::invalid_argument("lrw horizon must be >= 1");
  const double twoM = 2.0 * static_cast<double>(g.numEdges());
  if (twoM == 0.0) return 0.0;
  double qu = g.degree(u) / twoM;
  double qv = g.degree(v) / twoM;
  double score = 0.0;
  if (qu > 0.0) score += qu * walkDistribution(g, u, t)[v];
  if (qv > 0.0) score += qv * walkDistribution(g, v, t)[u];
  return score;
}

double crwScore(const Graph& g, int u, int v, int t) {
  if (t < 1) throw std::invalid_argument("crw horizon must be >= 1");
  double sum = 0.0;
  for (int tau = 1; tau <= t; ++tau) sum += lrwScore(g, u, v, tau);
  return sum;
}

std::vector<double> crwScoresFrom(const Graph& g, int u, int t) {
  if (t < 1) throw std::invalid_argument("crw horizon must be >= 1");
  const int n = g.numNodes();
  const double twoM = 2.0 * static_cast<double>(g.numEdges());
  std::vector<double> out(n, 0.0);
  if (twoM == 0.0 || g.degree(u) == 0) return out;
  const double qu = g.degree(u) / twoM;
  std::vector<double> pi(n, 0.0), next(n, 0.0);
  pi[u] = 1.0;
  for (int tau = 1; tau <= t; ++tau) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int a = 0; a < n; ++a) {
      if (pi[a] == 0.0) continue;
      int d = g.degree(a);
      if (d == 0) {
        next[a] += pi[a];
        continue;
      }
      double share = pi[a] / d;
      for (int b : g.neighbors(a)) next[b] += share;
    }
    std::swap(pi, next);
    for (int v = 0; v < n; ++v) out[v] += 2.0 * qu * pi[v];
  }
  return out;
}

std::unordered_map<int, double> propFlow(const Graph& g, int source, int maxDepth) {
  if (maxDepth < 1) throw std::invalid_argument("propflow depth must be >= 1");
  std::unordered_map<int, double> inflow;
  std::vector<int> depth(g.numNodes(), -1);
  depth[source] = 0;
  std::vector<int> order{source};
  // BFS limited to maxDepth
  for (std::size_t head = 0; head < order.size(); ++head) {
    int a = order[head];
    if (depth[a] == maxDepth) continue;
    for (int b : g.neighbors(a)) {
      if (depth[b] < 0) {
        depth[b] = depth[a] + 1;
        order.push_back(b);
      }
    }
  }
  std::unordered_map<int, double> mass;
  mass[source] = 1.0;
  for (int a : order) {
    int d = depth[a];
    if (d == maxDepth) break;  // order is sorted by depth
    auto it = mass.find(a);
    if (it == mass.end() || it->second == 0.0) continue;
    int eligible = 0;
    for (int b : g.neighbors(a)) {
      if (depth[b] == d + 1) ++eligible;
    }
    if (eligible == 0) continue;
    double share = it->second / eligible;
    for (int b : g.neighbors(a)) {
      if (depth[b] != d + 1) continue;
      mass[b] += share;
      inflow[b] += share;
    }
  }
  return inflow;
}

}  // namespace lp
