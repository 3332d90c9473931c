#include "lp/cocluster.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "lp/rng.hpp"

namespace lp {

namespace {

inline double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

// n * H(e/n) in bits
inline double blockCost(long long e, long long n) {
  if (n <= 0) return 0.0;
  return xlog2x(static_cast<double>(n)) - xlog2x(static_cast<double>(e)) -
         xlog2x(static_cast<double>(n - e));
}

// Mutable fitting state for one side (rows or columns).
struct FitState {
  int kRows, kCols;
  std::vector<long long> edges;      // kRows x kCols
  std::vector<long long> rowsCount;  // rows per row group
  std::vector<long long> colsCount;  // cols per col group

  long long& e(int r, int c) { return edges[static_cast<std::size_t>(r) * kCols + c]; }

  double totalCost() const {
    double cost = 0.0;
    for (int r = 0; r < kRows; ++r) {
      for (int c = 0; c < kCols; ++c) {
        cost += blockCost(edges[static_cast<std::size_t>(r) * kCols + c],
                          rowsCount[r] * colsCount[c]);
      }
    }
    return cost;
  }

  // Coding cost of row group r, with `deltaRows` extra rows and the
  // neighbor histogram `cnt` added (used to evaluate candidate moves).
  double rowGroupCost(int r, long long deltaRows, const std::vector<long long>& cnt,
                      double sign) const {
    long long rows = rowsCount[r] + deltaRows;
    double cost = 0.0;
    for (int c = 0; c < kCols; ++c) {
      long long eb = edges[static_cast<std::size_t>(r) * kCols + c] +
                     static_cast<long long>(sign * cnt[c]);
      cost += blockCost(eb, rows * colsCount[c]);
    }
    return cost;
  }

  double colGroupCost(int c, long long deltaCols, const std::vector<long long>& cnt,
                      double sign) const {
    long long cols = colsCount[c] + deltaCols;
    double cost = 0.0;
    for (int r = 0; r < kRows; ++r) {
      long long eb = edges[static_cast<std::size_t>(r) * kCols + c] +
                     static_cast<long long>(sign * cnt[r]);
      cost += blockCost(eb, rowsCount[r] * cols);
    }
    return cost;
  }
};

}  // namespace

int defaultGroupCount(int numNodes) {
  int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(numNodes))));
  return std::max(2, std::min(64, std::min(k, numNodes)));
}

CoclusterModel fitCocluster(const Graph& g, int kRows, int kCols, std::uint64_t seed,
                            int maxSweeps, std::vector<double>* costTrace) {
  const int n = g.numNodes();
  if (kRows < 1 || kRows > n || kCols < 1 || kCols > n) {
    throw std::invalid_argument("group count must lie in [1, N]");
  }
  if (maxSweeps < 1) throw std::invalid_argument("maxSweeps must be >= 1");

  CoclusterModel model;
  model.kRows = kRows;
  model.kCols = kCols;
  model.graphHash = g.hash();
  model.rowGroup.resize(n);
  model.colGroup.resize(n);

  Rng rng(seed);
  std::uniform_int_distribution<int> rowDist(0, kRows - 1), colDist(0, kCols - 1);
  for (int u = 0; u < n; ++u) model.rowGroup[u] = rowDist(rng);
  for (int u = 0; u < n; ++u) model.colGroup[u] = colDist(rng);

  FitState st;
  st.kRows = kRows;
  st.kCols = kCols;
  st.edges.assign(static_cast<std::size_t>(kRows) * kCols, 0);
  st.rowsCount.assign(kRows, 0);
  st.colsCount.assign(kCols, 0);
  for (int u = 0; u < n; ++u) {
    ++st.rowsCount[model.rowGroup[u]];
    ++st.colsCount[model.colGroup[u]];
    for (int v : g.neighbors(u)) ++st.e(model.rowGroup[u], model.colGroup[v]);
  }

  double cost = st.totalCost();
  if (costTrace) costTrace->push_back(cost);
  constexpr double kImprove = 1e-9;

  std::vector<long long> cnt(std::max(kRows, kCols), 0);
  for (int sweep = 0; sweep < maxSweeps; ++sweep) {
    bool moved = false;

    // Row pass.
    for (int u = 0; u < n; ++u) {
      std::fill(cnt.begin(), cnt.begin() + kCols, 0);
      for (int v : g.neighbors(u)) ++cnt[model.colGroup[v]];
      int r0 = model.rowGroup[u];
      double baseR0 = st.rowGroupCost(r0, 0, cnt, 0.0);
      double r0Without = st.rowGroupCost(r0, -1, cnt, -1.0);
      int best = r0;
      double bestDelta = 0.0;
      for (int r = 0; r < kRows; ++r) {
        if (r == r0) continue;
        double baseR = st.rowGroupCost(r, 0, cnt, 0.0);
        double rWith = st.rowGroupCost(r, +1, cnt, +1.0);
        double delta = (r0Without + rWith) - (baseR0 + baseR);
        if (delta < bestDelta - kImprove) {
          bestDelta = delta;
          best = r;
        }
      }
      if (best != r0) {
        --st.rowsCount[r0];
        ++st.rowsCount[best];
        for (int c = 0; c < kCols; ++c) {
          st.e(r0, c) -= cnt[c];
          st.e(best, c) += cnt[c];
        }
        model.rowGroup[u] = best;
        cost += bestDelta;
        moved = true;
      }
    }

    // Column pass.
    for (int u = 0; u < n; ++u) {
      std::fill(cnt.begin(), cnt.begin() + kRows, 0);
      for (int v : g.neighbors(u)) ++cnt[model.rowGroup[v]];
      int c0 = model.colGroup[u];
      double baseC0 = st.colGroupCost(c0, 0, cnt, 0.0);
      double c0Without = st.colGroupCost(c0, -1, cnt, -1.0);
      int best = c0;
      double bestDelta = 0.0;
      for (int c = 0; c < kCols; ++c) {
        if (c == c0) continue;
        double baseC = st.colGroupCost(c, 0, cnt, 0.0);
        double cWith = st.colGroupCost(c, +1, cnt, +1.0);
        double delta = (c0Without + cWith) - (baseC0 + baseC);
        if (delta < bestDelta - kImprove) {
          bestDelta = delta;
          best = c;
        }
      }
      if (best != c0) {
        --st.colsCount[c0];
        ++st.colsCount[best];
        for (int r = 0; r < kRows; ++r) {
          st.e(r, c0) -= cnt[r];
          st.e(r, best) += cnt[r];
        }
        model.colGroup[u] = best;
        cost += bestDelta;
        moved = true;
      }
    }

    if (costTrace) costTrace->push_back(st.totalCost());
    if (!moved) break;
  }

  model.blockEdges = st.edges;
  model.blockCells.assign(static_cast<std::size_t>(kRows) * kCols, 0);
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      model.blockCells[static_cast<std::size_t>(r) * kCols + c] =
          st.rowsCount[r] * st.colsCount[c];
    }
  }
  return model;
}

double CoclusterModel::density(int u, int v) const {
  int r = rowGroup.at(u);
  int c = colGroup.at(v);
  return (static_cast<double>(edges(r, c)) + 1.0) /
         (static_cast<double>(cells(r, c)) + 2.0);
}

std::pair<double, double> CoclusterModel::surprise(int u, int v) const {
  double d = density(u, v);
  return {-std::log2(d), -std::log2(1.0 - d)};
}

double CoclusterModel::codingCost() const {
  double cost = 0.0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) cost += blockCost(edges(r, c), cells(r, c));
  }
  return cost;
}

void CoclusterModel::save(std::ostream& os) const {
  os << "cocluster v1\n";
  os << graphHash << ' ' << kRows << ' ' << kCols << ' ' << rowGroup.size() << '\n';
  for (std::size_t i = 0; i < rowGroup.size(); ++i) {
    os << rowGroup[i] << (i + 1 == rowGroup.size() ? '\n' : ' ');
  }
  for (std::size_t i = 0; i < colGroup.size(); ++i) {
    os << colGroup[i] << (i + 1 == colGroup.size() ? '\n' : ' ');
  }
  for (std::size_t i = 0; i < blockEdges.size(); ++i) {
    os << blockEdges[i] << (i + 1 == blockEdges.size() ? '\n' : ' ');
  }
  for (std::size_t i = 0; i < blockCells.size(); ++i) {
    os << blockCells[i] << (i + 1 == blockCells.size() ? '\n' : ' ');
  }
}

CoclusterModel CoclusterModel::load(std::istream& is) {
  std::string tag, version;
  is >> tag >> version;
  if (tag != "cocluster" || version != "v1") {
    throw std::runtime_error("not a cocluster model file");
  }
  CoclusterModel m;
  std::size_t n = 0;
  is >> m.graphHash >> m.kRows >> m.kCols >> n;
  m.rowGroup.resize(n);
  m.colGroup.resize(n);
  m.blockEdges.resize(static_cast<std::size_t>(m.kRows) * m.kCols);
  m.blockCells.resize(m.blockEdges.size());
  for (auto& x : m.rowGroup) is >> x;
  for (auto& x : m.colGroup) is >> x;
  for (auto& x : m.blockEdges) is >> x;
  for (auto& x : m.blockCells) is >> x;
  if (!is) throw std::runtime_error("truncated cocluster model file");
  return m;
}

}  // namespace lp
