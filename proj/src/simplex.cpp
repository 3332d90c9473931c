#include "lp/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace lp {

namespace {

constexpr double kEps = 1e-10;

struct Tableau {
  // rows m, columns total (structural + slack + artificial) + rhs
  std::size_t m, cols;
  std::vector<double> a;  // (m) x (cols + 1), row-major; last column is rhs
  std::vector<double> z;  // reduced-cost row, cols + 1 (last is -objective)
  std::vector<int> basis;

  double& at(std::size_t r, std::size_t c) { return a[r * (cols + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * (cols + 1) + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    double piv = at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
    }
    double f = z[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c <= cols; ++c) z[c] -= f * at(pr, c);
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Bland's rule: entering column = lowest index with negative reduced
  // cost; leaving row = min ratio, ties by lowest basis variable index.
  // Returns false when optimal; throws on unboundedness.
  bool step(std::size_t usableCols, int& pivotsLeft) {
    std::size_t pc = cols;
    for (std::size_t c = 0; c < usableCols; ++c) {
      if (z[c] < -kEps) {
        pc = c;
        break;
      }
    }
    if (pc == cols) return false;
    std::size_t pr = m;
    double bestRatio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      double coef = at(r, pc);
      if (coef <= kEps) continue;
      double ratio = at(r, cols) / coef;
      if (ratio < bestRatio - kEps ||
          (ratio < bestRatio + kEps && (pr == m || basis[r] < basis[pr]))) {
        bestRatio = ratio;
        pr = r;
      }
    }
    if (pr == m) throw std::runtime_error("simplex: unbounded direction");
    pivot(pr, pc);
    --pivotsLeft;
    return true;
  }
};

}  // namespace

LpResult solveSimplex(const LpProblem& prob, int maxPivots) {
  const std::size_t n = prob.c.size();
  const std::size_t mUb = prob.aUb.size();
  const std::size_t mEq = prob.aEq.size();
  const std::size_t m = mUb + mEq;
  for (const auto& row : prob.aUb) {
    if (row.size() != n) throw std::invalid_argument("simplex: bad ub row size");
  }
  for (const auto& row : prob.aEq) {
    if (row.size() != n) throw std::invalid_argument("simplex: bad eq row size");
  }

  Tableau t;
  t.m = m;
  t.cols = n + mUb + m;  // structural + slacks + artificials
  t.a.assign(m * (t.cols + 1), 0.0);
  t.z.assign(t.cols + 1, 0.0);
  t.basis.assign(m, -1);

  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = r < mUb ? prob.aUb[r] : prob.aEq[r - mUb];
    double rhs = r < mUb ? prob.bUb[r] : prob.bEq[r - mUb];
    double sign = rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign * row[c];
    if (r < mUb) t.at(r, n + r) = sign;  // slack
    t.at(r, t.cols) = sign * rhs;
    t.at(r, n + mUb + r) = 1.0;  // artificial
    t.basis[r] = static_cast<int>(n + mUb + r);
  }

  // Phase 1: minimize sum of artificials.
  for (std::size_t c = 0; c <= t.cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += t.at(r, c);
    t.z[c] = (c >= n + mUb && c < t.cols) ? 0.0 : -s;
  }

  LpResult res;
  int pivotsLeft = maxPivots;
  try {
    while (t.step(n + mUb, pivotsLeft)) {
      if (pivotsLeft <= 0) {
        res.status = LpResult::Status::IterLimit;
        return res;
      }
    }
  } catch (const std::runtime_error&) {
    res.status = LpResult::Status::IterLimit;
    return res;
  }
  if (-t.z[t.cols] > 1e-7) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }

  // Drive surviving artificials out of the basis (degenerate rows).
  const std::size_t artBegin = n + mUb;
  for (std::size_t r = 0; r < m; ++r) {
    if (static_cast<std::size_t>(t.basis[r]) < artBegin) continue;
    std::size_t pc = t.cols;
    for (std::size_t c = 0; c < artBegin; ++c) {
      if (std::abs(t.at(r, c)) > kEps) {
        pc = c;
        break;
      }
    }
    if (pc < t.cols) t.pivot(r, pc);
    // otherwise the row is redundant; its rhs is 0 and it stays inert
  }

  // Phase 2: restore the true objective's reduced costs.
  std::fill(t.z.begin(), t.z.end(), 0.0);
  for (std::size_t c = 0; c < n; ++c) t.z[c] = prob.c[c];
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t b = static_cast<std::size_t>(t.basis[r]);
    if (b >= n) continue;
    double cb = prob.c[b];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= t.cols; ++c) t.z[c] -= cb * t.at(r, c);
  }

  try {
    while (t.step(artBegin, pivotsLeft)) {
      if (pivotsLeft <= 0) {
        res.status = LpResult::Status::IterLimit;
        return res;
      }
    }
  } catch (const std::runtime_error&) {
    res.status = LpResult::Status::IterLimit;
    return res;
  }

  res.status = LpResult::Status::Optimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t b = static_cast<std::size_t>(t.basis[r]);
    if (b < n) res.x[b] = t.at(r, t.cols);
  }
  res.objective = 0.0;
  for (std::size_t c = 0; c < n; ++c) res.objective += prob.c[c] * res.x[c];
  return res;
}

}  // namespace lp
