#pragma once

#include <vector>

namespace lp {

/// minimize c·x  subject to  aUb x <= bUb,  aEq x = bEq,  x >= 0.
struct LpProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> aUb;
  std::vector<double> bUb;
  std::vector<std::vector<double>> aEq;
  std::vector<double> bEq;
};

struct LpResult {
  enum class Status { Optimal, Infeasible, IterLimit };
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

/// Two-phase dense simplex with Bland's rule (deterministic, no cycling).
/// Sized for many small instances: a handful of rows, up to a few
/// thousand variables.
LpResult solveSimplex(const LpProblem& prob, int maxPivots = 20000);

}  // namespace lp
