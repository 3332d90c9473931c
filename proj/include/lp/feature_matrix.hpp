#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace lp {

/// Per-node real feature vectors, one row per node id in [0, N).
class NodeFeatureMatrix {
 public:
  NodeFeatureMatrix() = default;

  NodeFeatureMatrix(int nodes, int dim)
      : nodes_(nodes), dim_(dim),
        data_(static_cast<std::size_t>(nodes) * dim, 0.0) {
    if (nodes < 0 || dim < 0) throw std::invalid_argument("negative shape");
  }

  int numNodes() const { return nodes_; }
  int dim() const { return dim_; }

  std::span<const double> row(int u) const {
    check(u);
    return {data_.data() + static_cast<std::size_t>(u) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  std::span<double> row(int u) {
    check(u);
    return {data_.data() + static_cast<std::size_t>(u) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  void set(int u, int j, double value) {
    check(u);
    data_[static_cast<std::size_t>(u) * dim_ + j] = value;
  }

  bool allFinite() const {
    for (double x : data_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

 private:
  void check(int u) const {
    if (u < 0 || u >= nodes_) throw std::out_of_range("feature row out of range");
  }

  int nodes_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace lp
