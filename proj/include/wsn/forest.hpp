#ifndef WSN_FOREST_HPP_
#define WSN_FOREST_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace wsn {

/// Regression tree grown by exhaustive SSE-minimising splits over every
/// feature. Leaves predict the mean of their training targets.
class RegressionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;  // x[feature] <= threshold goes left
    int left = -1;
    int right = -1;
    double value = 0.0;
  };

  /// `rows` is row-major M x N; `sample` lists the row indices to train on
  /// (repeats allowed, as produced by a bootstrap).
  static RegressionTree fit(std::span<const double> rows, std::size_t n_cols,
                            std::span<const double> y, std::span<const std::size_t> sample,
                            int min_leaf = 1);

  double predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

/// Fits one tree on every row, no resampling.
RegressionTree tree_fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y,
                        int min_leaf = 1);

struct ForestOptions {
  int n_trees = 20;
  int min_leaf = 1;
  std::uint64_t seed = 1;
};

/// Bagged regression trees; each tree sees a bootstrap resample drawn from
/// its own seed hash_seed({forest seed, tree index}). Prediction is the mean
/// over trees.
class ForestModel {
 public:
  static ForestModel fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y,
                         const ForestOptions& options = {});

  double predict(std::span<const double> x) const;
  std::vector<double> predict_rows(std::span<const double> rows) const;

  const std::vector<RegressionTree>& trees() const noexcept { return trees_; }
  const std::vector<std::uint64_t>& tree_seeds() const noexcept { return seeds_; }
  std::size_t n_features() const noexcept { return n_cols_; }

 private:
  std::vector<RegressionTree> trees_;
  std::vector<std::uint64_t> seeds_;
  std::size_t n_cols_ = 0;
};

}  // namespace wsn

#endif  // WSN_FOREST_HPP_
