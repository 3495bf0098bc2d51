#include "wsn/forest.hpp"

#include <algorithm>
#include <numeric>

#include "wsn/error.hpp"
#include "wsn/rng.hpp"

namespace wsn {

namespace {

struct Builder {
  std::span<const double> rows;
  std::size_t n_cols;
  std::span<const double> y;
  int min_leaf;
  std::vector<RegressionTree::Node>& nodes;

  double x(std::size_t row, std::size_t col) const { return rows[row * n_cols + col]; }

  int make_leaf(const std::vector<std::size_t>& idx) {
    RegressionTree::Node leaf;
    double lo = y[idx.front()], hi = lo, sum = 0.0;
    for (auto i : idx) {
      lo = std::min(lo, y[i]);
      hi = std::max(hi, y[i]);
      sum += y[i];
    }
    leaf.value = lo == hi ? lo : std::clamp(sum / static_cast<double>(idx.size()), lo, hi);
    nodes.push_back(leaf);
    return static_cast<int>(nodes.size() - 1);
  }

  int grow(std::vector<std::size_t> idx) {
    const std::size_t n = idx.size();
    const bool pure = std::all_of(idx.begin(), idx.end(), [&](auto i) { return y[i] == y[idx.front()]; });
    const auto leaf_min = static_cast<std::size_t>(min_leaf);
    if (pure || n < 2 * leaf_min) return make_leaf(idx);

    double total = 0.0;
    for (auto i : idx) total += y[i];

    // Maximising S_L^2/n_L + S_R^2/n_R minimises the summed child SSE.
    double best_score = -1.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> sorted = idx;
    for (std::size_t f = 0; f < n_cols; ++f) {
      std::sort(sorted.begin(), sorted.end(), [&](auto a, auto b) {
        return x(a, f) != x(b, f) ? x(a, f) < x(b, f) : a < b;
      });
      double left_sum = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_sum += y[sorted[k]];
        const std::size_t n_left = k + 1;
        const std::size_t n_right = n - n_left;
        const double lo = x(sorted[k], f);
        const double hi = x(sorted[k + 1], f);
        if (lo == hi || n_left < leaf_min || n_right < leaf_min) continue;
        const double right_sum = total - left_sum;
        const double score = left_sum * left_sum / static_cast<double>(n_left) +
                             right_sum * right_sum / static_cast<double>(n_right);
        if (score > best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          double mid = lo + 0.5 * (hi - lo);
          if (!(mid < hi)) mid = lo;
          best_threshold = mid;
        }
      }
    }
    if (best_feature < 0) return make_leaf(idx);

    std::vector<std::size_t> left, right;
    for (auto i : idx)
      (x(i, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right).push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    const int self = static_cast<int>(nodes.size());
    nodes.push_back({best_feature, best_threshold, -1, -1, 0.0});
    const int l = grow(std::move(left));
    const int r = grow(std::move(right));
    nodes[static_cast<std::size_t>(self)].left = l;
    nodes[static_cast<std::size_t>(self)].right = r;
    return self;
  }
};

void check_shape(std::span<const double> rows, std::size_t n_cols, std::span<const double> y) {
  require(n_cols > 0 && rows.size() == y.size() * n_cols, ErrorCode::kInvalidArgument,
          "design shape does not match target length");
  require(y.size() >= 2, ErrorCode::kInvalidArgument, "need at least 2 samples");
}

}  // namespace

RegressionTree RegressionTree::fit(std::span<const double> rows, std::size_t n_cols,
                                   std::span<const double> y, std::span<const std::size_t> sample,
                                   int min_leaf) {
  check_shape(rows, n_cols, y);
  require(min_leaf >= 1, ErrorCode::kInvalidArgument, "min_leaf must be >= 1");
  require(!sample.empty(), ErrorCode::kInvalidArgument, "empty training sample");
  RegressionTree tree;
  Builder builder{rows, n_cols, y, min_leaf, tree.nodes_};
  builder.grow(std::vector<std::size_t>(sample.begin(), sample.end()));
  return tree;
}

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t at = 0;
  while (nodes_[at].feature >= 0) {
    const auto& node = nodes_[at];
    at = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                              : node.right);
  }
  return nodes_[at].value;
}

RegressionTree tree_fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y,
                        int min_leaf) {
  std::vector<std::size_t> all(y.size());
  std::iota(all.begin(), all.end(), 0);
  return RegressionTree::fit(rows, n_cols, y, all, min_leaf);
}

ForestModel ForestModel::fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y,
                             const ForestOptions& options) {
  check_shape(rows, n_cols, y);
  require(options.n_trees >= 1, ErrorCode::kInvalidArgument, "n_trees must be >= 1");
  ForestModel model;
  model.n_cols_ = n_cols;
  const std::size_t m = y.size();
  for (int t = 0; t < options.n_trees; ++t) {
    const std::uint64_t seed = hash_seed({options.seed, static_cast<std::uint64_t>(t)});
    Rng rng(seed);
    std::vector<std::size_t> sample(m);
    for (auto& s : sample) s = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 1));
    model.trees_.push_back(RegressionTree::fit(rows, n_cols, y, sample, options.min_leaf));
    model.seeds_.push_back(seed);
  }
  return model;
}

double ForestModel::predict(std::span<const double> x) const {
  require(x.size() == n_cols_, ErrorCode::kInvalidArgument, "feature count mismatch");
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict(x);
  return sum / static_cast<double>(trees_.size());
}

std::vector<double> ForestModel::predict_rows(std::span<const double> rows) const {
  require(rows.size() % n_cols_ == 0, ErrorCode::kInvalidArgument, "row length mismatch");
  std::vector<double> out;
  for (std::size_t r = 0; r < rows.size(); r += n_cols_) out.push_back(predict(rows.subspan(r, n_cols_)));
  return out;
}

}  // namespace wsn
