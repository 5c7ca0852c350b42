#pragma once

// Random-forest regression on positive targets, fitted in log space.

#include <cstdint>
#include <optional>
#include <vector>

namespace iotcarbon {

struct ForestHyperparams {
  int n_trees = 100;
  std::optional<int> max_depth;  // nullopt = unlimited, 0 = single leaf
  int min_samples_leaf = 2;
  double features_per_split = 1.0 / 3.0;
  bool bootstrap = true;
  std::uint64_t seed = 0;
  /// Make predictions monotone in the directions passed to train().
  bool monotone = true;
  /// Place each split uniformly at random inside the gap between the two
  /// neighbouring feature values instead of at its midpoint. Averaged over
  /// trees this interpolates between training points.
  bool random_split_points = true;

  /// Throws Error on an out-of-range field.
  void validate() const;
  /// Number of features tried per split out of `n_features`.
  int features_tried(int n_features) const;

  friend bool operator==(const ForestHyperparams&, const ForestHyperparams&) =
      default;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf energy, > 0

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Flat node array; node 0 is the root. A sample goes left when
/// x[feature] <= threshold.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(const std::vector<double>& x) const;
  int depth() const;
  friend bool operator==(const RegressionTree&, const RegressionTree&) =
      default;
};

/// With monotone directions set, each tree's output is the midpoint (in
/// log space) of its monotone upper envelope, the largest leaf reachable
/// from below the query, and its lower envelope, the smallest leaf
/// reachable from above. Both envelopes equal the plain leaf value wherever
/// the tree is already monotone.
class Forest {
 public:
  Forest() = default;
  Forest(std::vector<RegressionTree> trees, std::vector<int> monotone = {});

  /// Rows of `x` are samples; `y` holds positive targets. `monotone` gives
  /// +1 / -1 / 0 per feature and is kept only when hp.monotone is set.
  /// Trees are grown from per-tree seeds (hp.seed + tree index) and may
  /// train concurrently; the result does not depend on the thread count.
  static Forest train(const std::vector<std::vector<double>>& x,
                      const std::vector<double>& y,
                      const ForestHyperparams& hp,
                      const std::vector<int>& monotone = {},
                      unsigned threads = 0);

  /// exp of the mean log tree output, evaluated relative to the first tree
  /// so identical outputs reproduce their value exactly.
  double predict(const std::vector<double>& x) const;

  const std::vector<RegressionTree>& trees() const { return trees_; }
  const std::vector<int>& monotone() const { return monotone_; }

  friend bool operator==(const Forest& a, const Forest& b) {
    return a.trees_ == b.trees_ && a.monotone_ == b.monotone_;
  }

 private:
  struct Leaf {
    std::vector<double> lo;  // box is lo < x <= hi per feature
    std::vector<double> hi;
    double value;
    double log_value;
  };

  double tree_output(std::size_t t, const std::vector<double>& x) const;

  std::vector<RegressionTree> trees_;
  std::vector<int> monotone_;
  std::vector<std::vector<Leaf>> leaves_;  // per tree, when monotone
};

}  // namespace iotcarbon
