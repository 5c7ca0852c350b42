#include "iotcarbon/forest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "iotcarbon/error.h"
#include "iotcarbon/rng.h"

namespace iotcarbon {

void ForestHyperparams::validate() const {
  if (n_trees < 1) throw Error("n_trees must be at least 1");
  if (max_depth && *max_depth < 0) throw Error("max_depth must be >= 0");
  if (min_samples_leaf < 1) throw Error("min_samples_leaf must be at least 1");
  if (!(features_per_split > 0.0 && features_per_split <= 1.0))
    throw Error("features_per_split must lie in (0, 1]");
}

int ForestHyperparams::features_tried(int n_features) const {
  int k = static_cast<int>(std::floor(n_features * features_per_split + 1e-9));
  return std::clamp(k, 1, std::max(n_features, 1));
}

double RegressionTree::predict(const std::vector<double>& x) const {
  int i = 0;
  while (!nodes[i].is_leaf())
    i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left
                                                   : nodes[i].right;
  return nodes[i].value;
}

int RegressionTree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    if (!nodes[i].is_leaf()) {
      d[nodes[i].left] = d[i] + 1;
      d[nodes[i].right] = d[i] + 1;
    }
  }
  return best;
}

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;  // gap midpoint while searching
  double gain = 0.0;
  double below = 0.0;  // neighbouring feature values around the gap
  double above = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& x,
              const std::vector<double>& y, const std::vector<double>& logy,
              const ForestHyperparams& hp, std::uint64_t seed)
      : x_(x), y_(y), logy_(logy), hp_(hp), rng_(seed) {}

  RegressionTree build() {
    std::size_t n = y_.size();
    std::vector<int> in_bag(n);
    if (hp_.bootstrap) {
      for (auto& i : in_bag) i = static_cast<int>(rng_.uniform_index(n));
      std::sort(in_bag.begin(), in_bag.end());
    } else {
      std::iota(in_bag.begin(), in_bag.end(), 0);
    }
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    grow(in_bag, all, 0);
    return std::move(tree_);
  }

 private:
  int grow(const std::vector<int>& bag, const std::vector<int>& all,
           int depth) {
    int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    std::optional<Split> split;
    if (!hp_.max_depth || depth < *hp_.max_depth) split = best_split(bag);
    if (!split) {
      tree_.nodes[id].value = leaf_value(all);
      return id;
    }
    std::vector<int> bag_l, bag_r, all_l, all_r;
    for (int i : bag)
      (x_[i][split->feature] <= split->threshold ? bag_l : bag_r).push_back(i);
    for (int i : all)
      (x_[i][split->feature] <= split->threshold ? all_l : all_r).push_back(i);
    int left = grow(bag_l, all_l, depth + 1);
    int right = grow(bag_r, all_r, depth + 1);
    auto& node = tree_.nodes[id];
    node.feature = split->feature;
    node.threshold = split->threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  // Energy of a leaf from every training row routed to it: the shared value
  // when all agree, else the exponentiated mean log.
  double leaf_value(const std::vector<int>& rows) const {
    bool same = std::all_of(rows.begin(), rows.end(),
                            [&](int i) { return y_[i] == y_[rows[0]]; });
    if (same) return y_[rows[0]];
    double sum = 0.0;
    for (int i : rows) sum += logy_[i];
    return std::exp(sum / static_cast<double>(rows.size()));
  }

  std::optional<Split> best_split(const std::vector<int>& bag) {
    auto n = static_cast<int>(bag.size());
    if (n < 2 * hp_.min_samples_leaf) return std::nullopt;
    bool constant = std::all_of(bag.begin(), bag.end(),
                                [&](int i) { return y_[i] == y_[bag[0]]; });
    if (constant) return std::nullopt;

    int n_features = static_cast<int>(x_[0].size());
    std::vector<int> order(n_features);
    std::iota(order.begin(), order.end(), 0);
    rng_.shuffle(order);
    int tried_target = hp_.features_tried(n_features);

    std::optional<Split> best;
    for (int k = 0; k < n_features; ++k) {
      // Keep drawing features past the quota until one yields a split.
      if (k >= tried_target && best) break;
      scan_feature(order[k], bag, best);
    }
    if (best && hp_.random_split_points) {
      double t = best->below + rng_.uniform01() * (best->above - best->below);
      if (t >= best->below && t < best->above) best->threshold = t;
    }
    return best;
  }

  void scan_feature(int f, const std::vector<int>& bag,
                    std::optional<Split>& best) {
    auto n = bag.size();
    pairs_.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      pairs_[j] = {x_[bag[j]][f], logy_[bag[j]]};
    std::sort(pairs_.begin(), pairs_.end());
    double total = 0.0;
    for (const auto& p : pairs_) total += p.second;
    double left = 0.0;
    auto m = static_cast<std::size_t>(hp_.min_samples_leaf);
    double parent = total * total / static_cast<double>(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      left += pairs_[j].second;
      if (pairs_[j].first == pairs_[j + 1].first) continue;
      std::size_t nl = j + 1, nr = n - nl;
      if (nl < m || nr < m) continue;
      double right = total - left;
      double mean_l = left / nl, mean_r = right / nr;
      double gain = left * mean_l + right * mean_r - parent;
      if (!(gain > 0.0)) continue;
      double threshold = 0.5 * (pairs_[j].first + pairs_[j + 1].first);
      bool better = !best || gain > best->gain ||
                    (gain == best->gain &&
                     (f < best->feature ||
                      (f == best->feature && threshold < best->threshold)));
      if (better)
        best = Split{f, threshold, gain, pairs_[j].first, pairs_[j + 1].first};
    }
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<double>& y_;
  const std::vector<double>& logy_;
  const ForestHyperparams& hp_;
  Rng rng_;
  RegressionTree tree_;
  std::vector<std::pair<double, double>> pairs_;
};

}  // namespace

Forest Forest::train(const std::vector<std::vector<double>>& x,
                     const std::vector<double>& y, const ForestHyperparams& hp,
                     const std::vector<int>& monotone, unsigned threads) {
  hp.validate();
  if (x.size() != y.size()) throw Error("feature and target counts differ");
  if (y.empty()) throw Error("cannot train on an empty dataset");
  if (y.size() < static_cast<std::size_t>(hp.min_samples_leaf))
    throw Error("dataset has " + std::to_string(y.size()) +
                " samples, fewer than min_samples_leaf " +
                std::to_string(hp.min_samples_leaf));
  for (double v : y)
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error("targets must be positive and finite");
  std::vector<double> logy(y.size());
  std::transform(y.begin(), y.end(), logy.begin(),
                 [](double v) { return std::log(v); });

  std::vector<RegressionTree> trees(hp.n_trees);
  auto work = [&](unsigned first, unsigned stride) {
    for (auto t = first; t < trees.size(); t += stride)
      trees[t] = TreeBuilder(x, y, logy, hp, hp.seed + t).build();
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, hp.n_trees);
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
    for (auto& th : pool) th.join();
  }
  return Forest(std::move(trees), hp.monotone ? monotone : std::vector<int>{});
}

Forest::Forest(std::vector<RegressionTree> trees, std::vector<int> monotone)
    : trees_(std::move(trees)), monotone_(std::move(monotone)) {
  bool any = std::any_of(monotone_.begin(), monotone_.end(),
                         [](int d) { return d != 0; });
  if (!any) {
    monotone_.clear();
    return;
  }
  const double inf = std::numeric_limits<double>::infinity();
  auto n = monotone_.size();
  for (const auto& tree : trees_) {
    std::vector<Leaf> leaves;
    // Depth-first walk carrying each node's box.
    std::vector<std::pair<int, Leaf>> stack;
    stack.push_back({0, Leaf{std::vector<double>(n, -inf),
                             std::vector<double>(n, inf), 0.0, 0.0}});
    while (!stack.empty()) {
      auto [id, box] = std::move(stack.back());
      stack.pop_back();
      const auto& node = tree.nodes.at(id);
      if (node.is_leaf()) {
        box.value = node.value;
        box.log_value = std::log(node.value);
        leaves.push_back(std::move(box));
        continue;
      }
      if (static_cast<std::size_t>(node.feature) >= n)
        throw Error("tree splits on a feature outside the monotone layout");
      Leaf left = box, right = std::move(box);
      left.hi[node.feature] = std::min(left.hi[node.feature], node.threshold);
      right.lo[node.feature] = std::max(right.lo[node.feature], node.threshold);
      stack.push_back({node.right, std::move(right)});
      stack.push_back({node.left, std::move(left)});
    }
    leaves_.push_back(std::move(leaves));
  }
}

double Forest::tree_output(std::size_t t, const std::vector<double>& x) const {
  double plain = trees_[t].predict(x);
  if (monotone_.empty()) return plain;
  const double inf = std::numeric_limits<double>::infinity();
  double upper = -inf, lower = inf;
  for (const auto& leaf : leaves_[t]) {
    // Does the box hold a point below x (then it bounds x from below) or
    // above x (then it bounds x from above)?
    bool below = true, above = true;
    for (std::size_t f = 0; f < monotone_.size() && (below || above); ++f) {
      int d = monotone_[f];
      bool has_le = leaf.lo[f] < x[f];   // some y_f <= x_f
      bool has_ge = leaf.hi[f] >= x[f];  // some y_f >= x_f
      if (d > 0) {
        below = below && has_le;
        above = above && has_ge;
      } else if (d < 0) {
        below = below && has_ge;
        above = above && has_le;
      } else {
        bool inside = has_le && has_ge;
        below = below && inside;
        above = above && inside;
      }
    }
    if (below) upper = std::max(upper, leaf.log_value);
    if (above) lower = std::min(lower, leaf.log_value);
  }
  if (upper == lower) return plain;
  return std::exp(0.5 * (upper + lower));
}

double Forest::predict(const std::vector<double>& x) const {
  if (trees_.empty()) throw Error("forest has no trees");
  double e0 = tree_output(0, x);
  double log0 = std::log(e0);
  double sum = 0.0;
  for (std::size_t t = 0; t < trees_.size(); ++t)
    sum += std::log(tree_output(t, x)) - log0;
  return e0 * std::exp(sum / static_cast<double>(trees_.size()));
}

}  // namespace iotcarbon
