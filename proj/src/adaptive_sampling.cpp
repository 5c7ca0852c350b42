#include "iotcarbon/adaptive_sampling.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "iotcarbon/rng.h"

namespace iotcarbon {

namespace {

class Selection {
 public:
  Selection(const ConfigSpace& space, Rng& rng) : space_(space), rng_(rng) {}

  bool has(std::uint64_t index) const { return chosen_.count(index) > 0; }
  std::size_t size() const { return order_.size(); }
  const std::vector<std::uint64_t>& order() const { return order_; }

  void add(std::uint64_t index) {
    if (chosen_.insert(index).second) order_.push_back(index);
  }

  /// Up to k fresh uniform indices, added and returned.
  std::vector<std::uint64_t> draw_uniform(std::size_t k) {
    std::vector<std::uint64_t> out;
    auto n = space_.size();
    auto remaining = n - order_.size();
    k = std::min<std::uint64_t>(k, remaining);
    if (order_.size() * 2 <= n) {
      while (out.size() < k) {
        auto index = rng_.uniform_index(n);
        if (has(index)) continue;
        add(index);
        out.push_back(index);
      }
      return out;
    }
    std::vector<std::uint64_t> pool;
    for (std::uint64_t i = 0; i < n; ++i)
      if (!has(i)) pool.push_back(i);
    for (auto j : rng_.sample_distinct(pool.size(), k)) {
      add(pool[j]);
      out.push_back(pool[j]);
    }
    return out;
  }

 private:
  const ConfigSpace& space_;
  Rng& rng_;
  std::unordered_set<std::uint64_t> chosen_;
  std::vector<std::uint64_t> order_;
};

}  // namespace

std::vector<KernelConfig> uniform_sample(const ConfigSpace& space,
                                         std::size_t budget,
                                         std::uint64_t seed) {
  if (budget == 0) return {};
  if (space.size() == 0) throw Error("cannot sample from an empty space");
  if (budget > space.size())
    throw Error("budget " + std::to_string(budget) + " exceeds space size " +
                std::to_string(space.size()));
  Rng rng(seed);
  std::vector<KernelConfig> out;
  for (auto index : rng.sample_distinct(space.size(), budget))
    out.push_back(space.at(index));
  return out;
}

std::vector<KernelConfig> adaptive_sample(const ConfigSpace& space,
                                          EnergyEstimate current,
                                          const EnergyOracle& oracle,
                                          const RefitFn& refit,
                                          std::size_t budget,
                                          std::uint64_t seed,
                                          const AdaptiveOptions& options) {
  if (budget == 0) return {};
  if (space.size() == 0) throw Error("cannot sample from an empty space");
  if (budget > space.size())
    throw Error("budget " + std::to_string(budget) + " exceeds space size " +
                std::to_string(space.size()));
  if (options.rounds < 1) throw Error("adaptive sampling needs >= 1 round");

  Rng rng(seed);
  Selection sel(space, rng);
  std::vector<KernelConfig> configs;
  std::vector<double> labels;
  auto label = [&](const std::vector<std::uint64_t>& indices) {
    for (auto index : indices) {
      configs.push_back(space.at(index));
      labels.push_back(oracle(configs.back()));
    }
  };

  auto rounds = static_cast<std::size_t>(options.rounds);
  std::size_t per_round = budget / rounds;
  std::size_t first = budget - per_round * (rounds - 1);
  label(sel.draw_uniform(first));

  for (std::size_t r = 1; r < rounds && sel.size() < budget; ++r) {
    if (!current || r > 1) current = refit(configs, labels);
    std::size_t quota = std::min(per_round, budget - sel.size());
    std::size_t explore = std::max<std::size_t>(1, quota / 2);
    explore = std::min(explore, quota);

    auto probes = sel.draw_uniform(explore);
    label(probes);

    struct Scored {
      double error;
      std::uint64_t index;
    };
    std::vector<Scored> scored;
    for (std::size_t j = 0; j < probes.size(); ++j) {
      double truth = labels[labels.size() - probes.size() + j];
      double guess = current(space.at(probes[j]));
      scored.push_back({std::abs(guess - truth) / truth, probes[j]});
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      return a.error != b.error ? a.error > b.error : a.index < b.index;
    });

    std::size_t target = sel.size() + (quota - probes.size());
    std::vector<std::uint64_t> focused;
    for (const auto& s : scored) {
      for (auto nb : space.neighbors(s.index)) {
        if (sel.size() >= target) break;
        if (sel.has(nb)) continue;
        sel.add(nb);
        focused.push_back(nb);
      }
      if (sel.size() >= target) break;
    }
    label(focused);
    if (sel.size() < target) label(sel.draw_uniform(target - sel.size()));
  }
  if (sel.size() < budget) label(sel.draw_uniform(budget - sel.size()));
  return configs;
}

}  // namespace iotcarbon
