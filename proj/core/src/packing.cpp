#include <algorithm>
#include <numeric>

#include "ors/follower.hpp"

namespace ors {

namespace {

__extension__ using Wide = __int128;

struct Packer {
  std::vector<PackItem> items;  // sorted by density
  std::vector<int> original;    // item position in the caller's span
  std::vector<char> same_as_prev;
  std::vector<int> caps;
  std::vector<int> load;
  std::vector<int> bin;   // current bin per sorted item
  std::vector<int> best_bin;
  std::int64_t best = 0;

  // Fractional bound on the value obtainable from items [i, n) with `room` free slots.
  long double bound(std::size_t i, long long room) const {
    long double extra = 0.0L;
    for (std::size_t k = i; k < items.size() && room > 0; ++k) {
      const auto w = static_cast<long long>(items[k].weight);
      if (w <= room) {
        extra += static_cast<long double>(items[k].value);
        room -= w;
      } else {
        extra += static_cast<long double>(items[k].value) * static_cast<long double>(room) / static_cast<long double>(w);
        room = 0;
      }
    }
    return extra;
  }

  void dfs(std::size_t i, std::int64_t value, long long room, bool prev_skipped) {
    if (value > best) {
      best = value;
      best_bin = bin;
    }
    if (i == items.size() || room <= 0) return;
    if (static_cast<long double>(value) + bound(i, room) < static_cast<long double>(best) + 0.5L) return;

    const int w = items[i].weight;
    // Identical items are used in order: once one is skipped, later copies are too.
    const bool forced_skip = same_as_prev[i] && prev_skipped;
    if (!forced_skip) {
      for (std::size_t k = 0; k < caps.size(); ++k) {
        if (caps[k] - load[k] < w) continue;
        bool duplicate = false;
        for (std::size_t j = 0; j < k && !duplicate; ++j) duplicate = caps[j] == caps[k] && load[j] == load[k];
        if (duplicate) continue;
        load[k] += w;
        bin[i] = static_cast<int>(k);
        dfs(i + 1, value + items[i].value, room - w, false);
        bin[i] = -1;
        load[k] -= w;
      }
    }
    dfs(i + 1, value, room, true);
  }
};

}  // namespace

PackResult solve_multiple_knapsack(std::span<const PackItem> items, std::span<const int> capacities) {
  PackResult result;
  result.bin_of.assign(items.size(), -1);
  if (capacities.empty()) return result;
  const int max_cap = *std::max_element(capacities.begin(), capacities.end());

  Packer pk;
  std::vector<int> order;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].value > 0 && items[i].weight <= max_cap && items[i].weight >= 0) order.push_back(static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = items[static_cast<std::size_t>(a)];
    const auto& y = items[static_cast<std::size_t>(b)];
    // value density descending without division
    const Wide lhs = static_cast<Wide>(x.value) * std::max(1, y.weight);
    const Wide rhs = static_cast<Wide>(y.value) * std::max(1, x.weight);
    if (lhs != rhs) return lhs > rhs;
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.value > y.value;
  });
  for (int i : order) {
    pk.items.push_back(items[static_cast<std::size_t>(i)]);
    pk.original.push_back(i);
  }
  pk.same_as_prev.assign(pk.items.size(), 0);
  for (std::size_t k = 1; k < pk.items.size(); ++k) {
    pk.same_as_prev[k] = pk.items[k].weight == pk.items[k - 1].weight && pk.items[k].value == pk.items[k - 1].value;
  }
  pk.caps.assign(capacities.begin(), capacities.end());
  pk.load.assign(pk.caps.size(), 0);
  pk.bin.assign(pk.items.size(), -1);
  pk.best_bin = pk.bin;
  const long long room = std::accumulate(pk.caps.begin(), pk.caps.end(), 0LL);
  pk.dfs(0, 0, room, false);

  result.value = pk.best;
  for (std::size_t k = 0; k < pk.items.size(); ++k) {
    result.bin_of[static_cast<std::size_t>(pk.original[k])] = pk.best_bin[k];
  }
  return result;
}

}  // namespace ors
