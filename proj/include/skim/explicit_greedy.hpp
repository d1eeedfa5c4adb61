// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Approximate lazy greedy over an explicit utility matrix.
//
// Items sit in a max-heap keyed by their marginal influence at the time of
// insertion, starting from Inf({i}). The top item's exact marginal is
// recomputed from the element digests; it is selected when that value is at
// least (1 - epsilon) of its key, otherwise it goes back with the fresh value.
// An item whose value has fallen to max_h Inf({h}) / n^2 or below is dropped
// instead. Dropped items are appended at the end, ordered by a second lazy
// pass without the cutoff, so the output is always a full permutation; those
// records carry below_cutoff.

#ifndef SKIM_EXPLICIT_GREEDY_HPP_
#define SKIM_EXPLICIT_GREEDY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <vector>

#include "skim/aggregation.hpp"
#include "skim/types.hpp"
#include "skim/utility_matrix.hpp"

namespace skim {

struct LazyGreedyStats {
  std::uint64_t digest_ops = 0;  // marg() + update() calls before the cutoff
  std::uint64_t heap_pops = 0;
  std::uint64_t reinsertions = 0;
  std::size_t dropped = 0;
  std::uint64_t tail_digest_ops = 0;  // ordering the dropped items
};

inline GreedySequence lazy_greedy(const SparseUtilityMatrix& m, const AggregationSpec& spec,
                                  double epsilon, LazyGreedyStats* stats = nullptr) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in [0, 1)");
  LazyGreedyStats local;
  LazyGreedyStats& st = stats ? *stats : local;
  st = {};

  GreedySequence out;
  const std::size_t n = m.n_items();
  if (n == 0) return out;

  std::vector<UtilityDigest> digests(m.n_elements(), UtilityDigest(spec));
  auto marginal = [&](ItemId i) {
    double gain = 0.0;
    for (const auto& e : m.row(i)) {
      gain += m.weight(e.element) * digests[e.element].marg(e.utility);
    }
    st.digest_ops += m.row(i).size();
    return gain;
  };
  auto select = [&](ItemId i) {
    for (const auto& e : m.row(i)) digests[e.element].update(e.utility);
    st.digest_ops += m.row(i).size();
  };

  struct Entry {
    double priority;
    ItemId item;
  };
  auto lower = [](const Entry& a, const Entry& b) {
    return a.priority != b.priority ? a.priority < b.priority : a.item > b.item;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);

  double max_single = 0.0;
  for (ItemId i = 0; i < n; ++i) {
    double single = 0.0;
    for (const auto& e : m.row(i)) single += m.weight(e.element) * e.utility;
    max_single = std::max(max_single, single);
    heap.push({single, i});
  }
  const double cutoff = max_single / (static_cast<double>(n) * static_cast<double>(n));

  std::vector<Entry> dropped;
  double cumulative = 0.0;
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    ++st.heap_pops;
    const double gain = marginal(top.item);
    if (gain <= cutoff) {
      dropped.push_back({gain, top.item});
    } else if (gain >= (1.0 - epsilon) * top.priority) {
      select(top.item);
      cumulative += gain;
      out.push_back({top.item, std::nullopt, gain, cumulative, false});
    } else {
      heap.push({gain, top.item});
      ++st.reinsertions;
    }
  }

  // Dropped items follow in lazy greedy order without the cutoff.
  st.dropped = dropped.size();
  const std::uint64_t ops_before_tail = st.digest_ops;
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> tail(lower, std::move(dropped));
  while (!tail.empty()) {
    const Entry top = tail.top();
    tail.pop();
    const double gain = marginal(top.item);
    if (gain >= (1.0 - epsilon) * top.priority) {
      select(top.item);
      cumulative += gain;
      out.push_back({top.item, std::nullopt, gain, cumulative, true});
    } else {
      tail.push({gain, top.item});
    }
  }
  st.tail_digest_ops = st.digest_ops - ops_before_tail;
  st.digest_ops = ops_before_tail;
  return out;
}

}  // namespace skim

#endif  // SKIM_EXPLICIT_GREEDY_HPP_
