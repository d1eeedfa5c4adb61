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

// Reverse sorted access and forward search over graph instances for the
// distance, reverse-rank, reachability and survival-threshold families.
//
// Reverse access for element (v, h) is an incremental best-first search from
// v on the transposed instance h: Dijkstra for distance, a max-min
// (bottleneck) variant for survival, hop order for reachability. Reverse
// rank walks the precomputed rank order of v instead.
//
// Forward search from item i runs one pruned search per instance. Nodes are
// settled in tree order, so a descendant never has a larger marginal utility
// than its ancestor. A settled element is reported when its marginal utility
// is positive; its out-arcs are skipped when
//   distance / reverse rank:     u < l-th largest stored utility (or u == 0)
//   reachability / survival:     u <= l-th largest stored utility.
// For reverse rank the search runs on the transposed instance (toward i),
// since the pruning argument needs the pruned node on a shortest path from
// the element's node to i.

#ifndef SKIM_GRAPH_ORACLES_HPP_
#define SKIM_GRAPH_ORACLES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "skim/graph.hpp"
#include "skim/oracle.hpp"
#include "skim/seed_state.hpp"
#include "skim/types.hpp"
#include "skim/utility_family.hpp"

namespace skim {

enum class SearchOrder {
  kShortest,    // key = path length, smallest first
  kBottleneck,  // key = min edge weight on the path, largest first
  kHops,        // key = number of edges, smallest first
};

/// Incremental best-first search over one instance. Search state is sparse,
/// so memory is proportional to the part of the graph touched.
class BestFirstSearch {
 public:
  struct Settled {
    NodeId node;
    double key;
  };

  BestFirstSearch(const GraphInstance& g, NodeId source, SearchOrder order, bool transposed,
                  double source_key)
      : g_(&g), order_(order), transposed_(transposed) {
    best_.try_emplace(source, source_key);
    heap_.push({source_key, source, order_});
  }

  /// The next node to be settled, without settling it.
  std::optional<Settled> peek() {
    while (!heap_.empty()) {
      const Entry& t = heap_.top();
      const auto it = best_.find(t.node);
      if (it->second.settled || it->second.key != t.key) {
        heap_.pop();
        continue;
      }
      return Settled{t.node, t.key};
    }
    return std::nullopt;
  }

  /// Settles the peeked node; relaxes its arcs only when `expand` is set.
  void settle(bool expand) {
    const auto next = peek();
    if (!next) return;
    heap_.pop();
    best_.at(next->node).settled = true;
    ++settled_count_;
    if (!expand) return;
    for (const Arc& a : g_->arcs(next->node, transposed_)) {
      const double key = extend(next->key, a.weight);
      auto [it, inserted] = best_.try_emplace(a.node, key);
      if (inserted) {
        heap_.push({key, a.node, order_});
      } else if (!it->second.settled && better(key, it->second.key)) {
        it->second.key = key;
        heap_.push({key, a.node, order_});
      }
    }
  }

  std::size_t settled_count() const noexcept { return settled_count_; }

 private:
  struct Label {
    Label(double k) : key(k) {}  // NOLINT(runtime/explicit)
    double key;
    bool settled = false;
  };

  struct Entry {
    double key;
    NodeId node;
    SearchOrder order;
    // priority_queue keeps the "largest" on top: invert for min orders.
    friend bool operator<(const Entry& a, const Entry& b) {
      if (a.key != b.key) return a.order == SearchOrder::kBottleneck ? a.key < b.key : a.key > b.key;
      return a.node > b.node;
    }
  };

  double extend(double key, double w) const {
    switch (order_) {
      case SearchOrder::kShortest: return key + w;
      case SearchOrder::kBottleneck: return std::min(key, w);
      case SearchOrder::kHops: return key + 1.0;
    }
    return key;
  }

  bool better(double a, double b) const {
    return order_ == SearchOrder::kBottleneck ? a > b : a < b;
  }

  const GraphInstance* g_;
  SearchOrder order_;
  bool transposed_;
  std::unordered_map<NodeId, Label> best_;
  std::priority_queue<Entry> heap_;
  std::size_t settled_count_ = 0;
};

/// Exact Dijkstra ranks per instance: rank(h, s, x) = number of nodes y with
/// d_h(s, y) <= d_h(s, x); 0 when x is unreachable from s. Also keeps, per
/// (h, s), the reachable nodes sorted by (rank, id).
class RankTable {
 public:
  explicit RankTable(const GraphInstanceSet& set) : n_(set.num_nodes()) {
    const std::size_t n = n_;
    ranks_.resize(set.num_instances());
    order_.resize(set.num_instances());
    order_offsets_.resize(set.num_instances());
    for (std::size_t h = 0; h < set.num_instances(); ++h) {
      auto& ranks = ranks_[h];
      auto& order = order_[h];
      auto& offsets = order_offsets_[h];
      ranks.assign(n * n, 0);
      offsets.assign(n + 1, 0);
      for (NodeId s = 0; s < n; ++s) {
        BestFirstSearch search(set.instance(h), s, SearchOrder::kShortest, false, 0.0);
        std::vector<BestFirstSearch::Settled> settled;
        while (auto next = search.peek()) {
          settled.push_back(*next);
          search.settle(true);
        }
        // Settled in non-decreasing distance; ties share the count of the
        // whole tie group.
        std::size_t k = 0;
        while (k < settled.size()) {
          std::size_t end = k;
          while (end < settled.size() && settled[end].key == settled[k].key) ++end;
          for (std::size_t t = k; t < end; ++t) {
            ranks[s * n + settled[t].node] = static_cast<std::uint32_t>(end);
          }
          k = end;
        }
        std::sort(settled.begin(), settled.end(), [&](const auto& a, const auto& b) {
          const auto ra = ranks[s * n + a.node];
          const auto rb = ranks[s * n + b.node];
          return ra != rb ? ra < rb : a.node < b.node;
        });
        for (const auto& x : settled) order.push_back(x.node);
        offsets[s + 1] = order.size();
      }
    }
  }

  std::uint32_t rank(std::size_t h, NodeId source, NodeId x) const {
    return ranks_[h][static_cast<std::size_t>(source) * n_ + x];
  }

  std::span<const NodeId> order(std::size_t h, NodeId source) const {
    const auto& off = order_offsets_[h];
    return std::span<const NodeId>(order_[h]).subspan(off[source], off[source + 1] - off[source]);
  }

 private:
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> ranks_;
  std::vector<std::vector<NodeId>> order_;
  std::vector<std::vector<std::size_t>> order_offsets_;
};

namespace detail {

inline SearchOrder search_order(FamilyKind k) {
  switch (k) {
    case FamilyKind::kSurvivalThreshold: return SearchOrder::kBottleneck;
    case FamilyKind::kReachability: return SearchOrder::kHops;
    default: return SearchOrder::kShortest;
  }
}

inline double source_key(FamilyKind k, const GraphInstanceSet& set) {
  return k == FamilyKind::kSurvivalThreshold ? set.max_weight() : 0.0;
}

// Utility carried by a search key (not used for reverse rank).
inline double key_utility(const UtilityFamily& f, double key) {
  switch (f.kind) {
    case FamilyKind::kDistance: return f.alpha(key);
    case FamilyKind::kSurvivalThreshold: return key;
    case FamilyKind::kReachability: return 1.0;
    case FamilyKind::kReverseRank: break;
  }
  return 0.0;
}

inline double rank_utility(const UtilityFamily& f, std::uint32_t rank) {
  return rank == 0 ? 0.0 : f.alpha(static_cast<double>(rank));
}

}  // namespace detail

/// Reverse sorted access for one graph element. Ends at the first item
/// whose utility is 0 (all later ones are 0 too).
class GraphRevSortedStream {
 public:
  // Search-driven stream (distance, survival, reachability).
  GraphRevSortedStream(const GraphInstanceSet& set, const UtilityFamily& family, ElementId j)
      : family_(&family),
        search_(std::in_place, set.instance(set.instance_of(j)), set.node_of(j),
                detail::search_order(family.kind), /*transposed=*/true,
                detail::source_key(family.kind, set)) {}

  // Rank-order stream (reverse rank).
  GraphRevSortedStream(const RankTable& table, const UtilityFamily& family, std::size_t h,
                       NodeId v)
      : family_(&family), table_(&table), h_(h), v_(v), order_(table.order(h, v)) {}

  std::optional<ItemUtility> top() {
    if (search_) {
      const auto next = search_->peek();
      if (!next) return std::nullopt;
      const double u = detail::key_utility(*family_, next->key);
      if (!(u > 0.0)) return std::nullopt;
      return ItemUtility{next->node, u};
    }
    if (cursor_ >= order_.size()) return std::nullopt;
    const NodeId i = order_[cursor_];
    const double u = detail::rank_utility(*family_, table_->rank(h_, v_, i));
    if (!(u > 0.0)) return std::nullopt;
    return ItemUtility{i, u};
  }

  std::optional<ItemUtility> pop() {
    auto t = top();
    if (!t) return t;
    if (search_) {
      search_->settle(true);
    } else {
      ++cursor_;
    }
    return t;
  }

 private:
  const UtilityFamily* family_;
  std::optional<BestFirstSearch> search_;
  const RankTable* table_ = nullptr;
  std::size_t h_ = 0;
  NodeId v_ = 0;
  std::span<const NodeId> order_;
  std::size_t cursor_ = 0;
};

/// Forward search results, computed eagerly against the seed set at
/// construction and replayed by next().
class BufferedForwardStream {
 public:
  BufferedForwardStream(std::vector<ElementUtility> yields, const SeedState& state,
                        std::size_t settled)
      : yields_(std::move(yields)), guard_(state), settled_(settled) {}

  std::optional<ElementUtility> next() {
    guard_.check();
    if (cursor_ >= yields_.size()) return std::nullopt;
    return yields_[cursor_++];
  }

  /// Nodes settled across all instances (visited work, pruned or not).
  std::size_t settled() const noexcept { return settled_; }

 private:
  std::vector<ElementUtility> yields_;
  StateVersionGuard guard_;
  std::size_t settled_;
  std::size_t cursor_ = 0;
};

/// Both oracles over a set of graph instances. Items are nodes; elements are
/// node-instance pairs. Element weights are 1.
class GraphOracle {
 public:
  GraphOracle(const GraphInstanceSet& set, UtilityFamily family)
      : set_(&set), family_(std::make_unique<UtilityFamily>(std::move(family))) {
    if (family_->kind == FamilyKind::kReverseRank) ranks_ = std::make_unique<RankTable>(set);
  }

  std::size_t num_items() const noexcept { return set_->num_nodes(); }
  std::size_t num_elements() const noexcept { return set_->num_elements(); }
  double element_weight(ElementId) const noexcept { return 1.0; }
  const GraphInstanceSet& instances() const noexcept { return *set_; }
  const UtilityFamily& family() const noexcept { return *family_; }

  GraphRevSortedStream reverse_stream(ElementId j) const {
    if (j >= num_elements()) throw InputError("element id out of range");
    if (ranks_) {
      return GraphRevSortedStream(*ranks_, *family_, set_->instance_of(j), set_->node_of(j));
    }
    return GraphRevSortedStream(*set_, *family_, j);
  }

  /// Precondition: i is not in S.
  BufferedForwardStream forward_search(ItemId i, const SeedState& state) const {
    if (i >= num_items()) throw InputError("item id out of range");
    const FamilyKind kind = family_->kind;
    const bool rank = kind == FamilyKind::kReverseRank;
    const bool prune_on_equal =
        kind == FamilyKind::kReachability || kind == FamilyKind::kSurvivalThreshold;
    std::vector<ElementUtility> yields;
    std::size_t settled = 0;
    for (std::size_t h = 0; h < set_->num_instances(); ++h) {
      BestFirstSearch search(set_->instance(h), i, detail::search_order(kind), /*transposed=*/rank,
                             detail::source_key(kind, *set_));
      while (auto next = search.peek()) {
        const ElementId j = set_->element(h, next->node);
        const double u = rank ? detail::rank_utility(*family_, ranks_->rank(h, next->node, i))
                              : detail::key_utility(*family_, next->key);
        const UtilityDigest& d = state.digest(j);
        if (u > 0.0 && d.marg(u) > 0.0) yields.push_back({j, u});
        const double th = d.thresh();
        const bool prune = !(u > 0.0) || u < th || (prune_on_equal && u <= th);
        search.settle(!prune);
      }
      settled += search.settled_count();
    }
    return BufferedForwardStream(std::move(yields), state, settled);
  }

 private:
  const GraphInstanceSet* set_;
  std::unique_ptr<UtilityFamily> family_;
  std::unique_ptr<RankTable> ranks_;
};

}  // namespace skim

#endif  // SKIM_GRAPH_ORACLES_HPP_
