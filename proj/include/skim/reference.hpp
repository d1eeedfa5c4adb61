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

// Non-incremental reference utilities over graph instances.
//
// Everything here is computed from scratch by label-correcting relaxation
// over the full edge list (no heaps, no pruning), so it shares no search code
// with the oracles in graph_oracles.hpp. Intended for desk-scale checking.

#ifndef SKIM_REFERENCE_HPP_
#define SKIM_REFERENCE_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "skim/graph.hpp"
#include "skim/types.hpp"
#include "skim/utility_family.hpp"
#include "skim/utility_matrix.hpp"

namespace skim::reference {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest-path distances from `source` (Bellman-Ford). Unreachable: inf.
inline std::vector<double> distances_from(const GraphInstance& g, NodeId source) {
  std::vector<double> d(g.num_nodes(), kInf);
  d[source] = 0.0;
  for (std::size_t round = 0; round < g.num_nodes(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      if (d[e.src] + e.weight < d[e.dst]) {
        d[e.dst] = d[e.src] + e.weight;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

/// Bottleneck (max over paths of min edge weight) from `source`; the source
/// itself gets `self_value`, unreachable nodes 0.
inline std::vector<double> survival_from(const GraphInstance& g, NodeId source, double self_value) {
  std::vector<double> t(g.num_nodes(), 0.0);
  t[source] = self_value;
  for (std::size_t round = 0; round < g.num_nodes(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      const double via = std::min(t[e.src], e.weight);
      if (via > t[e.dst]) {
        t[e.dst] = via;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return t;
}

/// pi[x] = |{y : d(source, y) <= d(source, x)}| for reachable x; 0 otherwise.
inline std::vector<std::size_t> ranks_from(const GraphInstance& g, NodeId source) {
  const auto d = distances_from(g, source);
  std::vector<std::size_t> pi(g.num_nodes(), 0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (d[x] == kInf) continue;
    std::size_t count = 0;
    for (double dy : d) {
      if (dy <= d[x]) ++count;
    }
    pi[x] = count;
  }
  return pi;
}

/// u_ij for item (node) i and element j, computed from scratch.
inline double pairwise_utility(const GraphInstanceSet& set, const UtilityFamily& family, NodeId i,
                               ElementId j) {
  const NodeId v = set.node_of(j);
  const GraphInstance& g = set.instance(set.instance_of(j));
  switch (family.kind) {
    case FamilyKind::kDistance:
      return family.alpha(distances_from(g, i)[v]);
    case FamilyKind::kReverseRank: {
      const std::size_t pi = ranks_from(g, v)[i];
      return pi == 0 ? 0.0 : family.alpha(static_cast<double>(pi));
    }
    case FamilyKind::kReachability:
      return distances_from(g, i)[v] == kInf ? 0.0 : 1.0;
    case FamilyKind::kSurvivalThreshold:
      return survival_from(g, i, set.max_weight())[v];
  }
  return 0.0;
}

/// The full utility matrix (items = nodes, elements = node-instance pairs),
/// keeping only positive entries.
inline SparseUtilityMatrix materialize(const GraphInstanceSet& set, const UtilityFamily& family) {
  const std::size_t n = set.num_nodes();
  std::vector<UtilityEntry> entries;
  for (std::size_t h = 0; h < set.num_instances(); ++h) {
    const GraphInstance& g = set.instance(h);
    for (NodeId a = 0; a < n; ++a) {
      // For reverse rank `a` is the element node; otherwise it is the item.
      switch (family.kind) {
        case FamilyKind::kDistance: {
          const auto d = distances_from(g, a);
          for (NodeId v = 0; v < n; ++v) {
            const double u = family.alpha(d[v]);
            if (u > 0.0) entries.push_back({a, set.element(h, v), u});
          }
          break;
        }
        case FamilyKind::kReverseRank: {
          const auto pi = ranks_from(g, a);
          for (NodeId i = 0; i < n; ++i) {
            if (pi[i] == 0) continue;
            const double u = family.alpha(static_cast<double>(pi[i]));
            if (u > 0.0) entries.push_back({i, set.element(h, a), u});
          }
          break;
        }
        case FamilyKind::kReachability: {
          const auto d = distances_from(g, a);
          for (NodeId v = 0; v < n; ++v) {
            if (d[v] != kInf) entries.push_back({a, set.element(h, v), 1.0});
          }
          break;
        }
        case FamilyKind::kSurvivalThreshold: {
          const auto t = survival_from(g, a, set.max_weight());
          for (NodeId v = 0; v < n; ++v) {
            if (t[v] > 0.0) entries.push_back({a, set.element(h, v), t[v]});
          }
          break;
        }
      }
    }
  }
  return SparseUtilityMatrix(n, set.num_elements(), std::move(entries));
}

}  // namespace skim::reference

#endif  // SKIM_REFERENCE_HPP_
