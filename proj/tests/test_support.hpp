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

// Random fixtures shared by the unit tests and the acceptance runner.

#ifndef SKIM_TESTS_TEST_SUPPORT_HPP_
#define SKIM_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "skim/aggregation.hpp"
#include "skim/graph.hpp"
#include "skim/utility_matrix.hpp"

namespace skim::testing {

/// Each (i, j) present with probability `density`. With `ties` the
/// utilities come from {0.1, 0.2, ..., 1.0}, else uniform on (0, 1].
inline SparseUtilityMatrix random_matrix(std::mt19937_64& rng, std::size_t n_items,
                                         std::size_t n_elements, double density, bool ties = false,
                                         bool weighted = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> tenth(1, 10);
  std::vector<UtilityEntry> entries;
  for (ItemId i = 0; i < n_items; ++i) {
    for (ElementId j = 0; j < n_elements; ++j) {
      if (unit(rng) >= density) continue;
      const double u = ties ? tenth(rng) / 10.0 : 1.0 - unit(rng);
      entries.push_back({i, j, u});
    }
  }
  std::vector<double> weights;
  if (weighted) {
    for (std::size_t j = 0; j < n_elements; ++j) weights.push_back(0.5 + unit(rng));
  }
  return SparseUtilityMatrix(n_items, n_elements, std::move(entries), std::move(weights));
}

/// Directed graph with about n * avg_degree distinct edges and no self loops.
/// With `integer_weights` weights are drawn from {1, 2, 3} (many ties).
inline DiGraph random_graph(std::mt19937_64& rng, std::size_t n, double avg_degree,
                            bool integer_weights = true) {
  DiGraph g;
  g.n = n;
  if (n < 2) return g;
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  std::uniform_int_distribution<int> small(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto target = static_cast<std::size_t>(avg_degree * static_cast<double>(n));
  std::set<std::pair<NodeId, NodeId>> seen;
  std::size_t attempts = 0;
  while (g.edges.size() < target && attempts++ < 20 * target) {
    const NodeId a = node(rng), b = node(rng);
    if (a == b || !seen.emplace(a, b).second) continue;
    const double w = integer_weights ? small(rng) : 0.1 + unit(rng);
    g.edges.push_back({a, b, w});
  }
  return g;
}

/// Independent weight draws per instance on a shared random topology.
inline GraphInstanceSet random_instances(std::mt19937_64& rng, std::size_t n, double avg_degree,
                                         std::size_t count, bool integer_weights = true) {
  std::vector<std::vector<Edge>> sets;
  for (std::size_t h = 0; h < count; ++h) sets.push_back(random_graph(rng, n, avg_degree, integer_weights).edges);
  return GraphInstanceSet(n, std::move(sets));
}

/// A random valid aggregation spec with 1 <= ell <= max_ell.
inline AggregationSpec random_spec(std::mt19937_64& rng, std::size_t max_ell) {
  std::uniform_int_distribution<std::size_t> len(1, max_ell);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t ell = len(rng);
  std::vector<double> g{1.0};
  for (std::size_t i = 1; i < ell; ++i) g.push_back(g.back() * unit(rng));
  return AggregationSpec(std::move(g));
}

/// Distinct random items, `count` of them, from [0, n).
inline std::vector<ItemId> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<ItemId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<ItemId>(i);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(count, n));
  return all;
}

}  // namespace skim::testing

#endif  // SKIM_TESTS_TEST_SUPPORT_HPP_
