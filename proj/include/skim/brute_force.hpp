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

// Enumeration baselines over an explicit matrix. None of these use digests;
// every value is aggregated from scratch.

#ifndef SKIM_BRUTE_FORCE_HPP_
#define SKIM_BRUTE_FORCE_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "skim/aggregation.hpp"
#include "skim/types.hpp"
#include "skim/utility_matrix.hpp"

namespace skim {

namespace detail {

inline std::vector<std::vector<double>> seed_utilities(const SparseUtilityMatrix& m,
                                                       std::span<const ItemId> seeds) {
  std::vector<std::vector<double>> per_element(m.n_elements());
  for (ItemId i : seeds) {
    for (const auto& e : m.row(i)) per_element[e.element].push_back(e.utility);
  }
  return per_element;
}

}  // namespace detail

/// Inf(S) = sum_j w_j F({u_ij : i in S}).
inline double exact_influence(const SparseUtilityMatrix& m, const AggregationSpec& spec,
                              std::span<const ItemId> seeds) {
  const auto per_element = detail::seed_utilities(m, seeds);
  double total = 0.0;
  for (std::size_t j = 0; j < per_element.size(); ++j) {
    if (!per_element[j].empty()) total += m.weight(static_cast<ElementId>(j)) * aggregate(spec, per_element[j]);
  }
  return total;
}

/// Inf(S + {i}) - Inf(S), element by element.
inline double exact_marginal(const SparseUtilityMatrix& m, const AggregationSpec& spec,
                             std::span<const ItemId> seeds, ItemId i) {
  if (std::find(seeds.begin(), seeds.end(), i) != seeds.end()) return 0.0;
  const auto per_element = detail::seed_utilities(m, seeds);
  double total = 0.0;
  for (const auto& e : m.row(i)) {
    auto with = per_element[e.element];
    const double before = aggregate(spec, with);
    with.push_back(e.utility);
    total += m.weight(e.element) * (aggregate(spec, with) - before);
  }
  return total;
}

/// The elements of i's row at which i has positive marginal utility.
inline std::vector<ElementUtility> positive_marginal_elements(const SparseUtilityMatrix& m,
                                                              const AggregationSpec& spec,
                                                              std::span<const ItemId> seeds,
                                                              ItemId i) {
  std::vector<ElementUtility> out;
  if (std::find(seeds.begin(), seeds.end(), i) != seeds.end()) return out;
  const auto per_element = detail::seed_utilities(m, seeds);
  for (const auto& e : m.row(i)) {
    auto with = per_element[e.element];
    const double before = aggregate(spec, with);
    with.push_back(e.utility);
    if (aggregate(spec, with) - before > 0.0) out.push_back(e);
  }
  return out;
}

/// Inf(i | S) for every item i (0 for members of S).
inline std::vector<double> marginal_gains(const SparseUtilityMatrix& m, const AggregationSpec& spec,
                                          std::span<const ItemId> seeds) {
  auto per_element = detail::seed_utilities(m, seeds);
  std::vector<double> base(per_element.size());
  for (std::size_t j = 0; j < per_element.size(); ++j) base[j] = aggregate(spec, per_element[j]);
  std::vector<double> gains(m.n_items(), 0.0);
  std::vector<bool> chosen(m.n_items(), false);
  for (ItemId i : seeds) chosen[i] = true;
  for (ItemId i = 0; i < m.n_items(); ++i) {
    if (chosen[i]) continue;
    for (const auto& e : m.row(i)) {
      auto& values = per_element[e.element];
      values.push_back(e.utility);
      gains[i] += m.weight(e.element) * (aggregate(spec, values) - base[e.element]);
      values.pop_back();
    }
  }
  return gains;
}

/// Greedy by full recomputation of every marginal at every step; ties go to
/// the lower item id. Returns a full permutation of the items.
inline GreedySequence exact_greedy(const SparseUtilityMatrix& m, const AggregationSpec& spec) {
  GreedySequence out;
  std::vector<ItemId> seeds;
  std::vector<bool> chosen(m.n_items(), false);
  double current = 0.0;
  for (std::size_t step = 0; step < m.n_items(); ++step) {
    auto per_element = detail::seed_utilities(m, seeds);
    std::vector<double> base(per_element.size());
    for (std::size_t j = 0; j < per_element.size(); ++j) base[j] = aggregate(spec, per_element[j]);
    double best_gain = -std::numeric_limits<double>::infinity();
    ItemId best = 0;
    for (ItemId i = 0; i < m.n_items(); ++i) {
      if (chosen[i]) continue;
      double gain = 0.0;
      for (const auto& e : m.row(i)) {
        auto& values = per_element[e.element];
        values.push_back(e.utility);
        gain += m.weight(e.element) * (aggregate(spec, values) - base[e.element]);
        values.pop_back();
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    chosen[best] = true;
    seeds.push_back(best);
    current += best_gain;
    out.push_back({best, std::nullopt, best_gain, current, false});
  }
  return out;
}

/// Exhaustive maximum of Inf over all s-subsets. Guarded to n_items <= 20.
inline std::pair<std::vector<ItemId>, double> optimal_subset(const SparseUtilityMatrix& m,
                                                            const AggregationSpec& spec,
                                                            std::size_t s) {
  constexpr std::size_t kMaxItems = 20;
  if (m.n_items() > kMaxItems) throw InputError("optimal_subset: more than 20 items");
  if (s == 0 || s > m.n_items()) throw InputError("optimal_subset: subset size out of range");
  // Lexicographic walk over index combinations.
  std::vector<ItemId> idx(s);
  for (std::size_t k = 0; k < s; ++k) idx[k] = static_cast<ItemId>(k);
  std::vector<ItemId> best = idx;
  double best_val = exact_influence(m, spec, idx);
  const auto n = static_cast<ItemId>(m.n_items());
  while (true) {
    std::size_t k = s;
    while (k > 0 && idx[k - 1] == n - s + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t t = k; t < s; ++t) idx[t] = idx[t - 1] + 1;
    const double v = exact_influence(m, spec, idx);
    if (v > best_val) {
      best_val = v;
      best = idx;
    }
  }
  return {best, best_val};
}

}  // namespace skim

#endif  // SKIM_BRUTE_FORCE_HPP_
