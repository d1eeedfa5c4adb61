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

#include "skim/explicit_greedy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "skim/brute_force.hpp"
#include "test_support.hpp"

namespace skim {
namespace {

SparseUtilityMatrix TwoByTwo() {
  // a = 0, b = 1; x = 0, y = 1.
  return SparseUtilityMatrix(2, 2, {{0, 0, 2.0}, {1, 0, 1.0}, {1, 1, 1.0}});
}

std::vector<ItemId> Items(const GreedySequence& seq) {
  std::vector<ItemId> out;
  for (const auto& r : seq) out.push_back(r.item);
  return out;
}

TEST(LazyGreedyTest, TwoByTwoExample) {
  const auto seq = lazy_greedy(TwoByTwo(), AggregationSpec::max(), 0.0);
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[0].item, 0u);
  EXPECT_EQ(seq[0].exact_gain, 2.0);
  EXPECT_EQ(seq[1].item, 1u);
  EXPECT_EQ(seq[1].exact_gain, 1.0);
  EXPECT_EQ(seq[1].cumulative_influence, 3.0);
  EXPECT_FALSE(seq[0].estimated_gain.has_value());
}

TEST(LazyGreedyTest, SingleItem) {
  const SparseUtilityMatrix m(1, 3, {{0, 0, 0.5}, {0, 2, 1.5}}, {2.0, 1.0, 1.0});
  const auto seq = lazy_greedy(m, AggregationSpec::top_sum(2), 0.3);
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq[0].exact_gain, 2.5);
}

TEST(LazyGreedyTest, EmptyMatrixAndBadEpsilon) {
  const SparseUtilityMatrix empty(0, 0, {});
  EXPECT_TRUE(lazy_greedy(empty, AggregationSpec::max(), 0.1).empty());
  EXPECT_THROW(lazy_greedy(TwoByTwo(), AggregationSpec::max(), 1.0), InputError);
  EXPECT_THROW(lazy_greedy(TwoByTwo(), AggregationSpec::max(), -0.1), InputError);
}

TEST(LazyGreedyTest, ZeroEpsilonMatchesExactGreedy) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::random_matrix(rng, 10 + trial % 20, 20, 0.3, trial % 2 == 0, trial % 3 == 0);
    const auto spec = testing::random_spec(rng, 3);
    const auto lazy = lazy_greedy(m, spec, 0.0);
    const auto exact = exact_greedy(m, spec);
    ASSERT_EQ(lazy.size(), exact.size());
    for (std::size_t r = 0; r < lazy.size(); ++r) {
      ASSERT_EQ(lazy[r].item, exact[r].item) << "trial " << trial << " rank " << r;
      EXPECT_NEAR(lazy[r].exact_gain, exact[r].exact_gain, 1e-12);
    }
  }
}

TEST(LazyGreedyTest, ItemBelowCutoffIsNotSelectedAheadOfALargerDroppedGain) {
  // n = 3, cutoff = 9 / 9 = 1. Item 1 starts below the cutoff; item 2 falls
  // to 1 once item 0 is chosen. Both go to the tail, larger gain first.
  const SparseUtilityMatrix m(3, 3, {{0, 0, 9.0}, {1, 2, 0.5}, {2, 0, 8.0}, {2, 1, 1.0}});
  LazyGreedyStats st;
  const auto seq = lazy_greedy(m, AggregationSpec::max(), 0.0, &st);
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_EQ(st.dropped, 2u);
  EXPECT_EQ(seq[0].item, 0u);
  EXPECT_FALSE(seq[0].below_cutoff);
  EXPECT_EQ(seq[1].item, 2u);
  EXPECT_TRUE(seq[1].below_cutoff);
  EXPECT_EQ(seq[2].item, 1u);
  EXPECT_EQ(seq[2].cumulative_influence, 10.5);
}

TEST(LazyGreedyTest, OutputIsAPermutationWithConsistentCumulative) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_matrix(rng, 15, 25, 0.2);
    const auto spec = testing::random_spec(rng, 3);
    const auto seq = lazy_greedy(m, spec, 0.2);
    ASSERT_EQ(seq.size(), m.n_items());
    std::set<ItemId> seen;
    std::vector<ItemId> prefix;
    double sum = 0.0;
    bool in_tail = false;
    for (const auto& r : seq) {
      EXPECT_TRUE(seen.insert(r.item).second);
      EXPECT_GE(r.exact_gain, 0.0);
      EXPECT_NEAR(r.exact_gain, exact_marginal(m, spec, prefix, r.item), 1e-12);
      sum += r.exact_gain;
      EXPECT_NEAR(r.cumulative_influence, sum, 1e-12);
      prefix.push_back(r.item);
      if (r.below_cutoff) in_tail = true;
      EXPECT_EQ(r.below_cutoff, in_tail);
    }
    EXPECT_NEAR(seq.back().cumulative_influence, exact_influence(m, spec, prefix), 1e-9);
  }
}

TEST(LazyGreedyTest, SelectionsAreNearMaximal) {
  std::mt19937_64 rng(23);
  const double eps = 0.2;
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = testing::random_matrix(rng, 12, 30, 0.25);
    const auto spec = testing::random_spec(rng, 3);
    const auto seq = lazy_greedy(m, spec, eps);
    std::vector<ItemId> prefix;
    for (const auto& r : seq) {
      if (r.below_cutoff) break;
      const auto gains = marginal_gains(m, spec, prefix);
      const double best = *std::max_element(gains.begin(), gains.end());
      EXPECT_GE(r.exact_gain, (1.0 - eps) * best - 1e-12);
      prefix.push_back(r.item);
    }
  }
}

TEST(LazyGreedyTest, PrefixGuaranteeAgainstOptimum) {
  std::mt19937_64 rng(24);
  const double eps = 0.1;
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = testing::random_matrix(rng, 10, 20, 0.3);
    const auto spec = testing::random_spec(rng, 2);
    const auto seq = lazy_greedy(m, spec, eps);
    std::vector<ItemId> prefix;
    for (std::size_t s = 1; s <= 4; ++s) {
      prefix.push_back(seq[s - 1].item);
      const double bound = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(s), static_cast<double>(s)) - eps;
      EXPECT_GE(exact_influence(m, spec, prefix), bound * optimal_subset(m, spec, s).second - 1e-12);
    }
  }
}

TEST(LazyGreedyTest, DigestWorkWithinBound) {
  std::mt19937_64 rng(25);
  for (double eps : {0.05, 0.1, 0.3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = testing::random_matrix(rng, 40, 80, 0.1);
      const auto spec = testing::random_spec(rng, 3);
      LazyGreedyStats st;
      lazy_greedy(m, spec, eps, &st);
      const double n = static_cast<double>(m.n_items());
      const double bound =
          2.0 * static_cast<double>(m.num_entries()) * (1.0 + std::log(n * n) / eps);
      EXPECT_LE(static_cast<double>(st.digest_ops), bound);
      EXPECT_EQ(st.heap_pops, m.n_items() + st.reinsertions);
    }
  }
}

TEST(ExactGreedyTest, Examples) {
  EXPECT_EQ(Items(exact_greedy(TwoByTwo(), AggregationSpec::max())), (std::vector<ItemId>{0, 1}));
  const SparseUtilityMatrix single(1, 1, {{0, 0, 3.0}});
  EXPECT_EQ(Items(exact_greedy(single, AggregationSpec::max())), (std::vector<ItemId>{0}));
}

TEST(ExactGreedyTest, GainsNonIncreasing) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = testing::random_matrix(rng, 12, 25, 0.3);
    const auto spec = testing::random_spec(rng, 3);
    const auto seq = exact_greedy(m, spec);
    for (std::size_t r = 1; r < seq.size(); ++r) {
      EXPECT_LE(seq[r].exact_gain, seq[r - 1].exact_gain + 1e-12);
      EXPECT_GE(seq[r].cumulative_influence, seq[r - 1].cumulative_influence);
    }
  }
}

}  // namespace
}  // namespace skim
