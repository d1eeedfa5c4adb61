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

#include "skim/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "skim/brute_force.hpp"
#include "skim/seed_state.hpp"
#include "skim/utility_matrix.hpp"
#include "test_support.hpp"

namespace skim {
namespace {

std::vector<ItemUtility> Drain(MatrixRevSortedStream s) {
  std::vector<ItemUtility> out;
  while (auto t = s.pop()) out.push_back(*t);
  return out;
}

std::vector<ElementUtility> Drain(MatrixForwardStream s) {
  std::vector<ElementUtility> out;
  while (auto e = s.next()) out.push_back(*e);
  return out;
}

TEST(SparseUtilityMatrixTest, Validation) {
  EXPECT_THROW(SparseUtilityMatrix(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}), InputError);
  EXPECT_THROW(SparseUtilityMatrix(2, 2, {{0, 0, 0.0}}), InputError);
  EXPECT_THROW(SparseUtilityMatrix(2, 2, {{2, 0, 1.0}}), InputError);
  EXPECT_THROW(SparseUtilityMatrix(2, 2, {{0, 5, 1.0}}), InputError);
  EXPECT_THROW(SparseUtilityMatrix(1, 2, {}, {1.0}), InputError);
  EXPECT_THROW(SparseUtilityMatrix(1, 1, {}, {0.0}), InputError);
  const SparseUtilityMatrix m(2, 3, {{1, 2, 0.5}, {0, 1, 0.25}});
  EXPECT_EQ(m.num_entries(), 2u);
  EXPECT_EQ(m.utility(1, 2), 0.5);
  EXPECT_EQ(m.utility(1, 1), 0.0);
  EXPECT_EQ(m.weight(0), 1.0);
}

TEST(MatrixRevSortedStreamTest, Examples) {
  // a = 0, b = 1, c = 2 on element 0; element 1 is empty; element 2 has a tie.
  const SparseUtilityMatrix m(3, 3, {{0, 0, 0.2}, {1, 0, 0.9}, {2, 2, 0.5}, {0, 2, 0.5}});
  EXPECT_EQ(Drain(matrix_rev_sorted_stream(m, 0)),
            (std::vector<ItemUtility>{{1, 0.9}, {0, 0.2}}));
  auto empty = matrix_rev_sorted_stream(m, 1);
  EXPECT_FALSE(empty.top().has_value());
  EXPECT_FALSE(empty.pop().has_value());
  EXPECT_EQ(Drain(matrix_rev_sorted_stream(m, 2)),
            (std::vector<ItemUtility>{{0, 0.5}, {2, 0.5}}));
  EXPECT_THROW(matrix_rev_sorted_stream(m, 7), InputError);
}

TEST(MatrixRevSortedStreamTest, TopDoesNotAdvance) {
  const SparseUtilityMatrix m(2, 1, {{0, 0, 0.2}, {1, 0, 0.9}});
  auto s = matrix_rev_sorted_stream(m, 0);
  EXPECT_EQ(s.top()->item, 1u);
  EXPECT_EQ(s.top()->item, 1u);
  EXPECT_EQ(s.pop()->item, 1u);
  EXPECT_EQ(s.top()->item, 0u);
}

TEST(MatrixForwardSearchTest, Examples) {
  // Item 0 has row {(x=0, 2), (y=1, 1)}; item 1 supplies the seed utilities.
  const SparseUtilityMatrix m(3, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 3.0}, {2, 1, 0.5}});
  SeedState empty(AggregationSpec::max(), 3, 2);
  EXPECT_EQ(Drain(matrix_forward_search(m, 0, empty)),
            (std::vector<ElementUtility>{{0, 2.0}, {1, 1.0}}));

  SeedState s(AggregationSpec::max(), 3, 2);
  s.update(0, 3.0);
  s.update(1, 0.5);
  EXPECT_EQ(Drain(matrix_forward_search(m, 0, s)), (std::vector<ElementUtility>{{1, 1.0}}));

  SeedState saturated(AggregationSpec::max(), 3, 2);
  saturated.update(0, 5.0);
  saturated.update(1, 5.0);
  EXPECT_TRUE(Drain(matrix_forward_search(m, 0, saturated)).empty());
}

TEST(MatrixForwardSearchTest, StaleStreamIsRejected) {
  const SparseUtilityMatrix m(2, 2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}});
  SeedState s(AggregationSpec::max(), 2, 2);
  auto stream = matrix_forward_search(m, 0, s);
  ASSERT_TRUE(stream.next().has_value());
  add_seed(MatrixOracle(m), 1, s);
  EXPECT_THROW(stream.next(), ContractViolation);
}

TEST(MatrixForwardSearchTest, MatchesBruteForcePositiveSet) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::random_matrix(rng, 12, 20, 0.35, trial % 2 == 0);
    const auto spec = testing::random_spec(rng, 3);
    const auto seeds = testing::random_subset(rng, m.n_items(), trial % 5);
    SeedState state(spec, m.n_items(), m.n_elements());
    for (ItemId i : seeds) add_seed(MatrixOracle(m), i, state);
    for (ItemId i = 0; i < m.n_items(); ++i) {
      if (state.contains(i)) continue;
      EXPECT_EQ(Drain(matrix_forward_search(m, i, state)),
                positive_marginal_elements(m, spec, seeds, i));
    }
  }
}

TEST(SeedStateTest, CommitAndMarg) {
  SeedState s(AggregationSpec::top_sum(2), 3, 2);
  EXPECT_EQ(s.version(), 0u);
  s.update(0, 1.0);
  s.commit(2);
  EXPECT_TRUE(s.contains(2));
  EXPECT_EQ(s.marg(2, 0, 5.0), 0.0);
  EXPECT_EQ(s.marg(1, 0, 5.0), 5.0);
  EXPECT_GT(s.version(), 0u);
  EXPECT_THROW(s.commit(2), InputError);
}

TEST(MargGainTest, MatchesExactMarginalAndAddSeed) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = testing::random_matrix(rng, 10, 15, 0.4, false, trial % 2 == 0);
    const auto spec = testing::random_spec(rng, 3);
    const MatrixOracle oracle(m);
    SeedState state(spec, m.n_items(), m.n_elements());
    std::vector<ItemId> seeds;
    auto order = testing::random_subset(rng, m.n_items(), m.n_items());
    for (ItemId i : order) {
      for (ItemId h = 0; h < m.n_items(); ++h) {
        EXPECT_NEAR(marg_gain(oracle, h, state), exact_marginal(m, spec, seeds, h), 1e-12);
      }
      const double predicted = marg_gain(oracle, i, state);
      const double gain = add_seed(oracle, i, state);
      EXPECT_EQ(gain, predicted);
      seeds.push_back(i);
      double total = 0.0;
      for (ElementId j = 0; j < m.n_elements(); ++j) total += m.weight(j) * state.digest(j).val();
      EXPECT_NEAR(total, exact_influence(m, spec, seeds), 1e-9);
    }
    EXPECT_THROW(add_seed(oracle, order.front(), state), InputError);
  }
}

TEST(MargGainTest, SingletonAndDominated) {
  const SparseUtilityMatrix m(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 0.5}});
  const MatrixOracle oracle(m);
  SeedState state(AggregationSpec::max(), 2, 2);
  EXPECT_EQ(marg_gain(oracle, 0, state), 3.0);
  add_seed(oracle, 0, state);
  EXPECT_EQ(marg_gain(oracle, 1, state), 0.0);
}

TEST(OrderPreservationTest, MarginalOrderFollowsUtilityOrder) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = testing::random_matrix(rng, 10, 10, 0.5, trial % 2 == 0);
    const auto spec = testing::random_spec(rng, 3);
    SeedState state(spec, m.n_items(), m.n_elements());
    for (ItemId i : testing::random_subset(rng, m.n_items(), 3)) add_seed(MatrixOracle(m), i, state);
    for (ElementId j = 0; j < m.n_elements(); ++j) {
      const auto col = m.column(j);
      for (std::size_t a = 1; a < col.size(); ++a) {
        const double hi = state.digest(j).marg(col[a - 1].utility);
        const double lo = state.digest(j).marg(col[a].utility);
        EXPECT_LE(lo, hi);
      }
    }
  }
}

TEST(BruteForceTest, ExactInfluenceExamples) {
  // Element 0 sees seeds with utilities 1, 1/2, 1/5.
  const SparseUtilityMatrix m(3, 2, {{0, 0, 1.0}, {1, 0, 0.5}, {2, 0, 0.2}, {2, 1, 4.0}},
                              {1.0, 0.5});
  const std::vector<ItemId> all{0, 1, 2};
  const std::vector<ItemId> none;
  const std::vector<ItemId> one{2};
  EXPECT_EQ(exact_influence(m, AggregationSpec({1.0, 0.5}), none), 0.0);
  EXPECT_EQ(exact_influence(m, AggregationSpec({1.0, 0.5}), all), 1.25 + 2.0);
  EXPECT_EQ(exact_influence(m, AggregationSpec::max(), one), 0.2 + 2.0);
}

TEST(BruteForceTest, OptimalSubset) {
  std::mt19937_64 rng(34);
  const auto m = testing::random_matrix(rng, 10, 20, 0.3);
  const auto spec = AggregationSpec({1.0, 0.5});
  // s = 1: the best singleton.
  double best_single = 0.0;
  for (ItemId i = 0; i < m.n_items(); ++i) {
    best_single = std::max(best_single, exact_influence(m, spec, std::vector<ItemId>{i}));
  }
  EXPECT_EQ(optimal_subset(m, spec, 1).second, best_single);
  // s = n: everything.
  std::vector<ItemId> all(m.n_items());
  for (ItemId i = 0; i < m.n_items(); ++i) all[i] = i;
  EXPECT_NEAR(optimal_subset(m, spec, m.n_items()).second, exact_influence(m, spec, all), 1e-12);
  // s = 3 against a bitmask enumeration.
  double best3 = 0.0;
  for (unsigned mask = 0; mask < (1u << m.n_items()); ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    std::vector<ItemId> set;
    for (ItemId i = 0; i < m.n_items(); ++i) {
      if (mask & (1u << i)) set.push_back(i);
    }
    best3 = std::max(best3, exact_influence(m, spec, set));
  }
  EXPECT_EQ(optimal_subset(m, spec, 3).second, best3);
  EXPECT_THROW(optimal_subset(m, spec, 0), InputError);
  const auto big = testing::random_matrix(rng, 21, 2, 0.5);
  EXPECT_THROW(optimal_subset(big, spec, 2), InputError);
}

}  // namespace
}  // namespace skim
