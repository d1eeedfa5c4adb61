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

// The two access primitives to a utility matrix:
//
//  * reverse sorted access: for a fixed element j, items in non-increasing
//    order of u_ij (init / top / pop; destruction is delete);
//  * forward search: for a fixed item i and the current seed set S, every
//    element j with (u|S)_ij > 0 together with u_ij.
//
// Any problem exposing both (plus sizes and element weights) satisfies
// UtilityOracle and can be maximized with run_skim().

#ifndef SKIM_ORACLE_HPP_
#define SKIM_ORACLE_HPP_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "skim/seed_state.hpp"
#include "skim/types.hpp"
#include "skim/utility_matrix.hpp"

namespace skim {

template <class S>
concept RevSortedStream = requires(S s) {
  { s.top() } -> std::same_as<std::optional<ItemUtility>>;
  { s.pop() } -> std::same_as<std::optional<ItemUtility>>;
};

template <class S>
concept ForwardStream = requires(S s) {
  { s.next() } -> std::same_as<std::optional<ElementUtility>>;
};

template <class P>
concept UtilityOracle = requires(const P& p, ItemId i, ElementId j, const SeedState& state) {
  { p.num_items() } -> std::convertible_to<std::size_t>;
  { p.num_elements() } -> std::convertible_to<std::size_t>;
  { p.element_weight(j) } -> std::convertible_to<double>;
  { p.reverse_stream(j) } -> RevSortedStream;
  { p.forward_search(i, state) } -> ForwardStream;
};

/// Guards a forward-search stream against use after a seed was committed.
class StateVersionGuard {
 public:
  explicit StateVersionGuard(const SeedState& state)
      : state_(&state), version_(state.version()) {}

  void check() const {
    if (state_->version() != version_)
      throw ContractViolation("forward search used after the seed set changed");
  }

 private:
  const SeedState* state_;
  std::uint64_t version_;
};

/// Reverse sorted access over a pre-sorted matrix column.
class MatrixRevSortedStream {
 public:
  explicit MatrixRevSortedStream(std::span<const ItemUtility> column) : column_(column) {}

  std::optional<ItemUtility> top() const {
    if (cursor_ >= column_.size()) return std::nullopt;
    return column_[cursor_];
  }

  std::optional<ItemUtility> pop() {
    auto t = top();
    if (t) ++cursor_;
    return t;
  }

 private:
  std::span<const ItemUtility> column_;
  std::size_t cursor_ = 0;
};

/// Forward search over a matrix row, filtering by the live digests.
class MatrixForwardStream {
 public:
  MatrixForwardStream(std::span<const ElementUtility> row, const SeedState& state)
      : row_(row), state_(&state), guard_(state) {}

  std::optional<ElementUtility> next() {
    guard_.check();
    while (cursor_ < row_.size()) {
      const ElementUtility e = row_[cursor_++];
      if (state_->digest(e.element).marg(e.utility) > 0.0) return e;
    }
    return std::nullopt;
  }

 private:
  std::span<const ElementUtility> row_;
  const SeedState* state_;
  StateVersionGuard guard_;
  std::size_t cursor_ = 0;
};

inline MatrixRevSortedStream matrix_rev_sorted_stream(const SparseUtilityMatrix& m, ElementId j) {
  return MatrixRevSortedStream(m.column(j));
}

/// Precondition: i is not in S.
inline MatrixForwardStream matrix_forward_search(const SparseUtilityMatrix& m, ItemId i,
                                                 const SeedState& state) {
  return MatrixForwardStream(m.row(i), state);
}

/// Adapts an explicit matrix to UtilityOracle. Holds a reference.
class MatrixOracle {
 public:
  explicit MatrixOracle(const SparseUtilityMatrix& m) : m_(&m) {}

  std::size_t num_items() const noexcept { return m_->n_items(); }
  std::size_t num_elements() const noexcept { return m_->n_elements(); }
  double element_weight(ElementId j) const { return m_->weight(j); }
  MatrixRevSortedStream reverse_stream(ElementId j) const { return matrix_rev_sorted_stream(*m_, j); }
  MatrixForwardStream forward_search(ItemId i, const SeedState& state) const {
    return matrix_forward_search(*m_, i, state);
  }
  const SparseUtilityMatrix& matrix() const noexcept { return *m_; }

 private:
  const SparseUtilityMatrix* m_;
};

/// Inf(i | S), summed over the forward search from i.
template <UtilityOracle P>
double marg_gain(const P& problem, ItemId i, const SeedState& state,
                 std::uint64_t* yields = nullptr) {
  if (state.contains(i)) return 0.0;
  double total = 0.0;
  auto stream = problem.forward_search(i, state);
  while (auto e = stream.next()) {
    if (yields) ++*yields;
    total += problem.element_weight(e->element) * state.digest(e->element).marg(e->utility);
  }
  return total;
}

/// Adds i to S, updating every affected digest; returns Inf(i | S).
template <UtilityOracle P>
double add_seed(const P& problem, ItemId i, SeedState& state, std::uint64_t* yields = nullptr) {
  if (state.contains(i)) throw InputError("item " + std::to_string(i) + " is already a seed");
  double total = 0.0;
  auto stream = problem.forward_search(i, state);
  while (auto e = stream.next()) {
    if (yields) ++*yields;
    total += problem.element_weight(e->element) * state.digest(e->element).marg(e->utility);
    state.update(e->element, e->utility);
  }
  state.commit(i);
  return total;
}

}  // namespace skim

#endif  // SKIM_ORACLE_HPP_
