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

#ifndef SKIM_UTILITY_MATRIX_HPP_
#define SKIM_UTILITY_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skim/types.hpp"

namespace skim {

struct UtilityEntry {
  ItemId item = 0;
  ElementId element = 0;
  double utility = 0.0;
};

/// Explicit sparse utility matrix: only strictly positive u_ij are stored.
/// Rows are sorted by element id; columns by descending utility with
/// ascending item id among equal utilities.
class SparseUtilityMatrix {
 public:
  SparseUtilityMatrix(std::size_t n_items, std::size_t n_elements,
                      std::vector<UtilityEntry> entries,
                      std::vector<double> element_weights = {})
      : n_items_(n_items),
        n_elements_(n_elements),
        entries_(std::move(entries)),
        weights_(std::move(element_weights)) {
    if (weights_.empty()) weights_.assign(n_elements_, 1.0);
    if (weights_.size() != n_elements_)
      throw InputError("element weight count does not match element count");
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w))
        throw InputError("element weights must be positive and finite");
    }
    for (const auto& e : entries_) {
      if (e.item >= n_items_) throw InputError("item id out of range");
      if (e.element >= n_elements_) throw InputError("element id out of range");
      if (!(e.utility > 0.0) || !std::isfinite(e.utility))
        throw InputError("stored utilities must be positive and finite");
    }
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
      return a.item != b.item ? a.item < b.item : a.element < b.element;
    });
    for (std::size_t k = 1; k < entries_.size(); ++k) {
      if (entries_[k].item == entries_[k - 1].item &&
          entries_[k].element == entries_[k - 1].element) {
        throw InputError("duplicate entry (" + std::to_string(entries_[k].item) + ", " +
                         std::to_string(entries_[k].element) + ")");
      }
    }
    build_indexes();
  }

  std::size_t n_items() const noexcept { return n_items_; }
  std::size_t n_elements() const noexcept { return n_elements_; }
  std::size_t num_entries() const noexcept { return entries_.size(); }
  std::span<const UtilityEntry> entries() const noexcept { return entries_; }
  std::span<const double> element_weights() const noexcept { return weights_; }
  double weight(ElementId j) const { return weights_.at(j); }

  std::span<const ElementUtility> row(ItemId i) const {
    if (i >= n_items_) throw InputError("item id out of range");
    return std::span<const ElementUtility>(rows_).subspan(
        row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]);
  }

  std::span<const ItemUtility> column(ElementId j) const {
    if (j >= n_elements_) throw InputError("element id out of range");
    return std::span<const ItemUtility>(columns_).subspan(
        col_offsets_[j], col_offsets_[j + 1] - col_offsets_[j]);
  }

  /// u_ij, or 0 when the pair is not stored.
  double utility(ItemId i, ElementId j) const {
    const auto r = row(i);
    const auto it = std::lower_bound(
        r.begin(), r.end(), j, [](const ElementUtility& e, ElementId v) { return e.element < v; });
    return it != r.end() && it->element == j ? it->utility : 0.0;
  }

 private:
  void build_indexes() {
    row_offsets_.assign(n_items_ + 1, 0);
    col_offsets_.assign(n_elements_ + 1, 0);
    for (const auto& e : entries_) {
      ++row_offsets_[e.item + 1];
      ++col_offsets_[e.element + 1];
    }
    for (std::size_t i = 0; i < n_items_; ++i) row_offsets_[i + 1] += row_offsets_[i];
    for (std::size_t j = 0; j < n_elements_; ++j) col_offsets_[j + 1] += col_offsets_[j];

    rows_.resize(entries_.size());
    columns_.resize(entries_.size());
    std::vector<std::size_t> col_fill(col_offsets_.begin(), col_offsets_.end() - 1);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      const auto& e = entries_[k];
      rows_[k] = {e.element, e.utility};
      columns_[col_fill[e.element]++] = {e.item, e.utility};
    }
    for (std::size_t j = 0; j < n_elements_; ++j) {
      std::sort(columns_.begin() + static_cast<std::ptrdiff_t>(col_offsets_[j]),
                columns_.begin() + static_cast<std::ptrdiff_t>(col_offsets_[j + 1]),
                [](const ItemUtility& a, const ItemUtility& b) {
                  return a.utility != b.utility ? a.utility > b.utility : a.item < b.item;
                });
    }
  }

  std::size_t n_items_;
  std::size_t n_elements_;
  std::vector<UtilityEntry> entries_;
  std::vector<double> weights_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_offsets_;
  std::vector<ElementUtility> rows_;
  std::vector<ItemUtility> columns_;
};

}  // namespace skim

#endif  // SKIM_UTILITY_MATRIX_HPP_
