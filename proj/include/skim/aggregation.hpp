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

// Weighted top-l aggregation of utility multisets and the per-element
// utility digest built on it.
//
// F(A) = sum_i gamma_i * (i-th largest value of A), with gamma_1 = 1 and
// gamma non-increasing and non-negative. This covers max (gamma = (1)),
// sum of the top l values, and harmonic weights (1, 1/2, 1/3, ...).

#ifndef SKIM_AGGREGATION_HPP_
#define SKIM_AGGREGATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "skim/types.hpp"

namespace skim {

class AggregationSpec {
 public:
  explicit AggregationSpec(std::vector<double> gamma) : gamma_(std::move(gamma)) {
    if (gamma_.empty()) throw InputError("aggregation needs at least one weight");
    if (gamma_.front() != 1.0) throw InputError("first aggregation weight must be 1");
    for (std::size_t i = 0; i < gamma_.size(); ++i) {
      if (!std::isfinite(gamma_[i]) || gamma_[i] < 0.0)
        throw InputError("aggregation weights must be finite and non-negative");
      if (i > 0 && gamma_[i] > gamma_[i - 1])
        throw InputError("aggregation weights must be non-increasing");
    }
    effective_ell_ = gamma_.size();
    while (gamma_[effective_ell_ - 1] == 0.0) --effective_ell_;
  }

  static AggregationSpec max() { return AggregationSpec({1.0}); }

  static AggregationSpec top_sum(std::size_t ell) {
    return AggregationSpec(std::vector<double>(ell, 1.0));
  }

  static AggregationSpec harmonic(std::size_t ell) {
    std::vector<double> g(ell);
    for (std::size_t i = 0; i < ell; ++i) g[i] = 1.0 / static_cast<double>(i + 1);
    return AggregationSpec(std::move(g));
  }

  std::size_t ell() const noexcept { return gamma_.size(); }
  std::span<const double> gamma() const noexcept { return gamma_; }
  double gamma(std::size_t i) const noexcept {
    return i < gamma_.size() ? gamma_[i] : 0.0;
  }

  // Position of the last strictly positive weight, plus one.
  std::size_t effective_ell() const noexcept { return effective_ell_; }

  // Sum of gamma_i * values[i] over a descending-sorted prefix. The sum is
  // always formed in index order so that equal inputs give bit-equal outputs.
  double weighted_sum(std::span<const double> sorted_desc) const noexcept {
    double total = 0.0;
    const std::size_t n = std::min(sorted_desc.size(), gamma_.size());
    for (std::size_t i = 0; i < n; ++i) total += gamma_[i] * sorted_desc[i];
    return total;
  }

  friend bool operator==(const AggregationSpec& a, const AggregationSpec& b) {
    return a.gamma_ == b.gamma_;
  }

 private:
  std::vector<double> gamma_;
  std::size_t effective_ell_ = 1;
};

/// A dominates B iff every order statistic of A is at least that of B,
/// with missing order statistics read as 0.
inline bool dominates(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end(), std::greater<>());
  std::sort(sb.begin(), sb.end(), std::greater<>());
  const std::size_t n = std::max(sa.size(), sb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < sa.size() ? sa[i] : 0.0;
    const double y = i < sb.size() ? sb[i] : 0.0;
    if (x < y) return false;
  }
  return true;
}

inline double aggregate(const AggregationSpec& spec, std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  for (double x : v) {
    if (!(x >= 0.0)) throw InputError("aggregate: utilities must be non-negative");
  }
  const std::size_t keep = std::min(v.size(), spec.ell());
  std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(keep), v.end(),
                    std::greater<>());
  v.resize(keep);
  return spec.weighted_sum(v);
}

/// Summary of the seed utilities U_S(j) of one element: the l largest
/// positive values in descending order and F of them.
///
/// The digest refers to its AggregationSpec by address; the spec must
/// outlive it.
class UtilityDigest {
 public:
  explicit UtilityDigest(const AggregationSpec& spec) : spec_(&spec) {}
  explicit UtilityDigest(const AggregationSpec&&) = delete;

  const AggregationSpec& spec() const noexcept { return *spec_; }
  std::span<const double> top() const noexcept { return top_; }
  double val() const noexcept { return val_; }

  /// Smallest utility that is not enough to raise val(): the l'-th largest
  /// stored value, where l' is the last index with a positive weight.
  double thresh() const noexcept {
    const std::size_t l = spec_->effective_ell();
    return top_.size() >= l ? top_[l - 1] : 0.0;
  }

  /// F(U + {x}) - F(U). Exactly 0 when x <= thresh(), and monotone in x.
  double marg(double x) const {
    check_utility(x);
    if (x <= thresh()) return 0.0;
    double merged[kInlineEll];
    std::vector<double> heap;
    double* buf = merged;
    const std::size_t n = std::min(top_.size() + 1, spec_->ell());
    if (n > kInlineEll) {
      heap.resize(n);
      buf = heap.data();
    }
    merge_into(x, buf, n);
    return spec_->weighted_sum(std::span<const double>(buf, n)) - val_;
  }

  /// F(U + {y, x}) - F(U + {y}): the gain of x once y has been added.
  double add_marg(double y, double x) const {
    check_utility(y);
    check_utility(x);
    UtilityDigest with_y = *this;
    with_y.update(y);
    return with_y.marg(x);
  }

  void update(double x) {
    check_utility(x);
    if (x == 0.0) return;
    const std::size_t pos = insert_position(x);
    if (pos >= spec_->ell()) return;
    top_.insert(top_.begin() + static_cast<std::ptrdiff_t>(pos), x);
    if (top_.size() > spec_->ell()) top_.pop_back();
    val_ = spec_->weighted_sum(top_);
  }

 private:
  static constexpr std::size_t kInlineEll = 16;

  static void check_utility(double x) {
    if (!(x >= 0.0) || std::isinf(x))
      throw InputError("digest: utility must be finite and non-negative");
  }

  // New values go after stored values equal to them.
  std::size_t insert_position(double x) const noexcept {
    return static_cast<std::size_t>(
        std::upper_bound(top_.begin(), top_.end(), x, std::greater<>()) - top_.begin());
  }

  void merge_into(double x, double* out, std::size_t n) const noexcept {
    const std::size_t pos = insert_position(x);
    std::size_t src = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == pos) {
        out[k] = x;
      } else {
        out[k] = top_[src++];
      }
    }
  }

  const AggregationSpec* spec_;
  std::vector<double> top_;
  double val_ = 0.0;
};

}  // namespace skim

#endif  // SKIM_AGGREGATION_HPP_
