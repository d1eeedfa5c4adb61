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

#ifndef SKIM_SEED_STATE_HPP_
#define SKIM_SEED_STATE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "skim/aggregation.hpp"
#include "skim/types.hpp"

namespace skim {

/// The current seed set S together with one utility digest per element.
///
/// `version()` changes every time a seed is committed; forward-search
/// streams capture it and refuse to continue once it moves.
class SeedState {
 public:
  SeedState(AggregationSpec spec, std::size_t n_items, std::size_t n_elements)
      : spec_(std::make_unique<AggregationSpec>(std::move(spec))),
        digests_(n_elements, UtilityDigest(*spec_)),
        in_seed_(n_items, false) {}

  SeedState(SeedState&&) noexcept = default;
  SeedState& operator=(SeedState&&) noexcept = default;
  SeedState(const SeedState&) = delete;
  SeedState& operator=(const SeedState&) = delete;

  const AggregationSpec& spec() const noexcept { return *spec_; }
  std::size_t n_items() const noexcept { return in_seed_.size(); }
  std::size_t n_elements() const noexcept { return digests_.size(); }

  const UtilityDigest& digest(ElementId j) const { return digests_.at(j); }
  std::span<const UtilityDigest> digests() const noexcept { return digests_; }

  /// Marginal utility of adding item i at element j given u_ij; zero for
  /// items already in S.
  double marg(ItemId i, ElementId j, double u) const {
    return in_seed_[i] ? 0.0 : digests_[j].marg(u);
  }

  void update(ElementId j, double u) { digests_.at(j).update(u); }

  bool contains(ItemId i) const { return in_seed_.at(i); }
  std::span<const ItemId> seeds() const noexcept { return seeds_; }
  std::uint64_t version() const noexcept { return version_; }

  /// Records i as a member of S after its digest updates were applied.
  void commit(ItemId i) {
    if (i >= in_seed_.size()) throw InputError("seed id out of range");
    if (in_seed_[i]) throw InputError("item " + std::to_string(i) + " is already a seed");
    in_seed_[i] = true;
    seeds_.push_back(i);
    ++version_;
  }

 private:
  std::unique_ptr<AggregationSpec> spec_;
  std::vector<UtilityDigest> digests_;
  std::vector<bool> in_seed_;
  std::vector<ItemId> seeds_;
  std::uint64_t version_ = 0;
};

}  // namespace skim

#endif  // SKIM_SEED_STATE_HPP_
