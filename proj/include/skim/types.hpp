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

#ifndef SKIM_TYPES_HPP_
#define SKIM_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skim {

using ItemId = std::uint32_t;
using ElementId = std::uint32_t;
using NodeId = std::uint32_t;

/// An (item, utility) pair as produced by reverse sorted access.
struct ItemUtility {
  ItemId item = 0;
  double utility = 0.0;

  friend bool operator==(const ItemUtility&, const ItemUtility&) = default;
};

/// An (element, utility) pair as produced by forward search.
struct ElementUtility {
  ElementId element = 0;
  double utility = 0.0;

  friend bool operator==(const ElementUtility&, const ElementUtility&) = default;
};

/// Caller supplied something outside an operation's domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `line()` is 1-based; 0 means "no specific line".
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what
                             : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An object was used in a way its contract forbids (e.g. a stale stream).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One selection in a greedy sequence.
struct SeedRecord {
  ItemId item = 0;
  // Sample-based estimate; absent for algorithms that only use exact gains.
  std::optional<double> estimated_gain;
  double exact_gain = 0.0;
  double cumulative_influence = 0.0;
  // Set for items appended after lazy greedy dropped them below its cutoff.
  bool below_cutoff = false;
};

using GreedySequence = std::vector<SeedRecord>;

}  // namespace skim

#endif  // SKIM_TYPES_HPP_
