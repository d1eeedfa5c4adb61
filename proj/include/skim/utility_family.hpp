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

#ifndef SKIM_UTILITY_FAMILY_HPP_
#define SKIM_UTILITY_FAMILY_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "skim/types.hpp"

namespace skim {

/// alpha(x) = 1 if x <= T else 0.
struct ThresholdAlpha {
  double t = 1.0;
};

/// alpha(x) = 1 / max(x, 1).
struct InverseAlpha {};

/// alpha(x) = exp(-x / sigma).
struct ExponentialAlpha {
  double sigma = 1.0;
};

/// Step function: alpha(x) is the value of the last breakpoint with
/// x_k <= x, or the first value when x is below every breakpoint.
struct TableAlpha {
  std::vector<std::pair<double, double>> points;  // (x_k, value_k), x ascending
};

/// A non-increasing map from [0, inf] to [0, inf) with alpha(inf) = 0.
class Alpha {
 public:
  using Kind = std::variant<ThresholdAlpha, InverseAlpha, ExponentialAlpha, TableAlpha>;

  Alpha() : kind_(InverseAlpha{}) {}
  template <typename K>
    requires std::is_constructible_v<Kind, K>
  Alpha(K kind) : kind_(std::move(kind)) { validate(); }  // NOLINT(runtime/explicit)

  double operator()(double x) const {
    if (std::isinf(x)) return 0.0;
    return std::visit(
        [x](const auto& a) -> double {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, ThresholdAlpha>) {
            return x <= a.t ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<A, InverseAlpha>) {
            return 1.0 / std::max(x, 1.0);
          } else if constexpr (std::is_same_v<A, ExponentialAlpha>) {
            return std::exp(-x / a.sigma);
          } else {
            double v = a.points.front().second;
            for (const auto& [px, pv] : a.points) {
              if (px > x) break;
              v = pv;
            }
            return v;
          }
        },
        kind_);
  }

  const Kind& kind() const noexcept { return kind_; }

 private:
  void validate() const {
    if (const auto* t = std::get_if<ThresholdAlpha>(&kind_)) {
      if (!(t->t >= 0.0)) throw InputError("threshold alpha needs T >= 0");
    } else if (const auto* e = std::get_if<ExponentialAlpha>(&kind_)) {
      if (!(e->sigma > 0.0) || !std::isfinite(e->sigma))
        throw InputError("exponential alpha needs sigma > 0");
    } else if (const auto* tab = std::get_if<TableAlpha>(&kind_)) {
      if (tab->points.empty()) throw InputError("alpha table is empty");
      for (std::size_t k = 0; k < tab->points.size(); ++k) {
        const auto [x, v] = tab->points[k];
        if (!std::isfinite(x) || !std::isfinite(v) || v < 0.0)
          throw InputError("alpha table entries must be finite and values non-negative");
        if (k > 0 && !(x > tab->points[k - 1].first))
          throw InputError("alpha table breakpoints must be strictly increasing");
        if (k > 0 && v > tab->points[k - 1].second)
          throw InputError("alpha table values must be non-increasing");
      }
    }
  }

  Kind kind_;
};

enum class FamilyKind { kDistance, kReverseRank, kReachability, kSurvivalThreshold };

/// How utilities are read off a graph instance:
///  distance:  u_ij = alpha(d_{i, v(j)})
///  reverse rank: u_ij = alpha(pi_{v(j), i}), pi = Dijkstra rank
///  reachability: u_ij = 1 iff v(j) is reachable from i
///  survival threshold: u_ij = tau_{i, v(j)}, the bottleneck lifetime
struct UtilityFamily {
  FamilyKind kind = FamilyKind::kDistance;
  Alpha alpha;

  static UtilityFamily distance(Alpha a) { return {FamilyKind::kDistance, std::move(a)}; }
  static UtilityFamily reverse_rank(Alpha a) { return {FamilyKind::kReverseRank, std::move(a)}; }
  static UtilityFamily reachability() { return {FamilyKind::kReachability, Alpha()}; }
  static UtilityFamily survival_threshold() { return {FamilyKind::kSurvivalThreshold, Alpha()}; }

  bool uses_alpha() const noexcept {
    return kind == FamilyKind::kDistance || kind == FamilyKind::kReverseRank;
  }
};

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::kDistance: return "distance";
    case FamilyKind::kReverseRank: return "reverse_rank";
    case FamilyKind::kReachability: return "reachability";
    case FamilyKind::kSurvivalThreshold: return "survival_threshold";
  }
  return "unknown";
}

}  // namespace skim

#endif  // SKIM_UTILITY_FAMILY_HPP_
