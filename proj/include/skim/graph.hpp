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

#ifndef SKIM_GRAPH_HPP_
#define SKIM_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "skim/types.hpp"

namespace skim {

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A weighted directed graph given as an edge list.
struct DiGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  void validate() const {
    for (const auto& e : edges) {
      if (e.src >= n || e.dst >= n) throw InputError("edge endpoint out of range");
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw InputError("edge weights must be positive and finite");
    }
  }
};

struct Arc {
  NodeId node = 0;  // the other endpoint
  double weight = 0.0;
};

/// One sampled edge set in CSR form, with out- and in-adjacency. Each
/// adjacency list is sorted by ascending weight.
class GraphInstance {
 public:
  GraphInstance(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    DiGraph{n_, edges_}.validate();
    build(out_offsets_, out_, /*forward=*/true);
    build(in_offsets_, in_, /*forward=*/false);
  }

  std::size_t num_nodes() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Arc> out_arcs(NodeId v) const {
    return std::span<const Arc>(out_).subspan(out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
  }
  std::span<const Arc> in_arcs(NodeId v) const {
    return std::span<const Arc>(in_).subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
  }
  std::span<const Arc> arcs(NodeId v, bool transposed) const {
    return transposed ? in_arcs(v) : out_arcs(v);
  }

 private:
  void build(std::vector<std::size_t>& offsets, std::vector<Arc>& arcs, bool forward) const {
    offsets.assign(n_ + 1, 0);
    for (const auto& e : edges_) ++offsets[(forward ? e.src : e.dst) + 1];
    for (std::size_t v = 0; v < n_; ++v) offsets[v + 1] += offsets[v];
    arcs.resize(edges_.size());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges_) {
      const NodeId from = forward ? e.src : e.dst;
      arcs[fill[from]++] = {forward ? e.dst : e.src, e.weight};
    }
    for (std::size_t v = 0; v < n_; ++v) {
      std::sort(arcs.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                arcs.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]),
                [](const Arc& a, const Arc& b) {
                  return a.weight != b.weight ? a.weight < b.weight : a.node < b.node;
                });
    }
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<Arc> out_, in_;
};

/// Node-shared graph instances. Element j is the pair (node j % n,
/// instance j / n).
class GraphInstanceSet {
 public:
  GraphInstanceSet(std::size_t n, std::vector<std::vector<Edge>> edge_sets) : n_(n) {
    if (edge_sets.empty()) throw InputError("need at least one graph instance");
    instances_.reserve(edge_sets.size());
    for (auto& edges : edge_sets) {
      for (const auto& e : edges) max_weight_ = std::max(max_weight_, e.weight);
      instances_.emplace_back(n, std::move(edges));
    }
    if (max_weight_ == 0.0) max_weight_ = 1.0;
  }

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_instances() const noexcept { return instances_.size(); }
  std::size_t num_elements() const noexcept { return n_ * instances_.size(); }
  const GraphInstance& instance(std::size_t h) const { return instances_.at(h); }

  // Largest edge weight over all instances (1 when there are no edges). Used
  // as the survival threshold of a node to itself.
  double max_weight() const noexcept { return max_weight_; }

  ElementId element(std::size_t h, NodeId v) const noexcept {
    return static_cast<ElementId>(h * n_ + v);
  }
  NodeId node_of(ElementId j) const noexcept { return static_cast<NodeId>(j % n_); }
  std::size_t instance_of(ElementId j) const noexcept { return j / n_; }

 private:
  std::size_t n_;
  std::vector<GraphInstance> instances_;
  double max_weight_ = 0.0;
};

/// Every instance is a copy of the base graph.
struct FixedModel {};

/// Independent cascade: each edge survives independently with probability
/// `probability`, or with its own weight read as a probability when unset.
/// Surviving edges get weight 1.
struct IndependentCascadeModel {
  std::optional<double> probability;
};

/// Each edge gets an independent Exp(rate) length; the rate is `rate`, or the
/// edge's own weight when unset.
struct ExponentialLengthModel {
  std::optional<double> rate;
};

using InstanceModel = std::variant<FixedModel, IndependentCascadeModel, ExponentialLengthModel>;

inline GraphInstanceSet simulate_instances(const DiGraph& base, const InstanceModel& model,
                                           std::size_t count, std::uint64_t rng_seed) {
  base.validate();
  if (count == 0) throw InputError("instance count must be at least 1");

  if (const auto* ic = std::get_if<IndependentCascadeModel>(&model)) {
    auto check = [](double p) {
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability outside [0, 1]");
    };
    if (ic->probability) {
      check(*ic->probability);
    } else {
      for (const auto& e : base.edges) check(e.weight);
    }
  }
  if (const auto* ex = std::get_if<ExponentialLengthModel>(&model)) {
    if (ex->rate && !(*ex->rate > 0.0 && std::isfinite(*ex->rate)))
      throw InputError("exponential rate must be positive");
  }

  std::vector<std::vector<Edge>> sets(count);
  for (std::size_t h = 0; h < count; ++h) {
    std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                      static_cast<std::uint32_t>(h)};
    std::mt19937_64 rng(seq);
    auto& out = sets[h];
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, FixedModel>) {
            out = base.edges;
          } else if constexpr (std::is_same_v<M, IndependentCascadeModel>) {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            for (const auto& e : base.edges) {
              const double p = m.probability.value_or(e.weight);
              if (coin(rng) < p) out.push_back({e.src, e.dst, 1.0});
            }
          } else {
            for (const auto& e : base.edges) {
              std::exponential_distribution<double> len(m.rate.value_or(e.weight));
              double w = 0.0;
              while (!(w > 0.0)) w = len(rng);
              out.push_back({e.src, e.dst, w});
            }
          }
        },
        model);
  }
  return GraphInstanceSet(base.n, std::move(sets));
}

}  // namespace skim

#endif  // SKIM_GRAPH_HPP_
