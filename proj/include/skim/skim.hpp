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

// Sketch-based approximate greedy maximization over any UtilityOracle.
//
// Every element j gets a random rank r_j in (0, 1]. For the current seed set
// S and a threshold tau, item i's sample A_i holds the elements with
//   w_j (u|S)_ij / r_j >= tau,
// and its marginal influence is estimated by the inverse-probability sum
//   est(i) = sum_{j in A_i} max(w_j (u|S)_ij, tau)
//          = Est.H[i] + tau * Est.M[i].
// Samples are stored inverted: index[j] lists the items that sampled j, in
// the reverse-access order (non-increasing u_ij, hence non-increasing
// marginal). Each list is split into three contiguous segments:
//   H  [0, h_end)      w (u|S) >= tau
//   M  [h_end, m_end)  w (u|S) < tau <= w (u|S) / r
//   L  [m_end, size)   w (u|S) / r < tau, kept for later threshold drops.
// Lowering tau promotes entries (move_up); adding a seed demotes them
// (move_down). A candidate is accepted once its estimate reaches k * tau and
// its exact marginal, from a forward search, is at least (1 - 1/sqrt(k)) of
// the estimate.

#ifndef SKIM_SKIM_HPP_
#define SKIM_SKIM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skim/aggregation.hpp"
#include "skim/detail/lazy_queue.hpp"
#include "skim/oracle.hpp"
#include "skim/seed_state.hpp"
#include "skim/types.hpp"

namespace skim {

enum class RankScheme {
  kUniform,      // r_j ~ U(0, 1]
  kPermutation,  // r_j = (position of j in a random permutation) / |E|
};

struct SkimTraceRecord {
  double tau = 0.0;
  ItemId item = 0;
  double estimate = 0.0;
  double exact_gain = 0.0;
};

struct SkimOptions {
  // Sample-size parameter; when unset, ceil(3 epsilon^-2 ln(n_elements + n_items)).
  std::optional<std::size_t> k;
  double lambda = 0.5;  // threshold decrease factor
  double epsilon = 0.1;
  std::uint64_t rng_seed = 0;
  RankScheme rank_scheme = RankScheme::kUniform;
  // Re-derive every segment and estimate after each step (slow; for tests).
  bool validate = false;
  std::function<void(const SkimTraceRecord&)> trace;
};

struct SkimStats {
  std::uint64_t seed_yields = 0;      // forward-search yields while adding seeds
  std::uint64_t estimate_yields = 0;  // forward-search yields inside exact checks
  std::uint64_t marg_gain_calls = 0;
  std::uint64_t rejections = 0;  // exact check failed
  std::uint64_t reverse_pops = 0;
  std::uint64_t samples = 0;  // entries appended to inverted samples
  std::uint64_t threshold_steps = 0;

  std::uint64_t forward_yields() const noexcept { return seed_yields + estimate_yields; }
};

inline std::size_t default_k(double epsilon, std::size_t n_elements, std::size_t n_items) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  const double n = static_cast<double>(std::max<std::size_t>(n_elements + n_items, 2));
  const double k = std::ceil(3.0 * std::log(n) / (epsilon * epsilon));
  return std::max<std::size_t>(2, static_cast<std::size_t>(k));
}

template <UtilityOracle P>
class SkimEngine {
 public:
  using Stream = decltype(std::declval<const P&>().reverse_stream(ElementId{}));

  SkimEngine(const P& problem, AggregationSpec spec, SkimOptions options = {})
      : problem_(&problem),
        options_(std::move(options)),
        n_items_(problem.num_items()),
        n_elements_(problem.num_elements()),
        state_(std::move(spec), n_items_, n_elements_),
        rank_(n_elements_, 1.0),
        weight_(n_elements_, 1.0),
        index_(n_elements_),
        h_end_(n_elements_, 0),
        m_end_(n_elements_, 0),
        est_h_(n_items_, 0.0),
        est_m_(n_items_, 0),
        streams_(n_elements_),
        qitems_(n_items_),
        qhml_(n_elements_) {
    if (!(options_.lambda > 0.0 && options_.lambda < 1.0))
      throw InputError("lambda must lie in (0, 1)");
    k_ = options_.k ? *options_.k : default_k(options_.epsilon, n_elements_, n_items_);
    if (k_ < 2) throw InputError("k must be at least 2");
    accept_factor_ = 1.0 - 1.0 / std::sqrt(static_cast<double>(k_));
    for (ElementId j = 0; j < n_elements_; ++j) {
      weight_[j] = problem.element_weight(j);
      if (!(weight_[j] > 0.0)) throw InputError("element weights must be positive");
    }
    draw_ranks();
  }

  // ---------------------------------------------------------------- setup

  /// Adds i to S before init(); used to study estimates for a fixed S.
  void preload_seed(ItemId i) {
    if (initialized_) throw ContractViolation("preload_seed after init");
    add_seed(*problem_, i, state_);
  }

  /// Overrides an element's rank before init().
  void set_rank(ElementId j, double r) {
    if (initialized_) throw ContractViolation("set_rank after init");
    if (!(r > 0.0 && r <= 1.0)) throw InputError("rank must lie in (0, 1]");
    rank_.at(j) = r;
  }

  /// Opens every reverse stream, fills Qelements and sets
  /// tau = Qelements.top / (2k).
  void init() {
    if (initialized_) return;
    initialized_ = true;
    for (ElementId j = 0; j < n_elements_; ++j) {
      streams_[j].emplace(problem_->reverse_stream(j));
      const auto t = streams_[j]->top();
      if (!t) {
        streams_[j].reset();
        continue;
      }
      qelements_.push({weight_[j] * t->utility / rank_[j], j});
    }
    tau_ = qelements_.empty() ? 0.0 : qelements_.top().priority / (2.0 * static_cast<double>(k_));
  }

  void set_threshold(double tau) {
    if (!(tau > 0.0)) throw InputError("threshold must be positive");
    tau_ = tau;
  }

  // ------------------------------------------------------------ operations

  /// tau <- lambda * tau, then promote entries and pull new samples.
  void lower_threshold() {
    tau_ *= options_.lambda;
    ++stats_.threshold_steps;
    move_up();
    sample();
    validate_if_requested("lower_threshold");
  }

  /// Pulls from the reverse stream of every element in Qelements whose
  /// priority is at least tau, appending H and M entries to its sample.
  void sample() {
    while (!qelements_.empty() && qelements_.top().priority >= tau_) {
      const ElementId j = qelements_.top().element;
      qelements_.pop();
      pull(j);
    }
  }

  /// Candidate selection. Returns the accepted (item, estimate), or nullopt
  /// when tau must drop further first.
  std::optional<std::pair<ItemId, double>> next_seed() {
    const double bar = static_cast<double>(k_) * tau_;
    while (true) {
      const auto top = live_top();
      if (!top || top->priority < bar) return std::nullopt;
      qitems_.pop();
      const ItemId i = top->id;
      const double est = estimate(i);
      if (est >= bar && est >= fresh_max()) {
        ++stats_.marg_gain_calls;
        const double exact = marg_gain(*problem_, i, state_, &stats_.estimate_yields);
        if (exact >= accept_factor_ * est) return std::make_pair(i, est);
        ++stats_.rejections;
        qitems_.set(i, exact);
        return std::nullopt;
      }
      qitems_.set(i, est);
    }
  }

  /// Promotes entries of every element whose reclassification threshold has
  /// been reached: M/L -> H where w(u|S) >= tau, then L -> M where
  /// w(u|S)/r >= tau.
  void move_up() {
    while (true) {
      const auto t = qhml_.top();
      if (!t || t->priority < tau_) break;
      qhml_.pop();
      const ElementId j = t->id;
      auto& idx = index_[j];
      std::size_t& h = h_end_[j];
      std::size_t& m = m_end_[j];
      while (h < idx.size()) {
        const double c = wmarg(j, idx[h]);
        if (!(c >= tau_)) break;
        const ItemId i = idx[h].item;
        est_h_[i] += c;
        if (h < m) --est_m_[i];
        ++h;
        touch(i);
      }
      if (m < h) m = h;
      while (m < idx.size() && wmarg(j, idx[m]) / rank_[j] >= tau_) {
        const ItemId i = idx[m].item;
        ++est_m_[i];
        ++m;
        touch(i);
      }
      update_reclass_thresh(j);
    }
  }

  /// Reclassifies index[j] for a new seed `seed` with utility x at j. Must be
  /// called before j's digest is updated with x. Entries of the new seed and
  /// entries whose marginal drops to 0 are removed.
  void move_down(ElementId j, double x, ItemId seed) {
    auto& idx = index_[j];
    if (idx.empty()) return;
    const UtilityDigest& d = state_.digest(j);
    const double w = weight_[j];
    const double r = rank_[j];
    std::vector<ItemUtility> kept;
    kept.reserve(idx.size());
    std::size_t new_h = 0, new_m = 0;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const ItemUtility e = idx[pos];
      const ItemId i = e.item;
      if (pos < h_end_[j]) {
        est_h_[i] -= w * d.marg(e.utility);
      } else if (pos < m_end_[j]) {
        --est_m_[i];
      }
      const double c = (i == seed || state_.contains(i)) ? 0.0 : w * d.add_marg(x, e.utility);
      if (!(c > 0.0)) continue;
      if (c >= tau_) {
        est_h_[i] += c;
        ++new_h;
        ++new_m;
      } else if (c / r >= tau_) {
        ++est_m_[i];
        ++new_m;
      }
      kept.push_back(e);
    }
    idx = std::move(kept);
    h_end_[j] = new_h;
    m_end_[j] = new_m;
    qhml_.erase(j);
  }

  /// Sets j's Qhml priority to the larger of the marginal of the first non-H
  /// entry and the rank-scaled marginal of the first L entry; removes j when
  /// neither exists.
  void update_reclass_thresh(ElementId j) {
    const auto& idx = index_[j];
    double c = 0.0;
    if (h_end_[j] < idx.size()) c = wmarg(j, idx[h_end_[j]]);
    if (m_end_[j] < idx.size()) c = std::max(c, wmarg(j, idx[m_end_[j]]) / rank_[j]);
    if (c > 0.0) {
      qhml_.set(j, c);
    } else {
      qhml_.erase(j);
    }
  }

  /// Adds a selected item to S: forward search, move_down and digest update
  /// per yielded element. Returns the exact marginal influence.
  double add_selected_seed(ItemId i, double estimate_value) {
    if (state_.contains(i)) throw InputError("item " + std::to_string(i) + " is already a seed");
    double gain = 0.0;
    {
      auto stream = problem_->forward_search(i, state_);
      while (auto y = stream.next()) {
        ++stats_.seed_yields;
        const ElementId j = y->element;
        move_down(j, y->utility, i);
        gain += weight_[j] * state_.digest(j).marg(y->utility);
        state_.update(j, y->utility);
        update_reclass_thresh(j);
      }
    }
    state_.commit(i);
    qitems_.erase(i);
    cumulative_ += gain;
    sequence_.push_back({i, estimate_value, gain, cumulative_, false});
    if (options_.trace) options_.trace({tau_, i, estimate_value, gain});
    validate_if_requested("add_selected_seed");
    return gain;
  }

  /// The full run. Stops after the first seed whose exact gain is below
  /// 1/n^2 of the first seed's (n = number of items), when every item is a
  /// seed, or when no candidate with positive marginal remains.
  GreedySequence run() {
    init();
    double first_gain = -1.0;
    while (state_.seeds().size() < n_items_) {
      std::optional<std::pair<ItemId, double>> pick;
      while (!(pick = next_seed())) {
        if (exhausted()) return sequence_;
        lower_threshold();
      }
      const double gain = add_selected_seed(pick->first, pick->second);
      if (first_gain < 0.0) first_gain = gain;
      const double n = static_cast<double>(n_items_);
      if (gain < first_gain / (n * n)) break;
    }
    return sequence_;
  }

  /// True when lowering tau can no longer produce a candidate.
  bool exhausted() {
    if (!(tau_ > std::numeric_limits<double>::min())) return true;
    if (!qelements_.empty() || !qhml_.empty()) return false;
    for (ItemId i = 0; i < n_items_; ++i) {
      if (!state_.contains(i) && estimate(i) > 0.0) return false;
    }
    return true;
  }

  // ------------------------------------------------------------- accessors

  double tau() const noexcept { return tau_; }
  std::size_t k() const noexcept { return k_; }
  double rank(ElementId j) const { return rank_.at(j); }
  double estimate(ItemId i) const { return est_h_[i] + tau_ * static_cast<double>(est_m_[i]); }
  double est_h(ItemId i) const { return est_h_.at(i); }
  std::int64_t est_m(ItemId i) const { return est_m_.at(i); }
  std::span<const ItemUtility> sample_of(ElementId j) const { return index_.at(j); }
  std::size_t h_end(ElementId j) const { return h_end_.at(j); }
  std::size_t m_end(ElementId j) const { return m_end_.at(j); }
  bool in_qhml(ElementId j) const { return qhml_.contains(j); }
  double qhml_priority(ElementId j) const { return qhml_.key(j); }
  const SeedState& seeds() const noexcept { return state_; }
  const SkimStats& stats() const noexcept { return stats_; }
  const GreedySequence& sequence() const noexcept { return sequence_; }

  /// Sum over i's H and M entries of max(w (u|S), tau), from scratch.
  double estimate_from_scratch(ItemId i) const {
    double total = 0.0;
    for (ElementId j = 0; j < n_elements_; ++j) {
      const auto& idx = index_[j];
      for (std::size_t pos = 0; pos < m_end_[j] && pos < idx.size(); ++pos) {
        if (idx[pos].item == i) total += std::max(wmarg(j, idx[pos]), tau_);
      }
    }
    return total;
  }

  /// Recomputes every entry's class and every estimate component from the
  /// digests. Returns an empty string when consistent, else a description.
  std::string check_invariants() const {
    std::ostringstream err;
    std::vector<double> h_sum(n_items_, 0.0);
    std::vector<std::int64_t> m_count(n_items_, 0);
    for (ElementId j = 0; j < n_elements_; ++j) {
      const auto& idx = index_[j];
      if (h_end_[j] > m_end_[j] || m_end_[j] > idx.size()) {
        err << "element " << j << ": bad markers";
        return err.str();
      }
      for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        const ItemUtility& e = idx[pos];
        if (state_.contains(e.item)) {
          err << "element " << j << ": seed " << e.item << " still sampled";
          return err.str();
        }
        if (pos > 0 && idx[pos - 1].utility < e.utility) {
          err << "element " << j << ": sample not in reverse order";
          return err.str();
        }
        const double c = wmarg(j, e);
        if (!(c > 0.0)) {
          err << "element " << j << ": zero-marginal entry for item " << e.item;
          return err.str();
        }
        const bool is_h = c >= tau_;
        const bool is_m = !is_h && c / rank_[j] >= tau_;
        const bool at_h = pos < h_end_[j];
        const bool at_m = !at_h && pos < m_end_[j];
        if (is_h != at_h || is_m != at_m) {
          err << "element " << j << " position " << pos << ": class mismatch";
          return err.str();
        }
        if (at_h) h_sum[e.item] += c;
        if (at_m) ++m_count[e.item];
      }
    }
    for (ItemId i = 0; i < n_items_; ++i) {
      if (state_.contains(i)) continue;
      const double tol = 1e-9 * std::max(1.0, std::abs(h_sum[i]));
      if (std::abs(h_sum[i] - est_h_[i]) > tol || m_count[i] != est_m_[i]) {
        err << "item " << i << ": estimate components drifted";
        return err.str();
      }
    }
    return {};
  }

 private:
  struct ElementPriority {
    double priority;
    ElementId element;
    friend bool operator<(const ElementPriority& a, const ElementPriority& b) {
      return a.priority != b.priority ? a.priority < b.priority : a.element > b.element;
    }
  };

  void draw_ranks() {
    std::mt19937_64 rng(options_.rng_seed);
    if (options_.rank_scheme == RankScheme::kUniform) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (auto& r : rank_) r = 1.0 - u(rng);
    } else {
      std::vector<ElementId> perm(n_elements_);
      std::iota(perm.begin(), perm.end(), ElementId{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      const double total = static_cast<double>(n_elements_);
      for (std::size_t pos = 0; pos < perm.size(); ++pos) {
        rank_[perm[pos]] = static_cast<double>(pos + 1) / total;
      }
    }
  }

  double wmarg(ElementId j, const ItemUtility& e) const {
    return weight_[j] * state_.marg(e.item, j, e.utility);
  }

  void touch(ItemId i) {
    const double est = estimate(i);
    if (!qitems_.contains(i) || est > qitems_.key(i)) qitems_.set(i, est);
  }

  std::optional<detail::LazyMaxQueue::Top> live_top() {
    while (true) {
      const auto t = qitems_.top();
      if (!t || !state_.contains(t->id)) return t;
      qitems_.erase(t->id);
    }
  }

  // Largest queued priority after re-keying queued entries that overstate
  // their current estimate.
  double fresh_max() {
    while (true) {
      const auto t = live_top();
      if (!t) return -std::numeric_limits<double>::infinity();
      const double est = estimate(t->id);
      if (est >= t->priority) return t->priority;
      qitems_.set(t->id, est);
    }
  }

  void pull(ElementId j) {
    auto& stream = streams_[j];
    if (!stream) return;
    const UtilityDigest& d = state_.digest(j);
    auto& idx = index_[j];
    bool appended = false;
    while (true) {
      const auto t = stream->top();
      if (!t || t->utility < d.thresh()) {
        stream.reset();
        break;
      }
      const double c = wmarg(j, *t);
      if (!(c > 0.0)) {
        stream->pop();
        ++stats_.reverse_pops;
        continue;
      }
      if (c / rank_[j] < tau_) {
        qelements_.push({c / rank_[j], j});
        break;
      }
      stream->pop();
      ++stats_.reverse_pops;
      ++stats_.samples;
      idx.push_back(*t);
      const ItemId i = t->item;
      if (c >= tau_ && h_end_[j] + 1 == idx.size()) {
        est_h_[i] += c;
        ++h_end_[j];
        ++m_end_[j];
      } else {
        ++est_m_[i];
        ++m_end_[j];
      }
      appended = true;
      touch(i);
    }
    if (appended) update_reclass_thresh(j);
  }

  void validate_if_requested(const char* where) const {
    if (!options_.validate) return;
    const std::string err = check_invariants();
    if (!err.empty()) throw ContractViolation(std::string(where) + ": " + err);
  }

  const P* problem_;
  SkimOptions options_;
  std::size_t n_items_;
  std::size_t n_elements_;
  SeedState state_;
  std::size_t k_ = 2;
  double accept_factor_ = 0.0;
  double tau_ = 0.0;
  bool initialized_ = false;

  std::vector<double> rank_;
  std::vector<double> weight_;
  std::vector<std::vector<ItemUtility>> index_;
  std::vector<std::size_t> h_end_;
  std::vector<std::size_t> m_end_;
  std::vector<double> est_h_;
  std::vector<std::int64_t> est_m_;
  std::vector<std::optional<Stream>> streams_;

  std::priority_queue<ElementPriority> qelements_;
  detail::LazyMaxQueue qitems_;
  detail::LazyMaxQueue qhml_;

  double cumulative_ = 0.0;
  GreedySequence sequence_;
  SkimStats stats_;
};

/// Runs the full sketch-based greedy and returns the selected seeds with
/// their estimates and exact marginal influences.
template <UtilityOracle P>
GreedySequence run_skim(const P& problem, const AggregationSpec& spec, SkimOptions options = {},
                        SkimStats* stats = nullptr) {
  SkimEngine<P> engine(problem, spec, std::move(options));
  auto seq = engine.run();
  if (stats) *stats = engine.stats();
  return seq;
}

}  // namespace skim

#endif  // SKIM_SKIM_HPP_
