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

#ifndef SKIM_DETAIL_LAZY_QUEUE_HPP_
#define SKIM_DETAIL_LAZY_QUEUE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace skim::detail {

/// Max-priority queue over ids 0..n-1 holding at most one live key per id.
/// set() and erase() are O(log n) / O(1) and leave superseded heap entries
/// behind; those are discarded when they surface. Ties pop the lower id.
class LazyMaxQueue {
 public:
  struct Top {
    double priority;
    std::uint32_t id;
  };

  explicit LazyMaxQueue(std::size_t n) : stamp_(n, 0), live_(n, false), key_(n, 0.0) {}

  void set(std::uint32_t id, double priority) {
    ++stamp_[id];
    live_[id] = true;
    key_[id] = priority;
    heap_.push({priority, id, stamp_[id]});
  }

  void erase(std::uint32_t id) {
    if (!live_[id]) return;
    ++stamp_[id];
    live_[id] = false;
  }

  bool contains(std::uint32_t id) const { return live_[id]; }
  double key(std::uint32_t id) const { return key_[id]; }

  std::optional<Top> top() {
    while (!heap_.empty()) {
      const Entry& e = heap_.top();
      if (live_[e.id] && e.stamp == stamp_[e.id]) return Top{e.priority, e.id};
      heap_.pop();
    }
    return std::nullopt;
  }

  /// Removes and returns the top live entry.
  std::optional<Top> pop() {
    auto t = top();
    if (t) {
      heap_.pop();
      live_[t->id] = false;
      ++stamp_[t->id];
    }
    return t;
  }

  bool empty() { return !top().has_value(); }

 private:
  struct Entry {
    double priority;
    std::uint32_t id;
    std::uint64_t stamp;
    friend bool operator<(const Entry& a, const Entry& b) {
      return a.priority != b.priority ? a.priority < b.priority : a.id > b.id;
    }
  };

  std::priority_queue<Entry> heap_;
  std::vector<std::uint64_t> stamp_;
  std::vector<bool> live_;
  std::vector<double> key_;
};

}  // namespace skim::detail

#endif  // SKIM_DETAIL_LAZY_QUEUE_HPP_
