/*
 * Copyright 2026 The vobench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef VOBENCH_MAP_SKIP_LIST_H_
#define VOBENCH_MAP_SKIP_LIST_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <random>
#include <utility>

namespace vobench {
namespace map {

// Ordered map as a skiplist. A node reaches level n + 1 with probability
// 1/2 given level n, capped at kMaxLevel. The promotion generator is seeded
// identically for every list, so the layout is a pure function of the
// operation sequence.
template <class K, class V, class Compare = std::less<K>>
class SkipList {
 public:
  static constexpr int kMaxLevel = 16;

  SkipList() = default;
  ~SkipList() { Clear(); }

  SkipList(const SkipList&) = delete;
  SkipList& operator=(const SkipList&) = delete;

  SkipList(SkipList&& other) noexcept { *this = std::move(other); }
  SkipList& operator=(SkipList&& other) noexcept {
    if (this != &other) {
      Clear();
      head_ = other.head_;
      level_ = other.level_;
      size_ = other.size_;
      rng_ = other.rng_;
      other.head_.fill(nullptr);
      other.level_ = 1;
      other.size_ = 0;
    }
    return *this;
  }

  // Inserts or replaces. Returns true if the key was new.
  bool Insert(const K& key, V value) {
    bool inserted = false;
    V& slot = FindOrInsertImpl(key, &inserted);
    slot = std::move(value);
    return inserted;
  }

  // Returns the value for `key`, default-constructing it if absent.
  V& FindOrInsert(const K& key) {
    bool inserted = false;
    return FindOrInsertImpl(key, &inserted);
  }

  V* Find(const K& key) {
    Node* node = LowerBound(key);
    return node && !less_(key, node->key) ? &node->value : nullptr;
  }
  const V* Find(const K& key) const {
    return const_cast<SkipList*>(this)->Find(key);
  }

  bool Erase(const K& key) {
    std::array<Node**, kMaxLevel> update;
    Node* node = Predecessors(key, &update);
    if (!node || less_(key, node->key)) return false;
    for (int l = 0; l < node->level; ++l) *update[l] = node->next[l];
    delete node;
    while (level_ > 1 && head_[level_ - 1] == nullptr) --level_;
    --size_;
    return true;
  }

  void Clear() {
    Node* node = head_[0];
    while (node) {
      Node* next = node->next[0];
      delete node;
      node = next;
    }
    head_.fill(nullptr);
    level_ = 1;
    size_ = 0;
  }

  // Calls fn(key, value) in ascending key order.
  template <class Fn>
  void ForEach(Fn&& fn) const {
    for (const Node* n = head_[0]; n; n = n->next[0]) fn(n->key, n->value);
  }
  template <class Fn>
  void ForEach(Fn&& fn) {
    for (Node* n = head_[0]; n; n = n->next[0]) fn(n->key, n->value);
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Every level is strictly ascending and every key at level n also appears
  // at each level below n.
  bool CheckInvariants() const {
    std::size_t count = 0;
    for (const Node* n = head_[0]; n; n = n->next[0]) {
      ++count;
      if (n->level < 1 || n->level > kMaxLevel) return false;
    }
    if (count != size_) return false;
    for (int l = 0; l < kMaxLevel; ++l) {
      const Node* below = head_[0];
      for (const Node* n = head_[l]; n; n = n->next[l]) {
        if (n->level <= l) return false;
        if (n->next[l] && !less_(n->key, n->next[l]->key)) return false;
        while (below && below != n) below = below->next[0];
        if (!below) return false;
      }
    }
    return true;
  }

 private:
  struct Node {
    K key;
    V value{};
    int level = 1;
    std::array<Node*, kMaxLevel> next{};
  };

  int RandomLevel() {
    int level = 1;
    while (level < kMaxLevel && (rng_() & 1u)) ++level;
    return level;
  }

  // Fills update[l] with the link that points at the first node >= key on
  // level l, and returns that node on level 0.
  Node* Predecessors(const K& key, std::array<Node**, kMaxLevel>* update) {
    Node* prev = nullptr;
    for (int l = kMaxLevel - 1; l >= 0; --l) {
      Node** link = prev ? &prev->next[l] : &head_[l];
      while (*link && less_((*link)->key, key)) {
        prev = *link;
        link = &prev->next[l];
      }
      (*update)[l] = link;
    }
    return *(*update)[0];
  }

  Node* LowerBound(const K& key) {
    Node* prev = nullptr;
    Node* candidate = nullptr;
    for (int l = level_ - 1; l >= 0; --l) {
      Node* n = prev ? prev->next[l] : head_[l];
      while (n && less_(n->key, key)) {
        prev = n;
        n = n->next[l];
      }
      candidate = n;
    }
    return candidate;
  }

  V& FindOrInsertImpl(const K& key, bool* inserted) {
    std::array<Node**, kMaxLevel> update;
    Node* node = Predecessors(key, &update);
    if (node && !less_(key, node->key)) {
      *inserted = false;
      return node->value;
    }
    Node* fresh = new Node{key};
    fresh->level = RandomLevel();
    for (int l = 0; l < fresh->level; ++l) {
      fresh->next[l] = *update[l];
      *update[l] = fresh;
    }
    level_ = std::max(level_, fresh->level);
    ++size_;
    *inserted = true;
    return fresh->value;
  }

  std::array<Node*, kMaxLevel> head_{};
  int level_ = 1;
  std::size_t size_ = 0;
  std::minstd_rand rng_{0x5EEDu};
  [[no_unique_address]] Compare less_{};
};

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_SKIP_LIST_H_
