#pragma once
// Finite subsets of the naturals, stored sorted.  Value type, cheap to copy
// at the sizes this library works with.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "subm/rational.hpp"

namespace subm {

class FinSet {
 public:
  FinSet() = default;
  FinSet(std::initializer_list<Nat> xs) : e_(xs) { normalize(); }
  explicit FinSet(std::vector<Nat> xs) : e_(std::move(xs)) { normalize(); }

  // Bit i of `mask` selects element i.
  static FinSet from_mask(std::uint64_t mask) {
    std::vector<Nat> v;
    for (unsigned i = 0; mask; ++i, mask >>= 1)
      if (mask & 1) v.push_back(i);
    FinSet s;
    s.e_ = std::move(v);  // already sorted
    return s;
  }

  // Bit i of `mask` selects pool[i]; pool must be sorted and duplicate-free.
  static FinSet from_mask(std::uint64_t mask, std::span<const Nat> pool) {
    std::vector<Nat> v;
    for (std::size_t i = 0; i < pool.size() && mask; ++i, mask >>= 1)
      if (mask & 1) v.push_back(pool[i]);
    FinSet s;
    s.e_ = std::move(v);
    return s;
  }

  std::size_t size() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  bool contains(Nat x) const { return std::binary_search(e_.begin(), e_.end(), x); }
  Nat operator[](std::size_t i) const { return e_[i]; }
  Nat min() const { return e_.front(); }
  Nat max() const { return e_.back(); }

  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  const std::vector<Nat>& elements() const { return e_; }

  FinSet with(Nat x) const {
    FinSet r = *this;
    auto it = std::lower_bound(r.e_.begin(), r.e_.end(), x);
    if (it == r.e_.end() || *it != x) r.e_.insert(it, x);
    return r;
  }
  FinSet without(Nat x) const {
    FinSet r = *this;
    auto it = std::lower_bound(r.e_.begin(), r.e_.end(), x);
    if (it != r.e_.end() && *it == x) r.e_.erase(it);
    return r;
  }

  bool is_subset_of(const FinSet& o) const {
    return std::includes(o.e_.begin(), o.e_.end(), e_.begin(), e_.end());
  }

  friend FinSet set_union(const FinSet& a, const FinSet& b) {
    FinSet r;
    std::set_union(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end(),
                   std::back_inserter(r.e_));
    return r;
  }
  friend FinSet set_intersection(const FinSet& a, const FinSet& b) {
    FinSet r;
    std::set_intersection(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end(),
                          std::back_inserter(r.e_));
    return r;
  }
  friend FinSet set_difference(const FinSet& a, const FinSet& b) {
    FinSet r;
    std::set_difference(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end(),
                        std::back_inserter(r.e_));
    return r;
  }
  friend FinSet symmetric_difference(const FinSet& a, const FinSet& b) {
    FinSet r;
    std::set_symmetric_difference(a.e_.begin(), a.e_.end(), b.e_.begin(),
                                  b.e_.end(), std::back_inserter(r.e_));
    return r;
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;
  // Lexicographic on the sorted element lists; a deterministic total order.
  friend bool operator<(const FinSet& a, const FinSet& b) { return a.e_ < b.e_; }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + "}";
  }

 private:
  void normalize() {
    std::sort(e_.begin(), e_.end());
    e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
  }
  std::vector<Nat> e_;
};

}  // namespace subm
