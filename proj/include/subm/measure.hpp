#pragma once
// Finitely supported measures on the naturals with rational point masses.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/rational.hpp"

namespace subm {

class PointMeasure {
 public:
  PointMeasure() = default;
  explicit PointMeasure(std::map<Nat, Rat> w) : w_(std::move(w)) {
    for (auto it = w_.begin(); it != w_.end();) {
      if (it->second < 0) throw DomainError("PointMeasure: negative mass");
      if (it->second == 0)
        it = w_.erase(it);
      else
        ++it;
    }
  }

  const Rat& at(Nat x) const {
    static const Rat zero = 0;
    auto it = w_.find(x);
    return it == w_.end() ? zero : it->second;
  }

  Rat value(const FinSet& a) const {
    Rat s = 0;
    if (a.size() < w_.size()) {
      for (Nat x : a) s += at(x);
    } else {
      for (const auto& [x, m] : w_)
        if (a.contains(x)) s += m;
    }
    return s;
  }

  Rat total() const {
    Rat s = 0;
    for (const auto& [x, m] : w_) s += m;
    return s;
  }

  FinSet support() const {
    std::vector<Nat> v;
    v.reserve(w_.size());
    for (const auto& [x, m] : w_) v.push_back(x);
    return FinSet(std::move(v));
  }

  PointMeasure restricted_to(const FinSet& a) const {
    std::map<Nat, Rat> w;
    for (const auto& [x, m] : w_)
      if (a.contains(x)) w.emplace(x, m);
    return PointMeasure(std::move(w));
  }

  bool empty() const { return w_.empty(); }
  const std::map<Nat, Rat>& masses() const { return w_; }

  friend PointMeasure operator+(const PointMeasure& a, const PointMeasure& b) {
    std::map<Nat, Rat> w = a.w_;
    for (const auto& [x, m] : b.w_) w[x] += m;
    return PointMeasure(std::move(w));
  }

  // True iff this measure is dominated by `phi` on every subset of its
  // support.  Exponential in the support size; meant for certificates.
  template <class Eval>
  bool dominated_by(Eval&& phi) const {
    FinSet supp = support();
    if (supp.size() > 20) throw CapExceeded("dominated_by: support too large");
    std::uint64_t full = (std::uint64_t{1} << supp.size()) - 1;
    for (std::uint64_t m = 1; m <= full; ++m) {
      FinSet b = FinSet::from_mask(m, supp.elements());
      if (ExtRat(value(b)) > phi(b)) return false;
    }
    return true;
  }

 private:
  std::map<Nat, Rat> w_;
};

}  // namespace subm
