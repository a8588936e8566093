#pragma once
// Finitely supported rational vectors (c00) and sequences of them, with the
// sup-norm evaluation used to turn a vector sequence into a submeasure:
//
//   phi_x(F) = max over coordinates k of
//              max( sum_{n in F} x_n(k)^+ , sum_{n in F} x_n(k)^- ).
//
// This closed form equals the sup over subsets G of F of |sum_{n in G} x_n|:
// for fixed k the best G keeps exactly the positive (or exactly the negative)
// entries, and sup-of-max is max-of-sups.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/rational.hpp"

namespace subm {

class SparseVec {
 public:
  SparseVec() = default;
  explicit SparseVec(std::map<Nat, Rat> c) : c_(std::move(c)) {
    for (auto it = c_.begin(); it != c_.end();)
      it = (it->second == 0) ? c_.erase(it) : std::next(it);
  }

  static SparseVec unit(Nat k) { return SparseVec({{k, Rat(1)}}); }
  static SparseVec scaled_unit(Nat k, Rat v) { return SparseVec({{k, std::move(v)}}); }

  const Rat& at(Nat k) const {
    static const Rat zero = 0;
    auto it = c_.find(k);
    return it == c_.end() ? zero : it->second;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<Nat, Rat>& entries() const { return c_; }

  FinSet support() const {
    std::vector<Nat> v;
    for (const auto& [k, x] : c_) v.push_back(k);
    return FinSet(std::move(v));
  }

  Rat norm_inf() const {
    Rat m = 0;
    for (const auto& [k, x] : c_) {
      Rat a = x < 0 ? Rat(-x) : x;
      if (a > m) m = a;
    }
    return m;
  }

  bool nonneg() const {
    for (const auto& [k, x] : c_)
      if (x < 0) return false;
    return true;
  }

  SparseVec abs() const {
    std::map<Nat, Rat> c;
    for (const auto& [k, x] : c_) c.emplace(k, x < 0 ? Rat(-x) : x);
    return SparseVec(std::move(c));
  }

  // Coordinates strictly below n (the initial segment projection).
  SparseVec prefix_below(Nat n) const {
    std::map<Nat, Rat> c;
    for (const auto& [k, x] : c_)
      if (k < n) c.emplace(k, x);
    return SparseVec(std::move(c));
  }
  // Coordinates >= n.
  SparseVec tail_from(Nat n) const {
    std::map<Nat, Rat> c;
    for (const auto& [k, x] : c_)
      if (k >= n) c.emplace(k, x);
    return SparseVec(std::move(c));
  }
  // Coordinates in [lo, hi).
  SparseVec slice(Nat lo, Nat hi) const {
    std::map<Nat, Rat> c;
    for (const auto& [k, x] : c_)
      if (k >= lo && k < hi) c.emplace(k, x);
    return SparseVec(std::move(c));
  }

  friend SparseVec operator+(const SparseVec& a, const SparseVec& b) {
    std::map<Nat, Rat> c = a.c_;
    for (const auto& [k, x] : b.c_) c[k] += x;
    return SparseVec(std::move(c));
  }
  friend SparseVec operator-(const SparseVec& a, const SparseVec& b) {
    std::map<Nat, Rat> c = a.c_;
    for (const auto& [k, x] : b.c_) c[k] -= x;
    return SparseVec(std::move(c));
  }

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

  std::string str() const {
    std::string s = "(";
    bool first = true;
    for (const auto& [k, x] : c_) {
      if (!first) s += ", ";
      first = false;
      s += std::to_string(k) + ": " + format_rat(x);
    }
    return s + ")";
  }

 private:
  std::map<Nat, Rat> c_;
};

// The closed-form evaluation above, over any index -> vector accessor.
template <class VecAt>
Rat seq_eval(VecAt&& at, const FinSet& idx) {
  // pos/neg coordinate sums
  std::map<Nat, std::pair<Rat, Rat>> acc;
  for (Nat n : idx) {
    const SparseVec v = at(n);
    for (const auto& [k, x] : v.entries()) {
      auto& [p, q] = acc[k];
      if (x > 0)
        p += x;
      else
        q -= x;
    }
  }
  Rat best = 0;
  for (const auto& [k, pq] : acc) {
    if (pq.first > best) best = pq.first;
    if (pq.second > best) best = pq.second;
  }
  return best;
}

// A stored, finite sequence of c00 vectors.
class VectorSeq {
 public:
  VectorSeq() = default;
  explicit VectorSeq(std::vector<SparseVec> v) : v_(std::move(v)) {
    nonneg_ = true;
    for (const auto& x : v_)
      if (!x.nonneg()) {
        nonneg_ = false;
        break;
      }
  }

  std::size_t size() const { return v_.size(); }
  const SparseVec& at(std::size_t n) const {
    if (n >= v_.size()) throw DomainError("VectorSeq: index out of range");
    return v_[n];
  }
  const std::vector<SparseVec>& vectors() const { return v_; }
  bool nonneg() const { return nonneg_; }

  FinSet all_indices() const {
    std::vector<Nat> v(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) v[i] = i;
    return FinSet(std::move(v));
  }

  Rat eval(const FinSet& idx) const {
    if (!idx.empty() && idx.max() >= v_.size())
      throw DomainError("VectorSeq: index set outside the stored range");
    return seq_eval([this](Nat n) { return v_[n]; }, idx);
  }

 private:
  std::vector<SparseVec> v_;
  bool nonneg_ = true;
};

inline VectorSeq abs_transform(const VectorSeq& s) {
  std::vector<SparseVec> v;
  v.reserve(s.size());
  for (const auto& x : s.vectors()) v.push_back(x.abs());
  return VectorSeq(std::move(v));
}

// A lazily indexed family of c00 vectors, for selectors that walk far out.
// coord_modulus(k, eps), when present, returns N such that |x_m(k)| < eps for
// every m >= N; it is what upgrades a scan from heuristic to certified.
struct VectorFamily {
  std::function<SparseVec(Nat)> at;
  std::optional<std::function<Nat(Nat, const Rat&)>> coord_modulus;
  std::string name;

  Rat eval(const FinSet& idx) const { return seq_eval(at, idx); }
};

inline VectorFamily family_from_seq(VectorSeq s, std::string name = "stored") {
  auto shared = std::make_shared<VectorSeq>(std::move(s));
  return VectorFamily{
      [shared](Nat n) { return shared->at(n); },
      std::nullopt,
      std::move(name),
  };
}

}  // namespace subm
