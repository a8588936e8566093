#pragma once
// Concrete partitions of the naturals used by the named constructions.
//
// Scheme "arith-v1": block n is { pair(n, k) : k >= 0 } under the Cantor
// pairing pair(n, k) = (n+k)(n+k+1)/2 + k, so the blocks tile the naturals
// along diagonals.  First members:
//   B_0 = {0, 2, 5, 9, 14, ...}   B_1 = {1, 4, 8, 13, ...}
//   B_2 = {3, 7, 12, ...}         B_3 = {6, 11, ...}       B_4 = {10, ...}
// Everything downstream (block submeasures, coloring homogeneity, the thin
// diagonal) refers to this one fixed scheme, so frozen test values stay
// meaningful.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/rational.hpp"
#include "subm/stream.hpp"

namespace subm {

class PairingPartition {
 public:
  static constexpr const char* kSchemeName = "arith-v1";

  static Nat pair(Nat n, Nat k) {
    const Nat d = n + k;
    return d * (d + 1) / 2 + k;
  }

  // Inverse: m -> (block, index within block).
  static std::pair<Nat, Nat> unpair(Nat m) {
    // Largest d with d(d+1)/2 <= m, by exact integer search.
    Nat d = isqrt(2 * m);
    while (d * (d + 1) / 2 > m) --d;
    while ((d + 1) * (d + 2) / 2 <= m) ++d;
    const Nat k = m - d * (d + 1) / 2;
    return {d - k, k};
  }

  static Nat block_of(Nat m) { return unpair(m).first; }
  static Nat index_in_block(Nat m) { return unpair(m).second; }

  // First `count` members of block n.
  static FinSet block_prefix(Nat n, std::size_t count) {
    std::vector<Nat> v;
    v.reserve(count);
    for (Nat k = 0; k < count; ++k) v.push_back(pair(n, k));
    return FinSet(std::move(v));
  }

  static SetStream block_stream(Nat n) {
    auto k = std::make_shared<Nat>(0);
    return SetStream([n, k]() -> std::optional<Nat> { return pair(n, (*k)++); },
                     "block-" + std::to_string(n));
  }

 private:
  static Nat isqrt(Nat x) {
    if (x < 2) return x;
    Nat r = x / 2;
    for (;;) {  // Newton; lands exactly because everything is integral
      Nat nr = (r + x / r) / 2;
      if (nr >= r) break;
      r = nr;
    }
    while ((r + 1) * (r + 1) <= x) ++r;
    while (r * r > x) --r;
    return r;
  }
};

// ---------------------------------------------------------------------------
// Sub-block discipline for the summable construction: block n is further cut
// into consecutive runs B_n^0, B_n^1, ... (by index within the block), and
// the k-th run carries the uniform measure with the stated point mass.
//
//   Variant A: every run has (n+1) * 2^n elements, point mass 2^-n.
//   Variant B: run k has (n+1) * (2^n + k) elements, point mass 1/(2^n + k).
//
// In both variants a full run has measure value exactly n+1.

enum class SubBlockVariant { A, B };

class SubBlockScheme {
 public:
  explicit SubBlockScheme(SubBlockVariant v) : v_(v) {}

  SubBlockVariant variant() const { return v_; }

  Nat run_size(Nat n, Nat k) const {
    if (v_ == SubBlockVariant::A) return (n + 1) * (Nat(1) << n);
    return (n + 1) * ((Nat(1) << n) + k);
  }

  Rat point_mass(Nat n, Nat k) const {
    if (v_ == SubBlockVariant::A) return Rat(1, Int(1) << n);
    return Rat(1, Int((Nat(1) << n) + k));
  }

  // Indices within block n occupied by runs 0..K-1.
  Nat run_start(Nat n, Nat k) const {
    if (v_ == SubBlockVariant::A) return k * (n + 1) * (Nat(1) << n);
    // sum of (n+1)(2^n + j) for j < k
    return (n + 1) * (k * (Nat(1) << n) + k * (k - 1) / 2);
  }

  // Which run the element with index `idx` inside block n belongs to.
  Nat run_of_index(Nat n, Nat idx) const {
    if (v_ == SubBlockVariant::A) return idx / ((n + 1) * (Nat(1) << n));
    Nat lo = 0, hi = 1;
    while (run_start(n, hi + 1) <= idx) hi *= 2;
    while (lo < hi) {  // greatest k with run_start(n, k) <= idx
      Nat mid = (lo + hi + 1) / 2;
      if (run_start(n, mid) <= idx)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  struct Cell {
    Nat block;
    Nat run;
    Rat mass;  // the point mass this element carries in its run measure
  };

  Cell cell_of(Nat m) const {
    auto [n, idx] = PairingPartition::unpair(m);
    Nat k = run_of_index(n, idx);
    return {n, k, point_mass(n, k)};
  }

  // Materialized run B_n^k as a set of naturals.
  FinSet run_set(Nat n, Nat k) const {
    std::vector<Nat> v;
    const Nat start = run_start(n, k);
    const Nat sz = run_size(n, k);
    v.reserve(sz);
    for (Nat j = 0; j < sz; ++j) v.push_back(PairingPartition::pair(n, start + j));
    return FinSet(std::move(v));
  }

  std::string name() const {
    return std::string("subblocks-") + (v_ == SubBlockVariant::A ? "a" : "b");
  }

 private:
  SubBlockVariant v_;
};

// ---------------------------------------------------------------------------
// The thin diagonal: from block n keep only its first n+1 members.  The
// result meets every block in a finite set yet its block counts grow without
// bound, which is what makes it the canonical non-exhaustive tall witness.

class ThinDiagonal {
 public:
  static bool contains(Nat m) {
    auto [n, k] = PairingPartition::unpair(m);
    return k <= n;
  }

  static FinSet slice(Nat n) { return PairingPartition::block_prefix(n, n + 1); }

  // Members of the diagonal up to the slice index `max_block`, ascending.
  static FinSet prefix_by_block(Nat max_block) {
    std::vector<Nat> v;
    for (Nat n = 0; n <= max_block; ++n)
      for (Nat k = 0; k <= n; ++k) v.push_back(PairingPartition::pair(n, k));
    return FinSet(std::move(v));
  }

  static SetStream stream() {
    return SetStream::filtered([](Nat m) { return contains(m); }, 0,
                               Nat(1) << 40, "thin-diagonal");
  }
};

}  // namespace subm
