#pragma once
// Two-colorings of pairs of naturals and the finite Ramsey-style extractions
// this library performs on them.  Everything returns certified output: an
// extracted set is re-checked pairwise before it is handed back.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/rational.hpp"
#include "subm/stream.hpp"
#include "subm/vectorseq.hpp"

namespace subm {

// Symmetric coloring of unordered pairs; the callable is always invoked with
// n < m.
struct Coloring {
  std::function<int(Nat, Nat)> color;
  std::string tag;

  int at(Nat n, Nat m) const {
    if (n == m) throw DomainError("coloring: pairs need distinct points");
    return n < m ? color(n, m) : color(m, n);
  }
};

inline Coloring partition_coloring(std::function<Nat(Nat)> block_of,
                                   std::string tag = "partition") {
  return {[block_of = std::move(block_of)](Nat n, Nat m) {
            return block_of(n) == block_of(m) ? 0 : 1;
          },
          std::move(tag)};
}

// ---------------------------------------------------------------------------
// The fixed enumeration of the rationals in [0, 1]: 0, 1, then the
// Stern-Brocot tree of (0,1) in breadth-first order, each level left to
// right.  First values: 0, 1, 1/2, 1/3, 2/3, 1/4, 2/5, 3/5, 3/4, ...
// Every rational in [0,1] appears exactly once; decoding index m walks
// O(log m) mediant steps.

inline Rat sb_rational(Nat m) {
  if (m == 0) return 0;
  if (m == 1) return 1;
  const Nat t = m - 2;
  const int level = std::bit_width(t + 1) - 1;
  const Nat pos = t + 1 - (Nat(1) << level);
  Int ln = 0, ld = 1, rn = 1, rd = 1;  // enclosing interval (ln/ld, rn/rd)
  for (int b = level - 1; b >= 0; --b) {
    Int mn = ln + rn, md = ld + rd;
    if ((pos >> b) & 1) {
      ln = std::move(mn);
      ld = std::move(md);
    } else {
      rn = std::move(mn);
      rd = std::move(md);
    }
  }
  return Rat(ln + rn, ld + rd);
}

// Color 1 when the enumeration lists the pair in increasing rational order.
inline Coloring sierpinski_coloring() {
  return {[](Nat n, Nat m) { return sb_rational(n) < sb_rational(m) ? 1 : 0; },
          "sierpinski"};
}

// ---------------------------------------------------------------------------
// Ramsey extraction by pivoting: take the first element of the pool as a
// pivot, keep the larger of its two color classes, and repeat.  Pivots whose
// kept color agrees pairwise form a homogeneous set: if p came before p',
// then p' survived inside p's kept class, so the pair has p's kept color.

struct RamseyResult {
  bool ok = false;
  int color = 0;
  FinSet hom;
  std::size_t largest_partial = 0;  // best same-color pivot count found
  std::size_t scanned = 0;
  std::string note;
};

inline RamseyResult ramsey_extract(const Coloring& c, SetStream& stream, std::size_t want,
                                   std::size_t scan_budget) {
  RamseyResult res;
  std::vector<Nat> pool = stream.take(scan_budget);
  res.scanned = pool.size();
  if (want == 0) {
    res.ok = true;
    return res;
  }

  std::vector<std::pair<Nat, int>> pivots;
  std::size_t count[2] = {0, 0};
  int winner = -1;
  while (!pool.empty()) {
    Nat p = pool.front();
    std::vector<Nat> cls[2];
    for (std::size_t i = 1; i < pool.size(); ++i)
      cls[c.at(p, pool[i])].push_back(pool[i]);
    const int kept = cls[1].size() > cls[0].size() ? 1 : 0;  // ties keep 0
    pivots.emplace_back(p, kept);
    if (++count[kept] >= want) {
      winner = kept;
      break;
    }
    pool = std::move(cls[kept]);
  }
  res.largest_partial = std::max(count[0], count[1]);
  if (winner < 0) {
    res.note = "pool exhausted at " + std::to_string(res.largest_partial) + " of " +
               std::to_string(want);
    return res;
  }

  std::vector<Nat> out;
  for (const auto& [p, kept] : pivots)
    if (kept == winner) out.push_back(p);
  res.color = winner;
  res.hom = FinSet(std::move(out));

  // the invariant is cheap to certify, so never skip it
  for (std::size_t i = 0; i < res.hom.size(); ++i)
    for (std::size_t j = i + 1; j < res.hom.size(); ++j)
      if (c.at(res.hom[i], res.hom[j]) != winner) {
        res.note = "internal: extracted set is not homogeneous";
        return res;
      }
  res.ok = true;
  return res;
}

// ---------------------------------------------------------------------------
// Least number of c-homogeneous pieces covering a finite set, by dynamic
// programming over subsets: peel a homogeneous subset containing the lowest
// remaining element.  Exact; refuses sets beyond the cap.

inline Nat hom_cover_number(const FinSet& a, const Coloring& c, std::size_t cap = 12) {
  const std::size_t n = a.size();
  if (n > cap) throw CapExceeded("homogeneity cover cap is " + std::to_string(cap));
  if (n == 0) return 0;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  std::vector<std::vector<int>> col(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) col[i][j] = c.at(a[i], a[j]);

  std::vector<char> hom(full + 1, 1);
  for (std::uint64_t m = 1; m <= full; ++m) {
    int seen = -1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(m & (std::uint64_t{1} << i))) continue;
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if (!(m & (std::uint64_t{1} << j))) continue;
        if (seen < 0)
          seen = col[i][j];
        else if (col[i][j] != seen)
          ok = false;
      }
    }
    hom[m] = ok ? 1 : 0;
  }

  std::vector<Nat> dp(full + 1, Nat(-1));
  dp[0] = 0;
  for (std::uint64_t m = 1; m <= full; ++m) {
    const std::uint64_t low = m & (~m + 1);
    Nat best = Nat(-1);
    for (std::uint64_t s = m; s; s = (s - 1) & m) {
      if (!(s & low) || !hom[s]) continue;
      if (dp[m ^ s] != Nat(-1) && dp[m ^ s] + 1 < best) best = dp[m ^ s] + 1;
    }
    dp[m] = best;
  }
  return dp[full];
}

// ---------------------------------------------------------------------------
// First (depth-first, lexicographic) `size`-element set of the stream window
// that is homogeneous in `color` and avoids `avoid`.  The window holds the
// first `pool_budget` admissible elements; bounding it keeps the search
// complete — on an endless stream a doomed prefix would otherwise admit
// endlessly many extension candidates and the search could never back out
// of it.  The check budget counts pair checks; running out returns nothing
// rather than something unverified.

inline std::optional<FinSet> favors_witness(const Coloring& c, int color, std::size_t size,
                                            const FinSet& avoid, SetStream& stream,
                                            std::size_t check_budget = 100000,
                                            std::size_t pool_budget = 64) {
  if (size == 0) return FinSet{};
  std::vector<Nat> pool;
  while (pool.size() < pool_budget) {
    auto v = stream.next();
    if (!v) break;
    if (!avoid.contains(*v)) pool.push_back(*v);
  }

  std::size_t checks = 0;
  std::vector<Nat> chosen;
  std::function<std::optional<FinSet>(std::size_t)> dfs =
      [&](std::size_t from) -> std::optional<FinSet> {
    if (chosen.size() == size) return FinSet(chosen);
    for (std::size_t i = from; i < pool.size(); ++i) {
      bool fits = true;
      for (Nat prev : chosen) {
        if (++checks > check_budget) return std::nullopt;
        if (c.at(prev, pool[i]) != color) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      chosen.push_back(pool[i]);
      if (auto r = dfs(i + 1)) return r;
      chosen.pop_back();
      if (checks > check_budget) return std::nullopt;
    }
    return std::nullopt;
  };
  return dfs(0);
}

// ---------------------------------------------------------------------------
// Dyadic level partition of a vector with entries of absolute value at most
// one: band i collects the coordinates with 2^-(i+1) <= |value| < 2^-i.  A
// value of exactly 1 sits in band 0.  Zero coordinates belong to no band.

inline Nat dyadic_band(const Rat& value) {
  Rat v = value < 0 ? Rat(-value) : value;
  if (v > 1) throw DomainError("dyadic_band: unscaled value " + format_rat(value));
  if (v == 0) throw DomainError("dyadic_band: zero has no band");
  Nat i = 0;
  while (v < pow2(-static_cast<long>(i) - 1)) ++i;
  return i;
}

struct LevelPartition {
  std::map<Nat, FinSet> bands;  // band index -> coordinates
};

inline LevelPartition level_partition(const SparseVec& x) {
  std::map<Nat, std::vector<Nat>> acc;
  for (const auto& [k, v] : x.entries()) acc[dyadic_band(v)].push_back(k);
  LevelPartition lp;
  for (auto& [i, ks] : acc) lp.bands.emplace(i, FinSet(std::move(ks)));
  return lp;
}

// Coordinates with |value| >= 2^-l; the union of bands 0..l-1.
inline FinSet level_union(const SparseVec& x, Nat l) {
  std::vector<Nat> ks;
  const Rat floor = pow2(-static_cast<long>(l));
  for (const auto& [k, v] : x.entries()) {
    Rat a = v < 0 ? Rat(-v) : v;
    if (a > 1) throw DomainError("level_union: unscaled value");
    if (!(a < floor)) ks.push_back(k);
  }
  return FinSet(std::move(ks));
}

// ---------------------------------------------------------------------------
// Pair coloring for scaled c00 families: the pair n < m has color 1 when
// x_m dives below x_n's bands, i.e. for every k in supp(x_n) with band i,
// |x_m(k)| < 2^-(i+1).

inline Coloring c0like_coloring(const VectorFamily& fam) {
  auto cache = std::make_shared<std::map<Nat, SparseVec>>();
  auto get = [cache, fam](Nat n) -> const SparseVec& {
    auto it = cache->find(n);
    if (it == cache->end()) it = cache->emplace(n, fam.at(n)).first;
    return it->second;
  };
  return {[get](Nat n, Nat m) {
            const SparseVec& xn = get(n);
            const SparseVec& xm = get(m);
            for (const auto& [k, v] : xn.entries()) {
              const Nat i = dyadic_band(v);
              Rat other = xm.at(k);
              if (other < 0) other = -other;
              if (!(other < pow2(-static_cast<long>(i) - 1))) return 0;
            }
            return 1;
          },
          "c0like:" + fam.name};
}

// ---------------------------------------------------------------------------
// Eventual disjointness with a uniform bound: extract indices whose level
// unions pairwise intersect only inside {0..p}.
//
// Recursion on the finite sets L_n = level_union(x_n, l): if at least
// `want` of the scanned sets share the same minimum v, strip v and recurse
// (v joins the bound); otherwise chain greedily, picking sets whose minimum
// clears everything picked so far (those intersect nowhere, bound 0).

struct DisjointExtract {
  bool ok = false;
  FinSet indices;
  Nat p = 0;
  std::size_t scanned = 0;
  std::string note;
};

namespace detail {

inline bool disjoint_extract_rec(std::vector<std::pair<Nat, FinSet>> items,
                                 std::size_t want, FinSet& out_idx, Nat& out_p) {
  if (want == 0) {
    out_idx = FinSet{};
    out_p = 0;
    return true;
  }
  // least minimum shared by `want` sets, if any
  std::map<Nat, std::size_t> min_count;
  for (const auto& [n, L] : items)
    if (!L.empty()) ++min_count[L.min()];
  for (const auto& [v, cnt] : min_count) {
    if (cnt < want) continue;
    std::vector<std::pair<Nat, FinSet>> stripped;
    for (const auto& [n, L] : items)
      if (!L.empty() && L.min() == v) stripped.emplace_back(n, L.without(v));
    if (disjoint_extract_rec(std::move(stripped), want, out_idx, out_p)) {
      out_p = std::max(out_p, v);
      return true;
    }
  }
  // greedy chain; empty level sets are unconstrained
  std::vector<Nat> picked;
  std::optional<Nat> ceiling;
  for (const auto& [n, L] : items) {
    if (L.empty()) {
      picked.push_back(n);
    } else if (!ceiling || L.min() > *ceiling) {
      picked.push_back(n);
      ceiling = ceiling ? std::max(*ceiling, L.max()) : L.max();
    }
    if (picked.size() == want) {
      out_idx = FinSet(std::move(picked));
      out_p = 0;
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline DisjointExtract eventually_disjoint_extract(const VectorFamily& fam, Nat l,
                                                   SetStream& stream, std::size_t want,
                                                   std::size_t scan_budget) {
  DisjointExtract res;
  std::vector<std::pair<Nat, FinSet>> items;
  for (Nat n : stream.take(scan_budget)) items.emplace_back(n, level_union(fam.at(n), l));
  res.scanned = items.size();

  FinSet idx;
  Nat p = 0;
  if (!detail::disjoint_extract_rec(items, want, idx, p)) {
    res.note = "no bound found within the scanned prefix";
    return res;
  }

  // re-check the claim on the original level sets
  std::map<Nat, FinSet> by_index;
  for (auto& [n, L] : items) by_index.emplace(n, std::move(L));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      FinSet meet = set_intersection(by_index.at(idx[i]), by_index.at(idx[j]));
      if (!meet.empty() && meet.max() > p) {
        res.note = "internal: extracted indices violate the bound";
        return res;
      }
    }
  res.ok = true;
  res.indices = std::move(idx);
  res.p = p;
  return res;
}

// ---------------------------------------------------------------------------
// Admissible ("Schreier") elements: finite sets whose size exceeds their
// minimum by exactly one, colored by whether one coordinate is uniformly
// large across the member vectors.

struct SchreierElement {
  FinSet s;
  explicit SchreierElement(FinSet f) : s(std::move(f)) {
    if (s.empty() || s.size() != s.min() + 1)
      throw DomainError("admissible element needs size = min + 1, got " + s.str());
  }
  Nat q() const { return s.min(); }
};

// Color 1 iff some coordinate k has x_n(k) >= 2^-(p+1) for every n in s.
inline int schreier_c3(const VectorFamily& fam, Nat p, const SchreierElement& s) {
  const Rat threshold = pow2(-static_cast<long>(p) - 1);
  std::vector<SparseVec> vecs;
  vecs.reserve(s.s.size());
  for (Nat n : s.s) vecs.push_back(fam.at(n));
  for (const auto& [k, v] : vecs.front().entries()) {
    if (v < threshold) continue;
    bool all = true;
    for (std::size_t i = 1; i < vecs.size() && all; ++i)
      if (vecs[i].at(k) < threshold) all = false;
    if (all) return 1;
  }
  return 0;
}

}  // namespace subm
