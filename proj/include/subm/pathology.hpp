#pragma once
// How far a submeasure sits from the measures that it dominates.
//
// For a finite set A, hull(A) is the largest mass a nonnegative point
// measure w supported on A can put on A subject to w(B) <= phi(B) for every
// nonempty B subset of A.  (Constraining only subsets of A is enough: any
// feasible w, extended by zero, satisfies w(C) = w(C & A) <= phi(C & A) <=
// phi(C) for arbitrary C by monotonicity.)  The pathology degree over a
// family of sets is the largest ratio phi(A) / hull(A).

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/measure.hpp"
#include "subm/rational.hpp"
#include "subm/simplex.hpp"
#include "subm/spec.hpp"

namespace subm {

struct HatCaps {
  std::size_t max_set = 14;  // sets larger than this are refused, not approximated
};

struct HatPhiResult {
  Rat value;
  PointMeasure witness;                      // a maximizing measure on A
  std::vector<std::pair<FinSet, Rat>> dual;  // nonzero multipliers on subsets
  bool verified = false;                     // see verify notes below
  std::size_t lp_rounds = 0;
  std::size_t lp_pivots = 0;
};

namespace detail {

// Constraint generation: the LP has one constraint per nonempty subset of A,
// far too many to hand to the tableau at |A| = 14.  We solve with a small
// active set (singletons plus the full set), then scan every subset for the
// most violated constraint and re-solve until none is violated.  The final
// witness is verified against every one of the 2^|A| - 1 constraints, and
// the dual multipliers are checked for feasibility, objective equality and
// complementary slackness, so the certificate does not trust the solver.
inline HatPhiResult hat_phi_masked(const std::function<ExtRat(std::uint64_t)>& value_of,
                                   const FinSet& a) {
  const std::size_t n = a.size();
  HatPhiResult res;
  if (n == 0) {
    res.value = 0;
    res.verified = true;
    return res;
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  std::vector<ExtRat> val(full + 1, ExtRat(0));
  for (std::uint64_t m = 1; m <= full; ++m) val[m] = value_of(m);
  if (val[full].is_infinite())
    throw DomainError("hull: the set itself has infinite value");

  std::vector<std::uint64_t> active;
  for (std::size_t i = 0; i < n; ++i) active.push_back(std::uint64_t{1} << i);
  if (n > 1) active.push_back(full);

  LpSolution sol;
  std::vector<Rat> wsum(full + 1, Rat(0));
  for (;;) {
    ++res.lp_rounds;
    LpProblem p;
    for (std::uint64_t m : active) {
      if (val[m].is_infinite()) continue;  // vacuous
      std::vector<Rat> row(n, Rat(0));
      for (std::size_t i = 0; i < n; ++i)
        if (m & (std::uint64_t{1} << i)) row[i] = 1;
      p.rows.push_back(std::move(row));
      p.rhs.push_back(val[m].finite());
    }
    p.objective.assign(n, Rat(1));
    sol = simplex_max(p);
    res.lp_pivots += sol.pivots;
    if (sol.status == LpSolution::Unbounded)
      throw DomainError("hull: domination program unbounded (input is not an lscsm)");

    // w(m) for every mask, by peeling the lowest bit.
    wsum[0] = 0;
    for (std::uint64_t m = 1; m <= full; ++m) {
      const std::uint64_t low = m & (~m + 1);
      int idx = std::countr_zero(low);
      wsum[m] = wsum[m ^ low] + sol.x[idx];
    }
    std::uint64_t worst = 0;
    Rat worst_gap = 0;
    for (std::uint64_t m = 1; m <= full; ++m) {
      if (val[m].is_infinite()) continue;
      Rat gap = wsum[m] - val[m].finite();
      if (gap > worst_gap) {  // strict: ties keep the smallest mask
        worst_gap = gap;
        worst = m;
      }
    }
    if (worst == 0) break;
    active.push_back(worst);
    if (active.size() > full + 1)
      throw Error("hull: constraint generation failed to terminate");
  }

  res.value = sol.value;
  std::map<Nat, Rat> w;
  for (std::size_t i = 0; i < n; ++i)
    if (sol.x[i] != 0) w.emplace(a[i], sol.x[i]);
  res.witness = PointMeasure(std::move(w));

  // Independent verification.
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i)
    if (sol.x[i] < 0) ok = false;
  for (std::uint64_t m = 1; m <= full && ok; ++m)
    if (!val[m].is_infinite() && wsum[m] > val[m].finite()) ok = false;
  // dual side, over the active rows of the final solve
  std::vector<Rat> cover(n, Rat(0));
  Rat dual_obj = 0;
  std::size_t row = 0;
  for (std::uint64_t m : active) {
    if (val[m].is_infinite()) continue;
    const Rat& y = sol.dual[row++];
    if (y < 0) ok = false;
    if (y != 0) {
      if (wsum[m] != val[m].finite()) ok = false;  // complementary slackness
      for (std::size_t i = 0; i < n; ++i)
        if (m & (std::uint64_t{1} << i)) cover[i] += y;
      dual_obj += y * val[m].finite();
      res.dual.emplace_back(FinSet::from_mask(m, a.elements()), y);
    }
  }
  Rat primal_obj = 0;
  for (std::size_t i = 0; i < n; ++i) primal_obj += sol.x[i];
  for (std::size_t i = 0; i < n; ++i) {
    if (cover[i] < 1) ok = false;
    if (sol.x[i] > 0 && cover[i] != 1) ok = false;
  }
  if (primal_obj != dual_obj || primal_obj != sol.value) ok = false;
  res.verified = ok;
  return res;
}

}  // namespace detail

inline HatPhiResult hat_phi(const SubmeasureSpec& spec, const FinSet& a,
                            const HatCaps& caps = {}) {
  if (a.size() > caps.max_set)
    throw CapExceeded("hull cap is " + std::to_string(caps.max_set) + " elements");
  return detail::hat_phi_masked(
      [&](std::uint64_t m) { return eval(spec, FinSet::from_mask(m, a.elements())); }, a);
}

// ---------------------------------------------------------------------------

struct PathologyReport {
  Rat degree = 1;  // 1 exactly when every scanned set is measure-attained
  std::optional<FinSet> witness_set;
  std::optional<PointMeasure> witness_measure;
  ExtRat witness_value;
  Rat witness_hull;
  std::size_t sets_scanned = 0;
  std::size_t skipped_infinite = 0;
  std::size_t skipped_zero = 0;
  std::string scan;
  bool all_verified = true;
};

namespace detail {

// Size-major, then lexicographic on element sequences.  The first strict
// maximum wins, which pins the witness deterministically.
template <class Fn>
void for_each_subset_by_size(const FinSet& pool, std::size_t max_size, Fn&& fn) {
  const std::size_t n = pool.size();
  for (std::size_t s = 1; s <= max_size && s <= n; ++s) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      std::vector<Nat> elems(s);
      for (std::size_t i = 0; i < s; ++i) elems[i] = pool[idx[i]];
      fn(FinSet(std::move(elems)));
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace detail

// Largest phi(A) / hull(A) over subsets of `pool` with at most `max_size`
// elements.  Sets of infinite value and sets with hull zero (necessarily of
// value zero) are skipped and counted.
inline PathologyReport pathology_degree(const SubmeasureSpec& spec, const FinSet& pool,
                                        std::size_t max_size, const HatCaps& caps = {}) {
  if (max_size > caps.max_set)
    throw CapExceeded("degree scan max_size exceeds the hull cap " +
                      std::to_string(caps.max_set));
  PathologyReport rep;
  rep.scan = "subsets of " + pool.str() + " of size <= " + std::to_string(max_size);

  // One shared evaluation memo across all the hull programs in the scan.
  std::unordered_map<std::uint64_t, ExtRat> memo;
  auto eval_pool_mask = [&](std::uint64_t mask) -> ExtRat {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    ExtRat v = eval(spec, FinSet::from_mask(mask, pool.elements()));
    memo.emplace(mask, v);
    return v;
  };
  auto mask_of = [&](const FinSet& sub) {
    std::uint64_t m = 0;
    for (std::size_t i = 0, j = 0; i < pool.size() && j < sub.size(); ++i)
      if (pool[i] == sub[j]) {
        m |= std::uint64_t{1} << i;
        ++j;
      }
    return m;
  };

  detail::for_each_subset_by_size(pool, max_size, [&](const FinSet& a) {
    ++rep.sets_scanned;
    const std::uint64_t amask = mask_of(a);
    ExtRat v = eval_pool_mask(amask);
    if (v.is_infinite()) {
      ++rep.skipped_infinite;
      return;
    }
    // Sub-mask arithmetic: bit i of the local mask is a[i]; map through pool.
    std::vector<std::uint64_t> bit_of(a.size());
    for (std::size_t i = 0, j = 0; i < pool.size(); ++i)
      if (amask & (std::uint64_t{1} << i)) bit_of[j++] = std::uint64_t{1} << i;
    auto value_of = [&](std::uint64_t local) {
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (local & (std::uint64_t{1} << i)) m |= bit_of[i];
      return eval_pool_mask(m);
    };
    HatPhiResult h = detail::hat_phi_masked(value_of, a);
    if (!h.verified) rep.all_verified = false;
    if (h.value == 0) {
      ++rep.skipped_zero;
      return;
    }
    Rat ratio = v.finite() / h.value;
    if (ratio > rep.degree) {
      rep.degree = ratio;
      rep.witness_set = a;
      rep.witness_measure = h.witness;
      rep.witness_value = v;
      rep.witness_hull = h.value;
    }
  });
  return rep;
}

// ---------------------------------------------------------------------------

// On an integer-valued submeasure, a set A with strictly decreasing
// co-singletons and phi(A) < |A| forces pathology: no dominated measure can
// reach phi on A.
struct CriterionVerdict {
  enum State { Fired, NotFired, Inapplicable } state = NotFired;
  std::string detail;
  ExtRat value;
  std::vector<std::pair<Nat, ExtRat>> co_values;
};

inline CriterionVerdict integer_pathology_criterion(const SubmeasureSpec& spec,
                                                    const FinSet& a) {
  CriterionVerdict v;
  v.value = eval(spec, a);
  auto integral = [](const ExtRat& x) {
    return x.is_infinite() || denominator(x.finite()) == 1;
  };
  if (!integral(v.value)) {
    v.state = CriterionVerdict::Inapplicable;
    v.detail = "value on " + a.str() + " is " + v.value.str() + ", not an integer";
    return v;
  }
  bool all_drop = true;
  for (Nat x : a) {
    ExtRat co = eval(spec, a.without(x));
    if (!integral(co)) {
      v.state = CriterionVerdict::Inapplicable;
      v.detail = "value without " + std::to_string(x) + " is " + co.str() + ", not an integer";
      return v;
    }
    if (!(co < v.value)) all_drop = false;
    v.co_values.emplace_back(x, co);
  }
  if (a.size() < 2) {
    v.detail = "needs at least two elements";
    return v;
  }
  if (!all_drop) {
    v.detail = "some co-singleton does not drop strictly";
    return v;
  }
  if (!(v.value < ExtRat(Rat(a.size())))) {
    v.detail = "value " + v.value.str() + " is not below the cardinality " +
               std::to_string(a.size());
    return v;
  }
  v.state = CriterionVerdict::Fired;
  v.detail = "strict co-singleton drops and value " + v.value.str() + " < " +
             std::to_string(a.size());
  return v;
}

// ---------------------------------------------------------------------------

struct MinimalWitnessResult {
  std::optional<FinSet> witness;
  std::size_t evals_used = 0;
  bool budget_hit = false;
};

// Least (size-major, then lexicographic) subset of `pool` with value exactly
// k whose co-singletons all drop below k.  Works for integer-valued monotone
// specs whose singletons have value 1; stripping elements from any set of
// value k then lands on such a witness, so scanning by size finds one.
inline MinimalWitnessResult minimal_witness(const SubmeasureSpec& spec, const Nat k,
                                            const FinSet& pool, std::size_t eval_budget) {
  MinimalWitnessResult res;
  if (k == 0) {
    res.witness = FinSet{};
    return res;
  }
  auto charge = [&](std::size_t n) {
    if (res.budget_hit) return false;
    if (res.evals_used + n > eval_budget) {
      res.budget_hit = true;
      return false;
    }
    res.evals_used += n;
    return true;
  };
  for (Nat x : pool) {
    if (!charge(1)) return res;
    ExtRat one = eval(spec, FinSet{x});
    if (!(one == ExtRat(1)))
      throw DomainError("minimal_witness expects singleton values 1; {" +
                        std::to_string(x) + "} has value " + one.str());
  }
  bool found = false;
  detail::for_each_subset_by_size(pool, pool.size(), [&](const FinSet& b) {
    if (found || res.budget_hit) return;
    if (!charge(1)) return;
    if (!(eval(spec, b) == ExtRat(Rat(k)))) return;
    for (Nat x : b) {
      if (!charge(1)) return;
      if (!(eval(spec, b.without(x)) < ExtRat(Rat(k)))) return;
    }
    res.witness = b;
    found = true;
  });
  return res;
}

}  // namespace subm
