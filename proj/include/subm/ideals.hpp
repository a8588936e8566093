#pragma once
// Named submeasures over the arith-v1 block scheme, and the structural
// probes that locate a set relative to the ideals they induce (finite-value,
// exhaustive, summable).
//
// The two readings of the block construction deliberately coexist:
//   * fin_empty_sup / fin_empty_filtration give max(block)+1,
//   * block_cover counts how many blocks a set meets,
//   * ed_sup, ed_cover and ed_psi are the three presentations of the
//     piece-or-selector submeasure (sup form, covering form, growth form).
// They agree where they should and differ where they must; the tests pin
// both sides.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/measure.hpp"
#include "subm/rational.hpp"
#include "subm/schemes.hpp"
#include "subm/spec.hpp"
#include "subm/stream.hpp"
#include "subm/vectorseq.hpp"

namespace subm {

namespace detail {

// Count of elements per block.
inline std::map<Nat, Nat> block_counts(const FinSet& f) {
  std::map<Nat, Nat> c;
  for (Nat m : f) ++c[PairingPartition::block_of(m)];
  return c;
}

// Integer-valued block submeasures share this level-set shape: every
// singleton has value >= 1, so below 1 the level set is everything.
inline ExtRat integer_level_all_or_nothing(const Rat& eps) {
  if (eps < 1) return ExtRat::infinity();
  return 0;
}

}  // namespace detail

// phi(A) = (largest block index met by A) + 1; the sup-of-singletons form.
inline SubmeasureSpec fin_empty_sup() {
  ComputedSpec c;
  c.name = "fin-empty.sup";
  c.eval_fn = [](const FinSet& f) -> ExtRat {
    Nat best = 0;
    for (Nat m : f) best = std::max(best, PairingPartition::block_of(m));
    return ExtRat(Rat(best + 1));
  };
  c.point_fn = [](Nat m) -> ExtRat { return ExtRat(Rat(PairingPartition::block_of(m) + 1)); };
  c.level_value = [](const Rat& eps) -> ExtRat {
    // every level set below any threshold still meets unboundedly high blocks
    (void)eps;
    return ExtRat::infinity();
  };
  c.unbounded_witness = [](const Rat& m) -> std::optional<FinSet> {
    Nat n = 0;
    while (Rat(n + 1) <= m) ++n;
    return FinSet{PairingPartition::pair(n, 0)};
  };
  c.total_infinite = true;
  return c;
}

// Same value through the covering filtration: the n-th class holds the sets
// contained in blocks 0..n.
inline SubmeasureSpec fin_empty_filtration(Nat search_budget = 4096) {
  FiltrationSpec f;
  f.name = "fin-empty.filtration";
  f.member = [](Nat n, const FinSet& a) {
    for (Nat m : a)
      if (PairingPartition::block_of(m) > n) return false;
    return true;
  };
  f.search_budget = search_budget;
  f.level_value = [](const Rat&) -> ExtRat { return ExtRat::infinity(); };
  f.total_infinite = true;
  return f;
}

// psi(A) = number of distinct blocks met; the least size of a block family
// whose union covers A.
inline SubmeasureSpec block_cover() {
  ComputedSpec c;
  c.name = "block-cover";
  c.eval_fn = [](const FinSet& f) -> ExtRat {
    return ExtRat(Rat(detail::block_counts(f).size()));
  };
  c.point_fn = [](Nat) -> ExtRat { return 1; };
  c.level_value = detail::integer_level_all_or_nothing;
  c.unbounded_witness = [](const Rat& m) -> std::optional<FinSet> {
    std::vector<Nat> v;
    for (Nat n = 0; Rat(n) <= m; ++n) v.push_back(PairingPartition::pair(n, 0));
    return FinSet(std::move(v));
  };
  c.total_infinite = true;
  return c;
}

// phi(A) = max over blocks n of min(|A & B_n|, n+1): how big a piece of a
// single block A contains, with block n never counting above n+1.
inline SubmeasureSpec ed_sup() {
  ComputedSpec c;
  c.name = "ed.sup";
  c.eval_fn = [](const FinSet& f) -> ExtRat {
    Nat best = 0;
    for (const auto& [n, cnt] : detail::block_counts(f))
      best = std::max(best, std::min<Nat>(cnt, n + 1));
    return ExtRat(Rat(best));
  };
  c.point_fn = [](Nat) -> ExtRat { return 1; };
  c.level_value = detail::integer_level_all_or_nothing;
  c.unbounded_witness = [](const Rat& m) -> std::optional<FinSet> {
    Nat n = 0;
    while (Rat(n + 1) <= m) ++n;
    return PairingPartition::block_prefix(n, n + 1);
  };
  c.total_infinite = true;
  return c;
}

// Covering form of the same idea: admissible sets are the pieces (inside one
// block) and the partial selectors (at most one point per block).
inline SubmeasureSpec ed_cover() {
  CoverSpec c;
  c.name = "ed.cover";
  c.in_base = [](const FinSet& s) {
    if (s.size() <= 1) return true;
    bool same = true, distinct = true;
    std::optional<Nat> first;
    std::map<Nat, bool> seen;
    for (Nat m : s) {
      Nat b = PairingPartition::block_of(m);
      if (!first)
        first = b;
      else if (b != *first)
        same = false;
      if (seen[b]) distinct = false;
      seen[b] = true;
    }
    return same || distinct;
  };
  c.level_value = detail::integer_level_all_or_nothing;
  c.total_infinite = true;
  return c;
}

// Growth form: psi(A) = least m such that every block beyond m contributes
// at most m points to A.  A whole block B_j scores exactly j; see
// ed_psi_block.
inline Nat ed_psi_counts(const std::map<Nat, std::optional<Nat>>& counts) {
  // nullopt marks an infinite trace inside that block
  for (Nat m = 0;; ++m) {
    bool ok = true;
    for (const auto& [n, cnt] : counts) {
      if (n <= m) continue;
      if (!cnt || *cnt > m) {
        ok = false;
        break;
      }
    }
    if (ok) return m;
  }
}

inline Nat ed_psi(const FinSet& f) {
  std::map<Nat, std::optional<Nat>> counts;
  for (const auto& [n, cnt] : detail::block_counts(f)) counts[n] = cnt;
  return ed_psi_counts(counts);
}

inline Nat ed_psi_block(Nat j) {
  // the full block meets itself infinitely, so the least admissible m is j
  return ed_psi_counts({{j, std::nullopt}});
}

inline SubmeasureSpec ed_psi_spec() {
  ComputedSpec c;
  c.name = "ed.psi";
  c.eval_fn = [](const FinSet& f) -> ExtRat { return ExtRat(Rat(ed_psi(f))); };
  c.total_infinite = true;
  return c;
}

// The index-diagonal family x_m = block(m) * e_m; its norms run off to
// infinity block by block, which makes it the stock negative control for
// selectors that assume bounded inputs.
inline VectorFamily fin_empty_diagonal() {
  return VectorFamily{
      [](Nat m) {
        Nat b = PairingPartition::block_of(m);
        return b == 0 ? SparseVec{} : SparseVec::scaled_unit(m, Rat(b));
      },
      std::nullopt,
      "fin-empty-diagonal",
  };
}

// Wrap a vector family as a spec, so the generic machinery (prefix bounds,
// diagnostics) can run on it.  No level or total annotations: nothing is
// claimed that the family does not carry.
inline SubmeasureSpec spec_from_family(const VectorFamily& fam) {
  ComputedSpec c;
  c.name = fam.name;
  c.eval_fn = [fam](const FinSet& f) { return ExtRat(fam.eval(f)); };
  c.point_fn = [fam](Nat n) { return ExtRat(fam.at(n).norm_inf()); };
  return SubmeasureSpec(std::move(c));
}

// ---------------------------------------------------------------------------
// The summable construction: block n carries sup over its runs of uniform
// measures (see SubBlockScheme), and the blocks are then summed.

struct SummableExample {
  SubBlockScheme scheme;
  SubmeasureSpec spec;
};

inline SummableExample summable_example(SubBlockVariant variant) {
  SubBlockScheme scheme(variant);
  ComputedSpec c;
  c.name = scheme.name();
  c.eval_fn = [scheme](const FinSet& f) -> ExtRat {
    // per block: sup over runs of (count in run) * (run point mass)
    std::map<Nat, std::map<Nat, Nat>> per_block_run;
    for (Nat m : f) {
      auto cell = scheme.cell_of(m);
      ++per_block_run[cell.block][cell.run];
    }
    Rat total = 0;
    for (const auto& [n, runs] : per_block_run) {
      Rat best = 0;
      for (const auto& [k, cnt] : runs) {
        Rat v = Rat(cnt) * scheme.point_mass(n, k);
        if (v > best) best = v;
      }
      total += best;
    }
    return ExtRat(total);
  };
  c.point_fn = [scheme](Nat m) -> ExtRat { return ExtRat(scheme.cell_of(m).mass); };
  c.level_value = [](const Rat& eps) -> ExtRat {
    // Both variants: the level set is a union of whole blocks 0..N with
    // 2^-N > eps, each contributing its full run value n+1.
    if (eps >= 1) return 0;
    Rat total = 0;
    for (Nat n = 0; pow2(-static_cast<long>(n)) > eps; ++n) total += Rat(n + 1);
    return ExtRat(total);
  };
  c.unbounded_witness = [scheme](const Rat& m) -> std::optional<FinSet> {
    FinSet acc;
    Rat value = 0;
    for (Nat n = 0; value <= m; ++n) {
      acc = set_union(acc, scheme.run_set(n, 0));
      value += Rat(n + 1);
    }
    return acc;
  };
  c.total_infinite = true;
  return {scheme, SubmeasureSpec(std::move(c))};
}

struct FactCheckItem {
  std::string fact;
  bool ok = false;
  std::string detail;
};

struct FactCheckReport {
  std::vector<FactCheckItem> items;
  bool all_ok() const {
    for (const auto& i : items)
      if (!i.ok) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Unboundedness-with-small-level-sets ("property A" in the reports): the
// total value is infinite while every level set {n : phi{n} > eps} has
// finite value.

struct PropertyAVerdict {
  enum State { Holds, Fails, Inconclusive } state = Inconclusive;
  std::vector<std::pair<Rat, ExtRat>> levels;  // (eps, value of the level set)
  std::string detail;
};

// Finite total support, where the representation reveals one.
inline std::optional<FinSet> support_hint(const SubmeasureSpec& spec) {
  if (auto* t = spec.get_if<TableSpec>()) {
    std::vector<Nat> v(t->universe);
    for (Nat i = 0; i < t->universe; ++i) v[i] = i;
    return FinSet(std::move(v));
  }
  if (auto* s = spec.get_if<SupMeasuresSpec>()) {
    FinSet u;
    for (const auto& mu : s->measures) u = set_union(u, mu.support());
    return u;
  }
  if (auto* v = spec.get_if<VectorSeqSpec>()) return v->seq.all_indices();
  if (auto* s = spec.get_if<SupSpec>()) {
    FinSet u;
    for (const auto& p : s->parts) {
      auto h = support_hint(p);
      if (!h) return std::nullopt;
      u = set_union(u, *h);
    }
    return u;
  }
  if (auto* s = spec.get_if<SumSpec>()) {
    FinSet u;
    for (const auto& p : s->parts) {
      auto h = support_hint(p);
      if (!h) return std::nullopt;
      u = set_union(u, *h);
    }
    return u;
  }
  return std::nullopt;
}

inline std::vector<Rat> default_level_schedule() {
  std::vector<Rat> s;
  for (long j = 0; j <= 10; ++j) s.push_back(pow2(-j));
  return s;
}

inline PropertyAVerdict has_property_A(const SubmeasureSpec& spec,
                                       std::vector<Rat> schedule = default_level_schedule()) {
  PropertyAVerdict v;

  std::function<ExtRat(const Rat&)> level;
  bool total_infinite = false;
  std::optional<ExtRat> total;

  if (auto supp = support_hint(spec)) {
    total = eval(spec, *supp);
    level = [spec, supp = *supp](const Rat& eps) -> ExtRat {
      std::vector<Nat> in;
      for (Nat x : supp)
        if (ExtRat(eps) < point_value(spec, x)) in.push_back(x);
      return eval(spec, FinSet(std::move(in)));
    };
  } else if (auto* f = spec.get_if<FiltrationSpec>()) {
    level = f->level_value;
    total_infinite = f->total_infinite;
  } else if (auto* c = spec.get_if<CoverSpec>()) {
    level = c->level_value;
    total_infinite = c->total_infinite;
  } else if (auto* c = spec.get_if<ComputedSpec>()) {
    level = c->level_value;
    total_infinite = c->total_infinite;
    total = c->total;
  }

  if (!total_infinite) {
    if (total && total->is_finite()) {
      v.state = PropertyAVerdict::Fails;
      v.detail = "the total value is finite (" + total->str() + "), not infinite";
      return v;
    }
    if (!total) {
      v.state = PropertyAVerdict::Inconclusive;
      v.detail = "no handle on the total value";
      return v;
    }
  }

  if (!level) {
    v.state = PropertyAVerdict::Inconclusive;
    v.detail = "no level-set oracle";
    return v;
  }

  for (const Rat& eps : schedule) {
    ExtRat lv = level(eps);
    v.levels.emplace_back(eps, lv);
    if (lv.is_infinite()) {
      v.state = PropertyAVerdict::Fails;
      v.detail = "level set at " + format_rat(eps) + " has infinite value";
      return v;
    }
  }

  // If the representation claims unbounded totals through a witness, spot-check it.
  if (auto* c = spec.get_if<ComputedSpec>(); c && c->unbounded_witness) {
    for (int m : {1, 10}) {
      auto w = c->unbounded_witness(Rat(m));
      if (!w || !(ExtRat(Rat(m)) < eval(spec, *w))) {
        v.state = PropertyAVerdict::Fails;
        v.detail = "unbounded-total witness failed at threshold " + std::to_string(m);
        return v;
      }
    }
  }

  v.state = PropertyAVerdict::Holds;
  v.detail = "infinite total, finite level sets along the schedule";
  return v;
}

// Finite spot-checks of what the summable construction promises.  Each item
// verifies a statement on a bounded window; nothing here claims the infinite
// statement itself.
inline FactCheckReport check_summable_facts(const SummableExample& ex, Nat max_block = 3,
                                            Nat max_run = 2, Nat selector_depth = 8) {
  FactCheckReport rep;
  const auto& sch = ex.scheme;

  {
    FactCheckItem it;
    it.fact = "each full run B_n^k evaluates to exactly n+1";
    it.ok = true;
    for (Nat n = 0; n <= max_block && it.ok; ++n)
      for (Nat k = 0; k <= max_run && it.ok; ++k) {
        ExtRat v = eval(ex.spec, sch.run_set(n, k));
        if (!(v == ExtRat(Rat(n + 1)))) {
          it.ok = false;
          it.detail = "run (" + std::to_string(n) + "," + std::to_string(k) +
                      ") evaluates to " + v.str();
        }
      }
    rep.items.push_back(std::move(it));
  }

  {
    FactCheckItem it;
    it.fact = "infinite total with finite level sets";
    auto verdict = has_property_A(ex.spec, default_level_schedule());
    it.ok = verdict.state == PropertyAVerdict::Holds;
    it.detail = verdict.detail;
    rep.items.push_back(std::move(it));
  }

  {
    FactCheckItem it;
    it.fact = "block selectors have summable values below 2";
    std::vector<Nat> sel;
    std::vector<ExtRat> points;
    for (Nat n = 0; n <= selector_depth; ++n) {
      Nat m = PairingPartition::pair(n, 0);  // first member of each block
      sel.push_back(m);
      points.push_back(point_value(ex.spec, m));
    }
    ExtRat total = detail::balanced_sum(points, 0, points.size());
    ExtRat value = eval(ex.spec, FinSet(sel));
    it.ok = total < ExtRat(2) && !(total < value);
    it.detail = "sum of point values " + total.str() + ", set value " + value.str();
    rep.items.push_back(std::move(it));
  }

  {
    FactCheckItem it;
    it.fact = "deep runs keep full value (blocks are not exhausted)";
    it.ok = true;
    for (Nat n = 1; n <= max_block && it.ok; ++n) {
      const Nat deep = 5;
      FinSet run = sch.run_set(n, deep);
      ExtRat v = eval(ex.spec, run);
      if (!(v == ExtRat(Rat(n + 1)))) {
        it.ok = false;
        it.detail = "deep run (" + std::to_string(n) + "," + std::to_string(deep) +
                    ") evaluates to " + v.str();
      }
    }
    rep.items.push_back(std::move(it));
  }

  return rep;
}

// ---------------------------------------------------------------------------

struct BoundednessVerdict {
  enum Kind { BoundedSoFar, Exceeded, Inconclusive } kind = Inconclusive;
  ExtRat bound;
  std::size_t prefix_len = 0;
  std::optional<FinSet> witness;  // for Exceeded: the least offending prefix
  ExtRat witness_value;
  bool stream_exhausted = false;
  std::string note;
};

// Walks the stream, checking phi(prefix) <= bound at dyadic lengths; on an
// exceedance, binary-searches the least offending prefix length (evaluation
// is monotone in the prefix).
inline BoundednessVerdict bounded_on_prefix(const SubmeasureSpec& spec, SetStream& stream,
                                            const ExtRat& bound, std::size_t budget) {
  BoundednessVerdict v;
  v.bound = bound;
  std::vector<Nat> elems;
  auto value_at = [&](std::size_t count) {
    return eval(spec, FinSet(std::vector<Nat>(elems.begin(), elems.begin() + count)));
  };
  try {
    std::size_t last_ok = 0;
    std::size_t next_check = 1;
    for (;;) {
      if (elems.size() >= budget) break;
      auto e = stream.next();
      if (!e) {
        v.stream_exhausted = true;
        break;
      }
      elems.push_back(*e);
      if (elems.size() == next_check || elems.size() == budget) {
        ExtRat val = value_at(elems.size());
        if (bound < val) {
          // least c in (last_ok, size] with value above the bound
          std::size_t lo = last_ok + 1, hi = elems.size();
          while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (bound < value_at(mid))
              hi = mid;
            else
              lo = mid + 1;
          }
          v.kind = BoundednessVerdict::Exceeded;
          v.prefix_len = lo;
          v.witness = FinSet(std::vector<Nat>(elems.begin(), elems.begin() + lo));
          v.witness_value = value_at(lo);
          return v;
        }
        last_ok = elems.size();
        next_check *= 2;
      }
    }
    v.kind = BoundednessVerdict::BoundedSoFar;
    v.prefix_len = elems.size();
    v.witness_value = elems.empty() ? ExtRat(0) : value_at(elems.size());
    v.note = v.stream_exhausted ? "stream exhausted" : "budget reached";
  } catch (const BudgetExhausted& e) {
    v.kind = BoundednessVerdict::Inconclusive;
    v.prefix_len = elems.size();
    v.note = e.what();
  }
  return v;
}

}  // namespace subm
