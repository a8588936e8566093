#pragma once
// Submeasure descriptions and their exact evaluation on finite sets.
//
// A SubmeasureSpec is a tagged union over the ways a lower semicontinuous
// submeasure can be presented to this library:
//   * Table          - explicit values on every subset of {0..u-1}, u <= 20
//   * SupMeasures    - pointwise sup of a finite family of point measures
//   * VectorSeq      - the sup-norm evaluation of a stored c00 sequence
//   * Filtration     - phi(A) = min{ n+1 : A lands in the n-th class }
//   * Cover          - least number of base sets needed to cover A
//   * Computed       - a named closed form (used by the canonical examples)
//   * Sup / Sum      - finite combinations of the above
// Every evaluation is exact rational arithmetic; infinite values are the
// tagged ExtRat infinity.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subm/finset.hpp"
#include "subm/measure.hpp"
#include "subm/rational.hpp"
#include "subm/stream.hpp"
#include "subm/vectorseq.hpp"

namespace subm {

inline constexpr Nat kTableUniverseCap = 20;
inline constexpr std::size_t kCoverSizeCap = 14;

struct TableSpec {
  Nat universe = 0;            // ground set {0..universe-1}
  std::vector<ExtRat> values;  // indexed by subset bitmask; size 1 << universe
};

struct SupMeasuresSpec {
  std::vector<PointMeasure> measures;
};

struct VectorSeqSpec {
  VectorSeq seq;
};

// Value on nonempty A is min{ n+1 : member(n, A) }; empty set gives 0.
// member must be monotone in n (classes only grow); search stops at
// search_budget and reports the bound established so far.
struct FiltrationSpec {
  std::string name;
  std::function<bool(Nat, const FinSet&)> member;
  Nat search_budget = 4096;
  // Optional closed forms for level sets {n : phi({n}) > eps} and totals,
  // filled in by the named constructions that know them.
  std::function<ExtRat(const Rat&)> level_value;
  bool total_infinite = false;
};

// Value on A is the least number of base sets covering A.  The base must be
// hereditary and contain the empty set and all singletons.
struct CoverSpec {
  std::string name;
  std::function<bool(const FinSet&)> in_base;
  std::size_t size_cap = kCoverSizeCap;
  std::function<ExtRat(const Rat&)> level_value;
  bool total_infinite = false;
};

struct ComputedSpec {
  std::string name;
  std::function<ExtRat(const FinSet&)> eval_fn;
  std::function<ExtRat(Nat)> point_fn;             // null: evaluate the singleton
  std::function<ExtRat(const Rat&)> level_value;   // null: unknown
  std::function<std::optional<FinSet>(const Rat&)> unbounded_witness;  // null: unknown
  std::optional<ExtRat> total;
  bool total_infinite = false;
};

class SubmeasureSpec;

struct SupSpec {
  std::vector<SubmeasureSpec> parts;
};

struct SumSpec {
  std::vector<SubmeasureSpec> parts;
  // block_contains(i, m): does block i contain the point m?
  std::function<bool(std::size_t, Nat)> block_contains;
  // When every part is a sup of measures and the choice product is small,
  // the equivalent flat measure family (one per choice tuple) is carried
  // here so the result provably stays a sup of measures.
  std::optional<std::vector<PointMeasure>> combined;
};

class SubmeasureSpec {
 public:
  using Node = std::variant<TableSpec, SupMeasuresSpec, VectorSeqSpec,
                            FiltrationSpec, CoverSpec, ComputedSpec, SupSpec,
                            SumSpec>;

  SubmeasureSpec(TableSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(SupMeasuresSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(VectorSeqSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(FiltrationSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(CoverSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(ComputedSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(SupSpec t) : SubmeasureSpec(Node(std::move(t))) {}
  SubmeasureSpec(SumSpec t) : SubmeasureSpec(Node(std::move(t))) {}

  const Node& node() const { return *n_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(n_.get());
  }

  std::string kind() const {
    switch (n_->index()) {
      case 0: return "table";
      case 1: return "sup_measures";
      case 2: return "vector_seq";
      case 3: return "filtration";
      case 4: return "cover";
      case 5: return "computed";
      case 6: return "sup";
      default: return "sum";
    }
  }

  std::string name() const {
    if (auto* f = get_if<FiltrationSpec>()) return f->name;
    if (auto* c = get_if<CoverSpec>()) return c->name;
    if (auto* c = get_if<ComputedSpec>()) return c->name;
    return kind();
  }

 private:
  explicit SubmeasureSpec(Node n) : n_(std::make_shared<Node>(std::move(n))) {
    validate();
  }

  void validate() const {
    if (auto* t = std::get_if<TableSpec>(n_.get())) {
      if (t->universe > kTableUniverseCap)
        throw CapExceeded("table universe exceeds " + std::to_string(kTableUniverseCap));
      if (t->values.size() != (std::size_t{1} << t->universe))
        throw DomainError("table must list a value for every subset bitmask");
    }
    if (auto* f = std::get_if<FiltrationSpec>(n_.get())) {
      if (!f->member) throw DomainError("filtration needs a membership predicate");
    }
    if (auto* c = std::get_if<CoverSpec>(n_.get())) {
      if (!c->in_base) throw DomainError("cover needs a base predicate");
    }
    if (auto* c = std::get_if<ComputedSpec>(n_.get())) {
      if (!c->eval_fn) throw DomainError("computed spec needs an evaluation");
    }
    if (auto* s = std::get_if<SupSpec>(n_.get())) {
      if (s->parts.empty()) throw DomainError("sup of zero specs");
    }
    if (auto* s = std::get_if<SumSpec>(n_.get())) {
      if (s->parts.empty()) throw DomainError("sum of zero specs");
      if (!s->block_contains) throw DomainError("sum needs block membership");
    }
  }

  std::shared_ptr<const Node> n_;
};

namespace detail {

inline std::uint64_t table_mask(const TableSpec& t, const FinSet& f) {
  std::uint64_t m = 0;
  for (Nat x : f) {
    if (x >= t.universe) throw DomainError("set outside table universe: element " + std::to_string(x));
    m |= std::uint64_t{1} << x;
  }
  return m;
}

// Exact minimum cover via dynamic programming over subsets of f.  dp[mask]
// is the least number of base sets covering the elements selected by mask;
// transitions peel a base subset containing the lowest uncovered element.
inline Nat min_cover(const CoverSpec& c, const FinSet& f) {
  const std::size_t n = f.size();
  if (n > c.size_cap) throw CapExceeded("cover evaluation cap is " + std::to_string(c.size_cap));
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<char> base(full + 1, 0);
  for (std::uint64_t m = 1; m <= full; ++m)
    base[m] = c.in_base(FinSet::from_mask(m, f.elements())) ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!base[std::uint64_t{1} << i])
      throw DomainError("cover base must contain all singletons");
  std::vector<Nat> dp(full + 1, Nat(-1));
  dp[0] = 0;
  for (std::uint64_t m = 1; m <= full; ++m) {
    const std::uint64_t low = m & (~m + 1);  // lowest uncovered element
    Nat best = Nat(-1);
    // submasks of m containing `low`
    for (std::uint64_t s = m; s; s = (s - 1) & m) {
      if (!(s & low) || !base[s]) continue;
      Nat cand = dp[m ^ s];
      if (cand != Nat(-1) && cand + 1 < best) best = cand + 1;
    }
    dp[m] = best;
  }
  return dp[full];
}

}  // namespace detail

ExtRat eval(const SubmeasureSpec& spec, const FinSet& f);

namespace detail {

struct EvalVisitor {
  const FinSet& f;

  ExtRat operator()(const TableSpec& t) const { return t.values[table_mask(t, f)]; }

  ExtRat operator()(const SupMeasuresSpec& s) const {
    ExtRat best = 0;
    for (const auto& mu : s.measures) best = max(best, ExtRat(mu.value(f)));
    return best;
  }

  ExtRat operator()(const VectorSeqSpec& v) const { return ExtRat(v.seq.eval(f)); }

  ExtRat operator()(const FiltrationSpec& fi) const {
    for (Nat n = 0; n < fi.search_budget; ++n)
      if (fi.member(n, f)) return ExtRat(Rat(n + 1));
    throw BudgetExhausted("filtration '" + fi.name + "': no class admitted the set within budget " +
                              std::to_string(fi.search_budget),
                          Rat(fi.search_budget + 1));
  }

  ExtRat operator()(const CoverSpec& c) const { return ExtRat(Rat(min_cover(c, f))); }

  ExtRat operator()(const ComputedSpec& c) const { return c.eval_fn(f); }

  ExtRat operator()(const SupSpec& s) const {
    ExtRat best = 0;
    for (const auto& p : s.parts) best = max(best, eval(p, f));
    return best;
  }

  ExtRat operator()(const SumSpec& s) const {
    ExtRat total = 0;
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
      std::vector<Nat> in;
      for (Nat x : f)
        if (s.block_contains(i, x)) in.push_back(x);
      if (!in.empty()) total += eval(s.parts[i], FinSet(std::move(in)));
    }
    return total;
  }
};

}  // namespace detail

inline ExtRat eval(const SubmeasureSpec& spec, const FinSet& f) {
  if (f.empty()) return 0;
  return std::visit(detail::EvalVisitor{f}, spec.node());
}

inline ExtRat point_value(const SubmeasureSpec& spec, Nat n) {
  if (auto* c = spec.get_if<ComputedSpec>(); c && c->point_fn) return c->point_fn(n);
  return eval(spec, FinSet{n});
}

// eval, with budget exhaustion folded into the result instead of thrown.
struct EvalOutcome {
  bool exact = true;
  ExtRat value;        // the value when exact
  Rat lower_bound;     // when not exact: the value is at least this
  std::string note;
};

inline EvalOutcome try_eval(const SubmeasureSpec& spec, const FinSet& f) {
  try {
    return {true, eval(spec, f), 0, ""};
  } catch (const BudgetExhausted& e) {
    return {false, 0, e.lower_bound, e.what()};
  }
}

// ---------------------------------------------------------------------------
// Table validation

struct TableViolation {
  enum Kind { EmptySet, SingletonInfinite, Monotone, Subadditive } kind;
  FinSet a, b;
  ExtRat lhs, rhs;

  std::string describe() const {
    switch (kind) {
      case EmptySet:
        return "value on {} is " + lhs.str() + ", must be 0";
      case SingletonInfinite:
        return "value on " + a.str() + " is infinite; singletons must be finite";
      case Monotone:
        return "monotonicity fails: value " + lhs.str() + " on " + a.str() +
               " exceeds value " + rhs.str() + " on superset " + b.str();
      default:
        return "subadditivity fails on disjoint " + a.str() + ", " + b.str() +
               ": value " + lhs.str() + " on the union exceeds the sum " + rhs.str();
    }
  }
};

// Empty result iff the table is a valid lscsm on its finite universe.
// Monotonicity is checked against co-singletons (chains give the rest) and
// subadditivity against disjoint pairs (with monotonicity that implies the
// general inequality).  Cost: u * 2^u comparisons plus 3^u pair checks.
inline std::vector<TableViolation> validate_table(const TableSpec& t) {
  SubmeasureSpec guard{t};  // shape checks
  (void)guard;
  std::vector<TableViolation> out;
  const std::uint64_t full = (std::uint64_t{1} << t.universe) - 1;
  if (!(t.values[0] == ExtRat(0)))
    out.push_back({TableViolation::EmptySet, {}, {}, t.values[0], 0});
  for (Nat i = 0; i < t.universe; ++i) {
    const std::uint64_t m = std::uint64_t{1} << i;
    if (t.values[m].is_infinite())
      out.push_back({TableViolation::SingletonInfinite, FinSet{i}, {}, t.values[m], 0});
  }
  for (std::uint64_t m = 1; m <= full; ++m) {
    for (std::uint64_t rest = m; rest;) {
      const std::uint64_t bit = rest & (~rest + 1);
      rest ^= bit;
      if (t.values[m ^ bit] > t.values[m])
        out.push_back({TableViolation::Monotone, FinSet::from_mask(m ^ bit),
                       FinSet::from_mask(m), t.values[m ^ bit], t.values[m]});
    }
  }
  for (std::uint64_t u = 3; u <= full; ++u) {
    for (std::uint64_t s = (u - 1) & u; s; s = (s - 1) & u) {
      const std::uint64_t other = u ^ s;
      if (s > other) continue;  // each unordered pair once
      if (t.values[u] > t.values[s] + t.values[other])
        out.push_back({TableViolation::Subadditive, FinSet::from_mask(s),
                       FinSet::from_mask(other), t.values[u],
                       t.values[s] + t.values[other]});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinators

inline SubmeasureSpec sup_combine(std::vector<SubmeasureSpec> parts) {
  if (parts.empty()) throw DomainError("sup_combine: no parts");
  bool all_measures = true;
  for (const auto& p : parts)
    if (!p.get_if<SupMeasuresSpec>()) all_measures = false;
  if (all_measures) {
    SupMeasuresSpec flat;
    for (const auto& p : parts) {
      const auto& ms = p.get_if<SupMeasuresSpec>()->measures;
      flat.measures.insert(flat.measures.end(), ms.begin(), ms.end());
    }
    return flat;
  }
  return SupSpec{std::move(parts)};
}

inline constexpr std::size_t kSumCombineTupleCap = 4096;

// The i-th part must live on the i-th block.  The value of the result on F
// is the sum over i of part_i on (F intersect block_i).
inline SubmeasureSpec sum_combine(std::vector<SubmeasureSpec> parts,
                                  std::function<bool(std::size_t, Nat)> block_contains,
                                  std::size_t tuple_cap = kSumCombineTupleCap) {
  if (parts.empty()) throw DomainError("sum_combine: no parts");
  if (!block_contains) throw DomainError("sum_combine: no block membership");

  // Where a part's support is discoverable, insist it sits inside its block.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto check = [&](const FinSet& supp, const char* what) {
      for (Nat x : supp)
        if (!block_contains(i, x))
          throw DomainError(std::string("sum_combine: ") + what + " of part " +
                            std::to_string(i) + " leaves its block at point " +
                            std::to_string(x));
    };
    if (auto* m = parts[i].get_if<SupMeasuresSpec>()) {
      for (const auto& mu : m->measures) check(mu.support(), "measure support");
    } else if (auto* t = parts[i].get_if<TableSpec>()) {
      std::vector<Nat> univ(t->universe);
      for (Nat x = 0; x < t->universe; ++x) univ[x] = x;
      check(FinSet(univ), "table universe");
    }
  }

  SumSpec node{std::move(parts), std::move(block_contains), std::nullopt};

  bool all_measures = true;
  std::size_t tuples = 1;
  for (const auto& p : node.parts) {
    auto* m = p.get_if<SupMeasuresSpec>();
    if (!m) {
      all_measures = false;
      break;
    }
    std::size_t k = std::max<std::size_t>(1, m->measures.size());
    if (tuples > tuple_cap / k + 1) tuples = tuple_cap + 1;  // saturate
    else tuples *= k;
  }
  if (all_measures && tuples <= tuple_cap) {
    // One flat measure per choice tuple: pick one measure from each part,
    // restrict it to that part's block, and add them up.
    std::vector<PointMeasure> combined{PointMeasure{}};
    for (std::size_t i = 0; i < node.parts.size(); ++i) {
      const auto& ms = node.parts[i].get_if<SupMeasuresSpec>()->measures;
      std::vector<PointMeasure> grown;
      std::vector<PointMeasure> choices = ms.empty() ? std::vector<PointMeasure>{PointMeasure{}} : ms;
      for (const auto& sofar : combined)
        for (const auto& mu : choices) {
          std::map<Nat, Rat> w = sofar.masses();
          for (const auto& [x, mass] : mu.masses())
            if (node.block_contains(i, x)) w[x] += mass;
          grown.push_back(PointMeasure(std::move(w)));
        }
      combined = std::move(grown);
    }
    node.combined = std::move(combined);
  }
  return node;
}

// The group metric induced by phi on finite sets: d(A, B) = phi(A xor B).
inline ExtRat symdiff_metric(const SubmeasureSpec& spec, const FinSet& a, const FinSet& b) {
  return eval(spec, symmetric_difference(a, b));
}

// ---------------------------------------------------------------------------
// Exhaustive-sum diagnostics along a stream

struct SumExhRow {
  std::size_t count = 0;     // elements consumed so far
  Nat last_element = 0;      // largest element included in the partial sum
  ExtRat partial_sum;        // sum of singleton values over the first `count`
  ExtRat tail;               // value of the remaining consumed prefix
};

struct SumExhReport {
  std::vector<SumExhRow> rows;
  std::size_t consumed = 0;
  bool stream_exhausted = false;
};

namespace detail {

// Pairwise (balanced) summation; keeps denominators from growing one digit
// at a time on long streams.
inline ExtRat balanced_sum(const std::vector<ExtRat>& xs, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return 0;
  if (hi - lo == 1) return xs[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return balanced_sum(xs, lo, mid) + balanced_sum(xs, mid, hi);
}

}  // namespace detail

// Walks `prefix` elements of the stream, tracking the sum of singleton values
// and the submeasure value of the unsummed tail at dyadic checkpoints.  The
// partial sums say whether the enumerated set can lie in the summable ideal;
// the tail values say whether it approaches the exhaustive one.
inline SumExhReport sum_exh_diagnostics(const SubmeasureSpec& spec, SetStream& stream,
                                        std::size_t prefix) {
  SumExhReport rep;
  std::vector<Nat> elems;
  std::vector<ExtRat> points;
  while (elems.size() < prefix) {
    auto v = stream.next();
    if (!v) {
      rep.stream_exhausted = true;
      break;
    }
    elems.push_back(*v);
    points.push_back(stream.point_value ? (*stream.point_value)(*v)
                                        : point_value(spec, *v));
  }
  rep.consumed = elems.size();
  if (elems.empty()) return rep;

  std::vector<std::size_t> checkpoints;
  for (std::size_t c = 1; c < elems.size(); c *= 2) checkpoints.push_back(c);
  checkpoints.push_back(elems.size());

  ExtRat running = 0;
  std::size_t summed = 0;
  for (std::size_t c : checkpoints) {
    running += detail::balanced_sum(points, summed, c);
    summed = c;
    std::vector<Nat> rest(elems.begin() + c, elems.end());
    SumExhRow row;
    row.count = c;
    row.last_element = elems[c - 1];
    row.partial_sum = running;
    row.tail = eval(spec, FinSet(std::move(rest)));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace subm
