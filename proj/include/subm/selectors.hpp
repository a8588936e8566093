#pragma once
// Selection routines that extract well-behaved subfamilies from vector
// sequences or submeasure streams, each returning a certificate: the chosen
// indices, a bound M, and a ledger of exact rational inequalities that were
// actually checked.  A certificate is `verified` when every ledger row holds
// and the evaluated value of the selection stays within M; it is `certified`
// when no step of the search relied on an unbacked heuristic scan.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subm/colorings.hpp"
#include "subm/finset.hpp"
#include "subm/ideals.hpp"
#include "subm/measure.hpp"
#include "subm/rational.hpp"
#include "subm/spec.hpp"
#include "subm/stream.hpp"
#include "subm/vectorseq.hpp"

namespace subm {

struct Inequality {
  std::string label;
  ExtRat lhs;
  std::string rel;  // "<", "<=", "==", ">", ">="
  ExtRat rhs;
  bool holds = false;
};

inline Inequality check_ineq(std::string label, ExtRat lhs, std::string rel, ExtRat rhs) {
  Inequality q{std::move(label), std::move(lhs), std::move(rel), std::move(rhs), false};
  if (q.rel == "<")
    q.holds = q.lhs < q.rhs;
  else if (q.rel == "<=")
    q.holds = !(q.rhs < q.lhs);
  else if (q.rel == "==")
    q.holds = q.lhs == q.rhs;
  else if (q.rel == ">")
    q.holds = q.rhs < q.lhs;
  else if (q.rel == ">=")
    q.holds = !(q.lhs < q.rhs);
  else
    throw DomainError("unknown relation " + q.rel);
  return q;
}

struct SelectorCertificate {
  FinSet selected;
  ExtRat bound;
  std::vector<Inequality> evidence;
  bool verified = false;
  bool certified = false;
  std::string route;
  std::string note;

  bool evidence_holds() const {
    for (const auto& q : evidence)
      if (!q.holds) return false;
    return true;
  }
};

// Uniform access to "value of a finite set" plus "value at a point", for
// routines that serve both submeasure specs and vector families.
struct ValueOracle {
  std::function<ExtRat(const FinSet&)> value;
  std::function<ExtRat(Nat)> point;
  std::string name;
};

inline ValueOracle oracle_from(const SubmeasureSpec& s) {
  return {[s](const FinSet& f) { return eval(s, f); },
          [s](Nat n) { return point_value(s, n); }, s.name()};
}

inline ValueOracle oracle_from(const VectorFamily& f) {
  return {[f](const FinSet& idx) { return ExtRat(f.eval(idx)); },
          [f](Nat n) { return ExtRat(f.at(n).norm_inf()); }, f.name};
}

// ---------------------------------------------------------------------------
// Quantization: snap each coordinate of a nonnegative scaled vector to the
// top of its dyadic band relative to the sup norm, keeping bands 0..n for
// the n-th vector and zeroing everything below norm/2^(n+1).  Basis vectors
// are fixed points; the n-th output takes at most n+2 distinct values
// (n+1 nonzero band tops plus zero).

struct QuantizeResult {
  VectorSeq seq;
  std::vector<Rat> errors;  // sup-norm distance per vector, exact
};

inline QuantizeResult quantize_c00(const VectorSeq& x) {
  if (!x.nonneg()) throw DomainError("quantize_c00 expects nonnegative vectors");
  std::vector<SparseVec> out;
  std::vector<Rat> errors;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const SparseVec& v = x.at(n);
    const Rat norm = v.norm_inf();
    if (norm == 0) {
      out.push_back({});
      errors.push_back(0);
      continue;
    }
    std::map<Nat, Rat> q;
    Rat err = 0;
    for (const auto& [k, val] : v.entries()) {
      Rat snapped = 0;
      Rat top = norm;
      for (std::size_t i = 0; i <= n; ++i, top /= 2) {
        if (val > top / 2 && !(val > top)) {
          snapped = top;
          break;
        }
      }
      if (snapped != 0) q[k] = snapped;
      Rat d = snapped - val;
      if (d < 0) d = -d;
      if (d > err) err = d;
    }
    out.push_back(SparseVec(std::move(q)));
    errors.push_back(std::move(err));
  }
  return {VectorSeq(std::move(out)), std::move(errors)};
}

// ---------------------------------------------------------------------------
// Truncation of a dense (infinitely supported) family to c00, cutting the
// n-th vector at its 2^-n tail modulus and spot-checking the discarded tail.

struct DenseFamily {
  std::function<Rat(Nat, Nat)> coord;                 // (n, k) -> x_n(k)
  std::function<Nat(Nat, const Rat&)> tail_modulus;   // K with |x_n(k)| < eps for k >= K
  std::string name;
};

struct TruncateResult {
  VectorSeq seq;
  std::vector<Nat> cut_at;
  std::vector<Inequality> checks;
  bool verified = false;
};

inline TruncateResult truncate_to_c00(const DenseFamily& fam, std::size_t count,
                                      std::size_t tail_samples = 8) {
  TruncateResult res;
  std::vector<SparseVec> out;
  for (Nat n = 0; n < count; ++n) {
    const Rat eps = pow2(-static_cast<long>(n));
    const Nat cut = fam.tail_modulus(n, eps);
    res.cut_at.push_back(cut);
    std::map<Nat, Rat> c;
    for (Nat k = 0; k < cut; ++k) {
      Rat v = fam.coord(n, k);
      if (v != 0) c[k] = std::move(v);
    }
    out.push_back(SparseVec(std::move(c)));
    for (std::size_t j = 0; j < tail_samples; ++j) {
      Rat v = fam.coord(n, cut + j);
      if (v < 0) v = -v;
      res.checks.push_back(check_ineq("tail sample |x_" + std::to_string(n) + "(" +
                                          std::to_string(cut + j) + ")|",
                                      ExtRat(v), "<", ExtRat(eps)));
    }
  }
  // the discarded mass is summable by construction
  Rat tail_budget = 0;
  for (Nat n = 0; n < count; ++n) tail_budget += pow2(-static_cast<long>(n));
  res.checks.push_back(check_ineq("sum of tail thresholds", ExtRat(tail_budget), "<", ExtRat(2)));
  res.seq = VectorSeq(std::move(out));
  res.verified = true;
  for (const auto& q : res.checks)
    if (!q.holds) res.verified = false;
  return res;
}

// ---------------------------------------------------------------------------
// Weak-star nullification: turn a nonnegative stored family into columns of
// point measures.  For each set A in the enumeration (all singletons first,
// then the given sets), pick the coordinate where sum_{n in A} x_n is
// largest (lowest such coordinate), and let measure mu_A assign to {n} the
// value x_n at that coordinate.  The output y_n lists mu_A({n}) across the
// enumeration; singleton entries guarantee the sup norm survives intact.

struct WStarResult {
  VectorSeq y;
  std::vector<FinSet> enumeration;
  std::vector<PointMeasure> measures;
  std::vector<Nat> argmax_coord;
};

inline WStarResult wstar_nullify(const VectorSeq& x, const std::vector<FinSet>& sets) {
  if (!x.nonneg()) throw DomainError("wstar_nullify expects nonnegative vectors");
  WStarResult res;
  for (std::size_t n = 0; n < x.size(); ++n) res.enumeration.push_back(FinSet{Nat(n)});
  for (const auto& a : sets) {
    if (!a.empty() && a.max() >= x.size())
      throw DomainError("wstar_nullify: set " + a.str() + " outside the stored family");
    res.enumeration.push_back(a);
  }
  for (const auto& a : res.enumeration) {
    SparseVec sum;
    for (Nat n : a) sum = sum + x.at(n);
    Nat best_k = 0;
    Rat best = 0;
    for (const auto& [k, v] : sum.entries())
      if (v > best) {  // strict keeps the lowest coordinate on ties
        best = v;
        best_k = k;
      }
    res.argmax_coord.push_back(best_k);
    std::map<Nat, Rat> w;
    for (Nat n : a) {
      const Rat& v = x.at(n).at(best_k);
      if (v != 0) w[n] = v;
    }
    res.measures.push_back(PointMeasure(std::move(w)));
  }
  std::vector<SparseVec> cols;
  for (std::size_t n = 0; n < x.size(); ++n) {
    std::map<Nat, Rat> c;
    for (std::size_t k = 0; k < res.measures.size(); ++k) {
      const Rat& v = res.measures[k].at(n);
      if (v != 0) c[k] = v;
    }
    cols.push_back(SparseVec(std::move(c)));
  }
  res.y = VectorSeq(std::move(cols));
  return res;
}

// ---------------------------------------------------------------------------
// Small-norm selection: pick elements whose point values fall under 2^-k at
// stage k; the certificate bound is the geometric sum, always below 2.

inline SelectorCertificate small_norm_selector(const ValueOracle& oracle, SetStream& stream,
                                               std::size_t length,
                                               std::size_t stage_budget = 4096) {
  SelectorCertificate cert;
  cert.route = "small-norm";
  cert.certified = true;
  std::vector<Nat> picks;
  Rat bound = 0;
  for (std::size_t k = 0; k < length; ++k) {
    const Rat threshold = pow2(-static_cast<long>(k));
    bool found = false;
    for (std::size_t scanned = 0; scanned < stage_budget; ++scanned) {
      auto e = stream.next();
      if (!e) break;
      ExtRat pv = oracle.point(*e);
      if (!(ExtRat(threshold) < pv)) {
        picks.push_back(*e);
        cert.evidence.push_back(check_ineq("point value at " + std::to_string(*e), pv,
                                           "<=", ExtRat(threshold)));
        found = true;
        break;
      }
    }
    if (!found) {
      cert.note = "stage " + std::to_string(k) + ": no element under " +
                  format_rat(threshold) + " within budget";
      cert.selected = FinSet(picks);
      return cert;
    }
    bound += threshold;
  }
  cert.selected = FinSet(std::move(picks));
  cert.bound = ExtRat(bound);
  cert.evidence.push_back(check_ineq("value of the selection", oracle.value(cert.selected),
                                     "<=", cert.bound));
  cert.evidence.push_back(check_ineq("bound", cert.bound, "<=", ExtRat(2)));
  cert.verified = cert.evidence_holds();
  return cert;
}

// ---------------------------------------------------------------------------
// Selection under an unbounded spec with small level sets.  Either the
// stream offers ever-smaller point values (sparse route, geometric bound) or
// some stage finds nothing, in which case the rejected elements all sit in a
// level set whose value the submeasure itself bounds (trapped route).

inline SelectorCertificate property_A_selector(const SubmeasureSpec& spec, SetStream& stream,
                                               std::size_t length,
                                               std::size_t stage_budget = 4096) {
  auto verdict = has_property_A(spec);
  if (verdict.state != PropertyAVerdict::Holds)
    throw DomainError("property_A_selector needs a spec with verified infinite total "
                      "and finite level sets; got: " +
                      verdict.detail);
  std::function<ExtRat(const Rat&)> level;
  if (auto* c = spec.get_if<ComputedSpec>()) level = c->level_value;
  if (auto* f = spec.get_if<FiltrationSpec>()) level = f->level_value;
  if (auto* c = spec.get_if<CoverSpec>()) level = c->level_value;

  SelectorCertificate cert;
  cert.certified = true;
  std::vector<Nat> picks;
  std::vector<Nat> scanned_all;
  Rat bound = 0;
  for (std::size_t k = 0; k < length; ++k) {
    const Rat threshold = pow2(-static_cast<long>(k));
    bool found = false;
    bool stream_dry = false;
    for (std::size_t scanned = 0; scanned < stage_budget; ++scanned) {
      auto e = stream.next();
      if (!e) {
        stream_dry = true;
        break;
      }
      scanned_all.push_back(*e);
      ExtRat pv = point_value(spec, *e);
      if (!(ExtRat(threshold) < pv)) {
        picks.push_back(*e);
        cert.evidence.push_back(check_ineq("point value at " + std::to_string(*e), pv,
                                           "<=", ExtRat(threshold)));
        found = true;
        break;
      }
    }
    if (found) {
      bound += threshold;
      continue;
    }
    if (stream_dry) {
      cert.route = "sparse";
      cert.note = "stream exhausted at stage " + std::to_string(k);
      cert.selected = FinSet(picks);
      return cert;  // inconclusive: not enough elements
    }
    // Trapped: everything this stage saw has point value above the
    // threshold, so it lies inside the level set at that threshold.
    ExtRat level_bound = level(threshold);
    if (level_bound.is_infinite()) {
      cert.route = "trapped";
      cert.note = "level oracle unbounded at " + format_rat(threshold);
      cert.selected = FinSet(picks);
      return cert;
    }
    std::vector<Nat> trapped;
    cert.evidence.clear();
    for (Nat e : scanned_all) {
      ExtRat pv = point_value(spec, e);
      if (ExtRat(threshold) < pv) {
        trapped.push_back(e);
        cert.evidence.push_back(check_ineq("trapped point " + std::to_string(e), pv, ">",
                                           ExtRat(threshold)));
      }
    }
    cert.route = "trapped";
    cert.selected = FinSet(std::move(trapped));
    cert.bound = level_bound;
    cert.evidence.push_back(check_ineq("value of the trapped prefix",
                                       eval(spec, cert.selected), "<=", cert.bound));
    cert.note = "all stage-" + std::to_string(k) + " candidates sit in the level set at " +
                format_rat(threshold);
    cert.verified = cert.evidence_holds();
    return cert;
  }
  cert.route = "sparse";
  cert.selected = FinSet(std::move(picks));
  cert.bound = ExtRat(bound);
  cert.evidence.push_back(check_ineq("value of the selection", eval(spec, cert.selected),
                                     "<=", cert.bound));
  cert.evidence.push_back(check_ineq("bound", cert.bound, "<=", ExtRat(2)));
  cert.verified = cert.evidence_holds();
  return cert;
}

// ---------------------------------------------------------------------------
// Greedy 1-homogeneous extraction under c0like_coloring: every accepted
// element dives below the bands of everything accepted before it.  The
// certificate bound is 2 (or the single norm when length is 1): each
// coordinate collects at most one entry per band depth, so the column sums
// stay under a geometric series.
//
// The coloring caches every candidate vector it touches, so feed this a
// stream that grows fast enough (geometric, say) rather than a dense scan.

inline SelectorCertificate c0like_selector(const VectorFamily& fam, SetStream& stream,
                                           std::size_t length,
                                           std::size_t scan_budget = 4096) {
  Coloring col = c0like_coloring(fam);
  SelectorCertificate cert;
  cert.route = "c0like";
  std::vector<Nat> H;
  std::size_t scanned = 0;
  while (H.size() < length && scanned < scan_budget) {
    auto e = stream.next();
    if (!e) break;
    ++scanned;
    bool fits = true;
    for (Nat h : H)
      if (col.at(h, *e) != 1) {
        fits = false;
        break;
      }
    if (fits) H.push_back(*e);
  }
  cert.selected = FinSet(H);
  if (H.size() < length) {
    cert.note = "found " + std::to_string(H.size()) + " of " + std::to_string(length) +
                " after scanning " + std::to_string(scanned) + " elements";
    return cert;
  }
  std::size_t pair_checks = 0;
  bool all_one = true;
  for (std::size_t i = 0; i < H.size(); ++i)
    for (std::size_t j = i + 1; j < H.size(); ++j, ++pair_checks)
      if (col.at(H[i], H[j]) != 1) all_one = false;
  cert.note = std::to_string(pair_checks) + " pair colors re-checked";
  for (Nat h : H)
    cert.evidence.push_back(check_ineq("norm of x_" + std::to_string(h),
                                       ExtRat(fam.at(h).norm_inf()), "<=", ExtRat(1)));
  cert.bound = (length == 1) ? ExtRat(fam.at(H[0]).norm_inf()) : ExtRat(2);
  cert.evidence.push_back(check_ineq("value of the selection", ExtRat(fam.eval(cert.selected)),
                                     "<=", cert.bound));
  cert.verified = all_one && cert.evidence_holds();
  return cert;
}

// ---------------------------------------------------------------------------
// Admissible-subset-respecting selection: grow H so that every admissible
// subset of H stays color 0 under schreier_c3.  The certificate bound is
// min(H) + 2.

inline SelectorCertificate schreier_selector(const VectorFamily& fam, Nat p,
                                             SetStream& stream, std::size_t length,
                                             std::size_t scan_budget = 4096) {
  SelectorCertificate cert;
  cert.route = "schreier";
  std::vector<Nat> H;
  std::size_t scanned = 0;
  std::size_t rejections = 0;

  // every admissible subset of pool that contains `must`, reported to `fn`
  auto for_each_admissible = [](const std::vector<Nat>& pool, Nat must, auto&& fn) {
    const std::size_t n = pool.size();
    for (std::size_t qi = 0; qi < n; ++qi) {
      const Nat q = pool[qi];
      if (q + 1 > n - qi) continue;  // not enough larger elements
      if (pool[qi] > must) break;    // min would exceed the required member
      // choose q elements among pool[qi+1..], containing `must` if must > q
      std::vector<Nat> rest(pool.begin() + qi + 1, pool.end());
      std::vector<std::size_t> idx;
      std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from,
                                                              std::size_t need) -> bool {
        if (need == 0) {
          std::vector<Nat> s{q};
          bool has_must = (q == must);
          for (std::size_t i : idx) {
            s.push_back(rest[i]);
            if (rest[i] == must) has_must = true;
          }
          if (has_must && !fn(SchreierElement(FinSet(std::move(s))))) return false;
          return true;
        }
        for (std::size_t i = from; i + need <= rest.size() + 1 && i < rest.size(); ++i) {
          idx.push_back(i);
          bool keep = rec(i + 1, need - 1);
          idx.pop_back();
          if (!keep) return false;
        }
        return true;
      };
      if (!rec(0, q)) return false;
    }
    return true;
  };

  while (H.size() < length && scanned < scan_budget) {
    auto e = stream.next();
    if (!e) break;
    ++scanned;
    std::vector<Nat> pool = H;
    pool.push_back(*e);  // H is increasing, e exceeds all of it
    bool ok = for_each_admissible(pool, *e, [&](const SchreierElement& s) {
      return schreier_c3(fam, p, s) == 0;
    });
    if (ok)
      H.push_back(*e);
    else
      ++rejections;
  }
  cert.selected = FinSet(H);
  if (H.size() < length) {
    cert.note = "found " + std::to_string(H.size()) + " of " + std::to_string(length) +
                "; " + std::to_string(rejections) + " rejections held large coordinates";
    return cert;
  }

  // full recheck over the final set
  bool all_zero = for_each_admissible(H, H.front(), [&](const SchreierElement& s) {
    return schreier_c3(fam, p, s) == 0;
  });
  cert.note = "admissible subsets of the selection re-checked; " +
              std::to_string(rejections) + " candidates rejected on the way";
  cert.bound = ExtRat(Rat(H.front() + 2));
  cert.evidence.push_back(check_ineq("value of the selection", ExtRat(fam.eval(cert.selected)),
                                     "<=", cert.bound));
  cert.verified = all_zero && cert.evidence_holds();
  cert.certified = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Perturbed-block selection: from a family with norms staying at or above
// alpha, pick indices and cut points so that each picked vector is within a
// fast geometric tolerance of a block (consecutive coordinate window), the
// windows are disjoint, and the accumulated relative error stays below 1/2.
// Tolerances follow the selection schedule exactly: the k-th pick (1-based)
// truncates its tail below alpha/2^(k+3) and the next pick's head below
// alpha/2^(k+4).

struct BPSelection {
  std::vector<Nat> picks;
  std::vector<Nat> cuts;  // cuts[k]: coordinates of block k live in [cuts[k-1], cuts[k])
  VectorSeq blocks;
  Rat alpha;
};

struct BPOptions {
  std::size_t stage_scan_budget = 4096;
  bool require_modulus = false;  // insist on certified (modulus-backed) scans
};

struct BPResult {
  BPSelection selection;
  SelectorCertificate certificate;
};

inline BPResult bp_select(const VectorFamily& fam, SetStream& stream, const Rat& alpha,
                          std::size_t length, const BPOptions& opts = {}) {
  if (!(alpha > 0)) throw DomainError("bp_select needs alpha > 0");
  if (length == 0) throw DomainError("bp_select needs a positive length");
  const bool certified_scan = fam.coord_modulus.has_value();
  if (opts.require_modulus && !certified_scan)
    throw DomainError("bp_select: modulus required but the family offers none");

  BPResult res;
  res.selection.alpha = alpha;
  SelectorCertificate& cert = res.certificate;
  cert.route = "bp";
  cert.certified = certified_scan;

  std::vector<SparseVec> kept;
  Nat prev_cut = 0;
  Rat max_norm = 0;

  // least n > lo with every coordinate >= n below tol in absolute value
  auto cut_after = [](const SparseVec& v, Nat lo, const Rat& tol) -> Nat {
    Nat cut = lo + 1;
    for (const auto& [k, val] : v.entries()) {
      Rat a = val < 0 ? Rat(-val) : val;
      if (!(a < tol) && k + 1 > cut) cut = k + 1;
    }
    return cut;
  };

  for (std::size_t k1 = 1; k1 <= length; ++k1) {
    const Rat tail_tol = alpha / pow2(static_cast<long>(k1) + 3);
    // pick: first stream element whose head (coords < prev_cut) is already
    // below the schedule of the previous step
    const Rat head_requirement =
        k1 == 1 ? Rat(0) : alpha / pow2(static_cast<long>(k1 - 1) + 4);
    std::optional<Nat> pick;
    SparseVec xv;
    std::optional<Nat> auto_accept_from;
    if (certified_scan && k1 > 1 && prev_cut > 0) {
      Nat bound = 0;
      for (Nat c = 0; c < prev_cut; ++c)
        bound = std::max(bound, (*fam.coord_modulus)(c, head_requirement));
      auto_accept_from = bound;
    }
    for (std::size_t scanned = 0; scanned < opts.stage_scan_budget; ++scanned) {
      auto e = stream.next();
      if (!e) break;
      SparseVec v = fam.at(*e);
      const Rat head = v.prefix_below(prev_cut).norm_inf();
      const bool head_ok = (k1 == 1) || head < head_requirement;
      if (head_ok) {
        if (!(v.norm_inf() >= alpha))
          throw DomainError("bp_select: selected index " + std::to_string(*e) +
                            " has norm below alpha");
        pick = *e;
        xv = std::move(v);
        if (k1 > 1)
          cert.evidence.push_back(check_ineq(
              "head of pick " + std::to_string(k1) + " below the schedule", ExtRat(head),
              "<", ExtRat(head_requirement)));
        break;
      }
      if (auto_accept_from && *e >= *auto_accept_from)
        throw DomainError("bp_select: coordinate modulus inconsistent at index " +
                          std::to_string(*e));
    }
    if (!pick) {
      cert.note = "no admissible pick at step " + std::to_string(k1) + " within budget";
      cert.selected = FinSet(res.selection.picks);
      return res;
    }

    const Nat cut = cut_after(xv, prev_cut, tail_tol);
    cert.evidence.push_back(check_ineq("tail of pick " + std::to_string(k1) + " beyond cut " +
                                           std::to_string(cut),
                                       ExtRat(xv.tail_from(cut).norm_inf()), "<",
                                       ExtRat(tail_tol)));

    SparseVec block = xv.slice(prev_cut, cut);
    const Rat err = (xv - block).norm_inf();
    const Rat derived_tol = alpha / pow2(static_cast<long>(k1) + 2);
    cert.evidence.push_back(check_ineq("distance of pick " + std::to_string(k1) +
                                           " to its block",
                                       ExtRat(err), "<=", ExtRat(derived_tol)));
    cert.evidence.push_back(check_ineq("block " + std::to_string(k1) + " norm",
                                       ExtRat(block.norm_inf()), ">=",
                                       ExtRat(alpha - derived_tol)));
    // the looser public form of the same control
    cert.evidence.push_back(check_ineq("pick " + std::to_string(k1) +
                                           " within the coarse tolerance",
                                       ExtRat(err), "<",
                                       ExtRat(alpha / pow2(static_cast<long>(k1) + 1))));

    res.selection.picks.push_back(*pick);
    res.selection.cuts.push_back(cut);
    kept.push_back(std::move(block));
    if (xv.norm_inf() > max_norm) max_norm = xv.norm_inf();
    prev_cut = cut;
  }

  // relative-error control: sum of ||x - y|| / ||y|| stays below 1/2
  std::vector<ExtRat> ratios;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const SparseVec x = fam.at(res.selection.picks[i]);
    const Rat err = (x - kept[i]).norm_inf();
    const Rat ynorm = kept[i].norm_inf();
    ratios.push_back(ExtRat(err / ynorm));
  }
  ExtRat ratio_sum = detail::balanced_sum(ratios, 0, ratios.size());
  cert.evidence.push_back(
      check_ineq("accumulated relative error", ratio_sum, "<", ExtRat(Rat(1, 2))));

  res.selection.blocks = VectorSeq(std::move(kept));
  cert.selected = FinSet(res.selection.picks);
  cert.bound = ExtRat(max_norm + alpha / 2);
  cert.evidence.push_back(check_ineq("value of the selection", ExtRat(fam.eval(cert.selected)),
                                     "<=", cert.bound));
  cert.verified = cert.evidence_holds();
  return res;
}

// ---------------------------------------------------------------------------
// Entry point: decide which selection applies.  First the scanned prefix
// must look norm-bounded (declared bound, or stabilization across the two
// halves of the window); then either norms dip low enough for the
// small-norm route, or they stay above a positive alpha and the block path
// runs.

struct TallOptions {
  std::optional<Rat> norm_bound;     // declared sup of the norms, if the caller has one
  std::size_t scan_budget = 512;     // elements inspected by the gate
  std::size_t stage_budget = 4096;   // per-stage scan inside the routes
};

inline SelectorCertificate tall_selector(const VectorFamily& fam,
                                         const std::function<SetStream()>& make_stream,
                                         std::size_t length, const TallOptions& opts = {}) {
  // Gate: norms over the scan window.
  SetStream gate = make_stream();
  std::vector<Nat> window = gate.take(opts.scan_budget);
  if (window.size() < length) {
    SelectorCertificate cert;
    cert.route = "rejected";
    cert.note = "stream yielded only " + std::to_string(window.size()) + " elements";
    return cert;
  }
  std::vector<Rat> norms;
  norms.reserve(window.size());
  for (Nat e : window) norms.push_back(fam.at(e).norm_inf());

  if (opts.norm_bound) {
    for (std::size_t i = 0; i < window.size(); ++i)
      if (norms[i] > *opts.norm_bound) {
        SelectorCertificate cert;
        cert.route = "rejected";
        cert.evidence.push_back(check_ineq("norm at index " + std::to_string(window[i]),
                                           ExtRat(norms[i]), "<=", ExtRat(*opts.norm_bound)));
        cert.note = "declared norm bound violated";
        return cert;
      }
  } else {
    // stabilization check: the second half must not outgrow the first
    Rat first_half_max = 0;
    const std::size_t half = window.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
      if (norms[i] > first_half_max) first_half_max = norms[i];
    for (std::size_t i = half; i < window.size(); ++i)
      if (norms[i] > first_half_max) {
        SelectorCertificate cert;
        cert.route = "rejected";
        cert.evidence.push_back(check_ineq(
            "late norm at index " + std::to_string(window[i]), ExtRat(norms[i]), "<=",
            ExtRat(first_half_max)));
        cert.note = "norms keep growing across the scan window; no finite bound in sight";
        return cert;
      }
  }

  // Route (i)/(ii)(a): greedy small norms.
  {
    SetStream s = make_stream();
    SelectorCertificate cert =
        small_norm_selector(oracle_from(fam), s, length, opts.stage_budget);
    if (cert.verified) {
      cert.route = "small-norm";
      return cert;
    }
  }

  // Route (ii)(b): norms bounded away from zero; block selection.
  Rat alpha = norms.front();
  for (const Rat& n : norms)
    if (n < alpha) alpha = n;
  if (!(alpha > 0)) {
    SelectorCertificate cert;
    cert.route = "rejected";
    cert.note = "zero-norm vectors present but the small-norm route failed";
    return cert;
  }
  SetStream s = make_stream();
  BPOptions bopts;
  bopts.stage_scan_budget = opts.stage_budget;
  BPResult r = bp_select(fam, s, alpha, length, bopts);
  r.certificate.route = "bp(alpha=" + format_rat(alpha) + ")";
  return r.certificate;
}

}  // namespace subm
