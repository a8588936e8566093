#pragma once
// JSON input and output.  Specs come in as {"kind": ...} objects; every
// rational travels as a string ("p", "p/q", or "inf") so nothing is ever
// rounded.  Unknown fields are rejected rather than ignored.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subm/finset.hpp"
#include "subm/ideals.hpp"
#include "subm/measure.hpp"
#include "subm/pathology.hpp"
#include "subm/rational.hpp"
#include "subm/selectors.hpp"
#include "subm/spec.hpp"

namespace subm {

using nlohmann::json;

namespace jsondetail {

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) throw SchemaError(where + ": unknown field '" + key + "'");
  }
}

inline const json& require_field(const json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + name + "'");
  return *it;
}

inline Nat get_nat(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<Nat>();
  if (j.is_number_integer() && j.get<long long>() >= 0)
    return static_cast<Nat>(j.get<long long>());
  throw SchemaError(where + ": expected a nonnegative integer");
}

inline Rat get_rat(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Rat(j.get<Nat>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw SchemaError(where + ": expected a rational as a string");
}

inline ExtRat get_extrat(const json& j, const std::string& where) {
  if (j.is_string()) return parse_extrat(j.get<std::string>());
  return ExtRat(get_rat(j, where));
}

}  // namespace jsondetail

inline FinSet finset_from_json(const json& j, const std::string& where = "set") {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of naturals");
  std::vector<Nat> xs;
  for (const auto& e : j) xs.push_back(jsondetail::get_nat(e, where));
  return FinSet(std::move(xs));
}

inline json finset_to_json(const FinSet& f) {
  json a = json::array();
  for (Nat x : f) a.push_back(x);
  return a;
}

inline PointMeasure measure_from_json(const json& j, const std::string& where = "measure") {
  if (!j.is_object()) throw SchemaError(where + ": expected {coordinate: mass}");
  std::map<Nat, Rat> w;
  for (const auto& [key, val] : j.items()) {
    Nat k;
    try {
      std::size_t pos = 0;
      k = std::stoull(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw SchemaError(where + ": bad coordinate '" + key + "'");
    }
    w[k] = jsondetail::get_rat(val, where);
  }
  return PointMeasure(std::move(w));
}

inline json measure_to_json(const PointMeasure& m) {
  json o = json::object();
  for (const auto& [k, v] : m.masses()) o[std::to_string(k)] = format_rat(v);
  return o;
}

inline SparseVec sparsevec_from_json(const json& j, const std::string& where = "vector") {
  if (!j.is_object()) throw SchemaError(where + ": expected {coordinate: value}");
  std::map<Nat, Rat> c;
  for (const auto& [key, val] : j.items()) {
    Nat k;
    try {
      std::size_t pos = 0;
      k = std::stoull(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw SchemaError(where + ": bad coordinate '" + key + "'");
    }
    Rat v = jsondetail::get_rat(val, where);
    if (v != 0) c[k] = std::move(v);
  }
  return SparseVec(std::move(c));
}

inline json sparsevec_to_json(const SparseVec& v) {
  json o = json::object();
  for (const auto& [k, val] : v.entries()) o[std::to_string(k)] = format_rat(val);
  return o;
}

// Registry of specs constructed in code and addressable by name.
inline SubmeasureSpec named_spec(const std::string& name) {
  if (name == "phi0") {
    // three points; every nonempty proper subset has value 1, the whole
    // space has value 2
    TableSpec t;
    t.universe = 3;
    t.values.assign(8, ExtRat(1));
    t.values[0] = ExtRat(0);
    t.values[7] = ExtRat(2);
    return SubmeasureSpec(std::move(t));
  }
  if (name == "fin-empty.sup") return fin_empty_sup();
  if (name == "fin-empty.filtration") return fin_empty_filtration();
  if (name == "block-cover") return block_cover();
  if (name == "ed.sup") return ed_sup();
  if (name == "ed.cover") return ed_cover();
  if (name == "ed.psi") return ed_psi_spec();
  if (name == "summable-a") return summable_example(SubBlockVariant::A).spec;
  if (name == "summable-b") return summable_example(SubBlockVariant::B).spec;
  throw SchemaError("unknown named spec '" + name + "'");
}

inline SubmeasureSpec spec_from_json(const json& j, const std::string& where = "spec") {
  using namespace jsondetail;
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const json& kj = require_field(j, "kind", where);
  if (!kj.is_string()) throw SchemaError(where + ": 'kind' must be a string");
  const std::string kind = kj.get<std::string>();

  if (kind == "table") {
    require_keys(j, {"kind", "universe", "values"}, where);
    TableSpec t;
    t.universe = get_nat(require_field(j, "universe", where), where + ".universe");
    if (t.universe > kTableUniverseCap)
      throw CapExceeded(where + ": table universe exceeds " +
                        std::to_string(kTableUniverseCap));
    const json& vals = require_field(j, "values", where);
    if (!vals.is_object()) throw SchemaError(where + ".values: expected an object");
    t.values.assign(std::size_t(1) << t.universe, ExtRat(0));
    std::vector<bool> seen(t.values.size(), false);
    for (const auto& [key, val] : vals.items()) {
      Nat mask = 0;
      std::istringstream in(key);
      Nat x;
      while (in >> x) {
        if (x >= t.universe)
          throw SchemaError(where + ".values: point " + std::to_string(x) +
                            " outside the universe");
        mask |= Nat(1) << x;
      }
      if (!in.eof()) throw SchemaError(where + ".values: bad subset key '" + key + "'");
      if (seen[mask]) throw SchemaError(where + ".values: subset '" + key + "' repeated");
      seen[mask] = true;
      t.values[mask] = get_extrat(val, where + ".values");
    }
    for (std::size_t m = 0; m < seen.size(); ++m)
      if (!seen[m])
        throw SchemaError(where + ".values: missing subset (mask " + std::to_string(m) + ")");
    return SubmeasureSpec(std::move(t));
  }
  if (kind == "sup_measures") {
    require_keys(j, {"kind", "measures"}, where);
    const json& ms = require_field(j, "measures", where);
    if (!ms.is_array() || ms.empty())
      throw SchemaError(where + ".measures: expected a nonempty array");
    SupMeasuresSpec s;
    for (const auto& m : ms) s.measures.push_back(measure_from_json(m, where + ".measures"));
    return SubmeasureSpec(std::move(s));
  }
  if (kind == "vector_seq") {
    require_keys(j, {"kind", "vectors"}, where);
    const json& vs = require_field(j, "vectors", where);
    if (!vs.is_array()) throw SchemaError(where + ".vectors: expected an array");
    std::vector<SparseVec> seq;
    for (const auto& v : vs) seq.push_back(sparsevec_from_json(v, where + ".vectors"));
    return SubmeasureSpec(VectorSeqSpec{VectorSeq(std::move(seq))});
  }
  if (kind == "named") {
    require_keys(j, {"kind", "name"}, where);
    const json& nj = require_field(j, "name", where);
    if (!nj.is_string()) throw SchemaError(where + ".name: expected a string");
    return named_spec(nj.get<std::string>());
  }
  if (kind == "filtration") {
    // filtrations are function-backed, so they are selected by name
    require_keys(j, {"kind", "name", "budget"}, where);
    const json& nj = require_field(j, "name", where);
    if (!nj.is_string()) throw SchemaError(where + ".name: expected a string");
    Nat budget = 4096;
    if (auto it = j.find("budget"); it != j.end())
      budget = get_nat(*it, where + ".budget");
    if (nj.get<std::string>() == "fin-empty") return fin_empty_filtration(budget);
    throw SchemaError(where + ": unknown filtration '" + nj.get<std::string>() + "'");
  }
  if (kind == "cover") {
    require_keys(j, {"kind", "name"}, where);
    const json& nj = require_field(j, "name", where);
    if (!nj.is_string()) throw SchemaError(where + ".name: expected a string");
    const std::string name = nj.get<std::string>();
    if (name == "ed") return ed_cover();
    if (name == "block") return block_cover();
    throw SchemaError(where + ": unknown cover '" + name + "'");
  }
  if (kind == "sup") {
    require_keys(j, {"kind", "parts"}, where);
    const json& ps = require_field(j, "parts", where);
    if (!ps.is_array() || ps.empty())
      throw SchemaError(where + ".parts: expected a nonempty array");
    std::vector<SubmeasureSpec> parts;
    for (std::size_t i = 0; i < ps.size(); ++i)
      parts.push_back(spec_from_json(ps[i], where + ".parts[" + std::to_string(i) + "]"));
    return sup_combine(std::move(parts));
  }
  if (kind == "sum") {
    require_keys(j, {"kind", "parts", "blocks"}, where);
    const json& ps = require_field(j, "parts", where);
    const json& bs = require_field(j, "blocks", where);
    if (!ps.is_array() || ps.empty())
      throw SchemaError(where + ".parts: expected a nonempty array");
    if (!bs.is_array() || bs.size() != ps.size())
      throw SchemaError(where + ".blocks: need one block per part");
    std::vector<SubmeasureSpec> parts;
    for (std::size_t i = 0; i < ps.size(); ++i)
      parts.push_back(spec_from_json(ps[i], where + ".parts[" + std::to_string(i) + "]"));
    std::vector<FinSet> blocks;
    for (std::size_t i = 0; i < bs.size(); ++i)
      blocks.push_back(finset_from_json(bs[i], where + ".blocks[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t k = i + 1; k < blocks.size(); ++k)
        if (!set_intersection(blocks[i], blocks[k]).empty())
          throw SchemaError(where + ".blocks: blocks " + std::to_string(i) + " and " +
                            std::to_string(k) + " overlap");
    auto contains = [blocks](std::size_t i, Nat m) {
      return i < blocks.size() && blocks[i].contains(m);
    };
    return sum_combine(std::move(parts), std::move(contains));
  }
  throw SchemaError(where + ": unknown kind '" + kind + "'");
}

inline SubmeasureSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return spec_from_json(j, path);
}

// ---------------------------------------------------------------------------
// Result serialization.

inline json outcome_to_json(const EvalOutcome& o) {
  json j;
  j["exact"] = o.exact;
  if (o.exact)
    j["value"] = o.value.str();
  else {
    j["lower_bound"] = format_rat(o.lower_bound);
    j["note"] = o.note;
  }
  return j;
}

inline json hat_to_json(const HatPhiResult& h) {
  json j;
  j["value"] = format_rat(h.value);
  j["witness"] = measure_to_json(h.witness);
  j["verified"] = h.verified;
  j["lp_rounds"] = h.lp_rounds;
  j["lp_pivots"] = h.lp_pivots;
  json dual = json::array();
  for (const auto& [s, y] : h.dual) {
    json row;
    row["set"] = finset_to_json(s);
    row["multiplier"] = format_rat(y);
    dual.push_back(std::move(row));
  }
  j["dual"] = std::move(dual);
  return j;
}

inline json criterion_to_json(const CriterionVerdict& v) {
  json j;
  j["state"] = v.state == CriterionVerdict::Fired        ? "fired"
               : v.state == CriterionVerdict::NotFired   ? "not-fired"
                                                         : "inapplicable";
  j["detail"] = v.detail;
  j["value"] = v.value.str();
  json co = json::array();
  for (const auto& [n, val] : v.co_values) {
    json row;
    row["dropped"] = n;
    row["value"] = val.str();
    co.push_back(std::move(row));
  }
  j["co_values"] = std::move(co);
  return j;
}

inline json pathology_to_json(const PathologyReport& r) {
  json j;
  j["degree"] = format_rat_slash(r.degree);
  j["sets_scanned"] = r.sets_scanned;
  j["skipped_infinite"] = r.skipped_infinite;
  j["skipped_zero"] = r.skipped_zero;
  j["scan"] = r.scan;
  j["all_verified"] = r.all_verified;
  if (r.witness_set) {
    j["witness_set"] = finset_to_json(*r.witness_set);
    j["witness_value"] = r.witness_value.str();
    j["witness_hull"] = format_rat(r.witness_hull);
  }
  if (r.witness_measure) j["witness_measure"] = measure_to_json(*r.witness_measure);
  return j;
}

inline json certificate_to_json(const SelectorCertificate& c) {
  json j;
  j["selected"] = finset_to_json(c.selected);
  j["bound"] = c.bound.str_slash();
  j["verified"] = c.verified;
  j["certified"] = c.certified;
  j["route"] = c.route;
  if (!c.note.empty()) j["note"] = c.note;
  json ev = json::array();
  for (const auto& q : c.evidence) {
    json row;
    row["label"] = q.label;
    row["lhs"] = q.lhs.str();
    row["rel"] = q.rel;
    row["rhs"] = q.rhs.str();
    row["holds"] = q.holds;
    ev.push_back(std::move(row));
  }
  j["evidence"] = std::move(ev);
  return j;
}

inline json property_a_to_json(const PropertyAVerdict& v) {
  json j;
  j["state"] = v.state == PropertyAVerdict::Holds   ? "holds"
               : v.state == PropertyAVerdict::Fails ? "fails"
                                                    : "inconclusive";
  j["detail"] = v.detail;
  json levels = json::array();
  for (const auto& [eps, val] : v.levels) {
    json row;
    row["epsilon"] = format_rat(eps);
    row["value"] = val.str();
    levels.push_back(std::move(row));
  }
  j["levels"] = std::move(levels);
  return j;
}

}  // namespace subm
