#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "subm/spec.hpp"

using namespace subm;

namespace {

SubmeasureSpec counting_table(Nat universe) {
  TableSpec t;
  t.universe = universe;
  for (Nat m = 0; m < (Nat(1) << universe); ++m)
    t.values.push_back(ExtRat(Rat(oracle::popcount_mask(m))));
  return SubmeasureSpec(std::move(t));
}

}  // namespace

TEST_CASE("table evaluation reads the bitmask") {
  auto spec = counting_table(4);
  CHECK(eval(spec, FinSet{}) == ExtRat(0));
  CHECK(eval(spec, FinSet{0, 2}) == ExtRat(2));
  CHECK(eval(spec, FinSet{0, 1, 2, 3}) == ExtRat(4));
  CHECK(point_value(spec, 3) == ExtRat(1));
  CHECK_THROWS_AS(eval(spec, FinSet{0, 4}), DomainError);  // outside the universe
}

TEST_CASE("table validation accepts lawful tables and pinpoints corruptions") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = oracle::random_table(seed, 4);
    CAPTURE(seed);
    CHECK(validate_table(t).empty());

    auto broken_m = oracle::corrupt_table(t, oracle::Corruption::Monotone, seed);
    CHECK(!validate_table(broken_m).empty());
    auto broken_s = oracle::corrupt_table(t, oracle::Corruption::Subadditive, seed);
    CHECK(!validate_table(broken_s).empty());
    auto broken_e = oracle::corrupt_table(t, oracle::Corruption::EmptySet, seed);
    REQUIRE(!validate_table(broken_e).empty());
    CHECK(validate_table(broken_e).front().kind == TableViolation::EmptySet);
  }
}

TEST_CASE("sup of measures takes the largest measure value") {
  SupMeasuresSpec s;
  s.measures.push_back(PointMeasure({{0, Rat(1, 2)}, {1, Rat(1, 2)}}));
  s.measures.push_back(PointMeasure({{2, Rat(1)}}));
  SubmeasureSpec spec(std::move(s));
  CHECK(eval(spec, FinSet{0, 1}) == ExtRat(1));
  CHECK(eval(spec, FinSet{0, 2}) == ExtRat(1));
  CHECK(eval(spec, FinSet{0}) == ExtRat(Rat(1, 2)));
  CHECK(eval(spec, FinSet{}) == ExtRat(0));
  CHECK(point_value(spec, 2) == ExtRat(1));
}

TEST_CASE("vector-sequence evaluation matches the brute-force subset scan") {
  std::mt19937_64 rng(20240817);
  for (int round = 0; round < 40; ++round) {
    std::vector<SparseVec> vecs;
    const std::size_t count = 2 + rng() % 7;
    for (std::size_t i = 0; i < count; ++i) {
      std::map<Nat, Rat> c;
      const std::size_t nz = 1 + rng() % 4;
      for (std::size_t j = 0; j < nz; ++j) {
        const Nat k = rng() % 6;
        const long num = long(rng() % 9) - 4;
        if (num != 0) c[k] = Rat(num, 1 + long(rng() % 4));
      }
      vecs.push_back(SparseVec(std::move(c)));
    }
    VectorSeq seq(vecs);
    std::vector<Nat> all;
    for (Nat i = 0; i < count; ++i) all.push_back(i);
    FinSet idx(all);
    CAPTURE(round);
    CHECK(seq.eval(idx) == oracle::brute_seq_eval([&](Nat n) { return vecs[n]; }, idx));
  }
}

TEST_CASE("filtration evaluation and budget accounting") {
  FiltrationSpec f;
  f.name = "max-plus-one";
  f.member = [](Nat n, const FinSet& a) { return a.empty() || a.max() <= n; };
  f.search_budget = 4;
  SubmeasureSpec spec(std::move(f));
  CHECK(eval(spec, FinSet{}) == ExtRat(0));
  CHECK(eval(spec, FinSet{0}) == ExtRat(1));
  CHECK(eval(spec, FinSet{2, 3}) == ExtRat(4));
  CHECK_THROWS_AS(eval(spec, FinSet{10}), BudgetExhausted);

  auto out = try_eval(spec, FinSet{10});
  CHECK(!out.exact);
  CHECK(out.lower_bound == Rat(5));  // searched n = 0..4 without success

  auto ok = try_eval(spec, FinSet{1});
  CHECK(ok.exact);
  CHECK(ok.value == ExtRat(2));
}

TEST_CASE("cover evaluation is an exact minimum") {
  CoverSpec c;
  c.name = "pairs";
  c.in_base = [](const FinSet& f) { return f.size() <= 2; };
  SubmeasureSpec spec(std::move(c));
  CHECK(eval(spec, FinSet{}) == ExtRat(0));
  CHECK(eval(spec, FinSet{4}) == ExtRat(1));
  CHECK(eval(spec, FinSet{1, 5, 9}) == ExtRat(2));
  CHECK(eval(spec, FinSet{1, 2, 3, 4, 5}) == ExtRat(3));

  CoverSpec missing;
  missing.name = "no-singletons";
  missing.in_base = [](const FinSet& f) { return f.size() == 2; };
  SubmeasureSpec bad(std::move(missing));
  CHECK_THROWS_AS(eval(bad, FinSet{1, 2}), DomainError);

  CoverSpec capped;
  capped.name = "tiny-cap";
  capped.in_base = [](const FinSet& f) { return f.size() <= 1; };
  capped.size_cap = 3;
  SubmeasureSpec cap_spec(std::move(capped));
  CHECK_THROWS_AS(eval(cap_spec, FinSet{1, 2, 3, 4}), CapExceeded);
}

TEST_CASE("sup combination flattens measure families") {
  SupMeasuresSpec a;
  a.measures.push_back(PointMeasure({{0, Rat(1)}}));
  SupMeasuresSpec b;
  b.measures.push_back(PointMeasure({{1, Rat(2)}}));
  auto combined = sup_combine({SubmeasureSpec(a), SubmeasureSpec(b)});
  CHECK(combined.kind() == "sup_measures");
  CHECK(eval(combined, FinSet{0, 1}) == ExtRat(2));

  auto mixed = sup_combine({SubmeasureSpec(a), counting_table(3)});
  CHECK(mixed.kind() == "sup");
  CHECK(eval(mixed, FinSet{0, 1, 2}) == ExtRat(3));
  CHECK(eval(mixed, FinSet{0}) == ExtRat(1));
}

TEST_CASE("sum combination splits along blocks and keeps the measure form") {
  SupMeasuresSpec a;
  a.measures.push_back(PointMeasure({{0, Rat(1, 2)}, {1, Rat(1, 2)}}));
  a.measures.push_back(PointMeasure({{0, Rat(1)}}));
  SupMeasuresSpec b;
  b.measures.push_back(PointMeasure({{2, Rat(1, 3)}, {3, Rat(2, 3)}}));
  auto block = [](std::size_t i, Nat m) { return i == 0 ? m <= 1 : (m == 2 || m == 3); };
  auto spec = sum_combine({SubmeasureSpec(a), SubmeasureSpec(b)}, block);
  CHECK(spec.kind() == "sum");
  CHECK(eval(spec, FinSet{0, 1, 2, 3}) == ExtRat(2));
  CHECK(eval(spec, FinSet{0, 2}) == ExtRat(1) + ExtRat(Rat(1, 3)));
  CHECK(eval(spec, FinSet{2, 3}) == ExtRat(1));
  CHECK(eval(spec, FinSet{}) == ExtRat(0));

  // the flat family carried along evaluates identically
  const auto* node = spec.get_if<SumSpec>();
  REQUIRE(node != nullptr);
  REQUIRE(node->combined.has_value());
  for (const FinSet& f : {FinSet{0, 1, 2, 3}, FinSet{0, 2}, FinSet{1}, FinSet{3}}) {
    Rat best = 0;
    for (const auto& mu : *node->combined) best = std::max(best, mu.value(f));
    CHECK(eval(spec, f) == ExtRat(best));
  }

  // a part whose measures leak outside the block is rejected
  SupMeasuresSpec leak;
  leak.measures.push_back(PointMeasure({{9, Rat(1)}}));
  CHECK_THROWS_AS(
      sum_combine({SubmeasureSpec(a), SubmeasureSpec(leak)}, block), DomainError);
}

TEST_CASE("evaluation stays monotone and subadditive across spec kinds") {
  std::vector<SubmeasureSpec> specs;
  specs.push_back(counting_table(5));
  {
    SupMeasuresSpec s;
    s.measures.push_back(PointMeasure({{0, Rat(1, 2)}, {2, Rat(1, 3)}}));
    s.measures.push_back(PointMeasure({{1, Rat(1)}, {4, Rat(1, 5)}}));
    specs.push_back(SubmeasureSpec(std::move(s)));
  }
  {
    CoverSpec c;
    c.name = "pairs";
    c.in_base = [](const FinSet& f) { return f.size() <= 2; };
    specs.push_back(SubmeasureSpec(std::move(c)));
  }
  std::mt19937_64 rng(7);
  for (const auto& spec : specs) {
    for (int round = 0; round < 60; ++round) {
      const Nat am = rng() % 32, bm = rng() % 32;
      FinSet a = FinSet::from_mask(am), b = FinSet::from_mask(bm);
      ExtRat va = eval(spec, a), vb = eval(spec, b);
      ExtRat vu = eval(spec, set_union(a, b));
      CHECK(va <= vu);
      CHECK(vu <= va + vb);
      if (a.is_subset_of(b)) CHECK(va <= vb);
    }
  }
}

TEST_CASE("symmetric-difference distance") {
  auto spec = counting_table(5);
  FinSet a{0, 1}, b{1, 2}, c{3};
  CHECK(symdiff_metric(spec, a, a) == ExtRat(0));
  CHECK(symdiff_metric(spec, a, b) == ExtRat(2));
  CHECK(symdiff_metric(spec, a, b) == symdiff_metric(spec, b, a));
  CHECK(symdiff_metric(spec, a, c) <=
        symdiff_metric(spec, a, b) + symdiff_metric(spec, b, c));
  // translating both arguments cannot change the distance
  CHECK(symdiff_metric(spec, symmetric_difference(a, c), symmetric_difference(b, c)) ==
        symdiff_metric(spec, a, b));
}

TEST_CASE("prefix diagnostics track partial sums and tails") {
  auto spec = counting_table(5);  // counting measure on {0..4}
  SetStream s = SetStream::from_sorted({0, 1, 2, 3, 4});
  auto rep = sum_exh_diagnostics(spec, s, 8);  // asks past the end on purpose
  CHECK(rep.consumed == 5);
  CHECK(rep.stream_exhausted);
  REQUIRE(!rep.rows.empty());
  const auto& last = rep.rows.back();
  CHECK(last.count == 5);
  CHECK(last.partial_sum == ExtRat(5));
  CHECK(last.tail == ExtRat(0));
  for (const auto& row : rep.rows)
    CHECK(row.partial_sum + row.tail >= ExtRat(Rat(row.count)));
}
