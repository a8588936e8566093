#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracles.hpp"
#include "subm/pathology.hpp"

using namespace subm;

namespace {

// Universe {0,1,2}: empty set 0, the whole set 2, everything in between 1.
SubmeasureSpec three_point() {
  TableSpec t;
  t.universe = 3;
  for (Nat m = 0; m < 8; ++m) {
    Nat k = oracle::popcount_mask(m);
    t.values.push_back(ExtRat(Rat(k == 0 ? 0 : (k == 3 ? 2 : 1))));
  }
  return SubmeasureSpec(std::move(t));
}

SubmeasureSpec counting_table(Nat universe) {
  TableSpec t;
  t.universe = universe;
  for (Nat m = 0; m < (Nat(1) << universe); ++m)
    t.values.push_back(ExtRat(Rat(oracle::popcount_mask(m))));
  return SubmeasureSpec(std::move(t));
}

}  // namespace

TEST_CASE("hull of the three-point example is 3/2 with a verified certificate") {
  auto spec = three_point();
  auto h = hat_phi(spec, FinSet{0, 1, 2});
  CHECK(h.value == Rat(3, 2));
  CHECK(h.verified);
  CHECK(h.witness.total() == Rat(3, 2));
  CHECK(h.witness.dominated_by([&](const FinSet& b) { return eval(spec, b); }));
  CHECK(!h.dual.empty());

  // The uniform measure w = (1/2, 1/2, 1/2) is the unique optimum here.
  for (Nat x : FinSet{0, 1, 2}) CHECK(h.witness.value(FinSet{x}) == Rat(1, 2));
}

TEST_CASE("hull edge cases: empty set, singletons, caps, infinities") {
  auto spec = three_point();
  auto empty = hat_phi(spec, FinSet{});
  CHECK(empty.value == Rat(0));
  CHECK(empty.verified);

  auto single = hat_phi(spec, FinSet{1});
  CHECK(single.value == Rat(1));
  CHECK(single.verified);

  HatCaps tight;
  tight.max_set = 2;
  CHECK_THROWS_AS(hat_phi(spec, FinSet{0, 1, 2}, tight), CapExceeded);

  ComputedSpec c;
  c.name = "inf-on-5";
  c.eval_fn = [](const FinSet& f) {
    return f.contains(5) ? ExtRat::infinity() : ExtRat(Rat(f.size()));
  };
  SubmeasureSpec inf_spec(std::move(c));
  CHECK_THROWS_AS(hat_phi(inf_spec, FinSet{2, 5}), DomainError);
}

TEST_CASE("hull agrees with the vertex-enumeration oracle on random tables") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto t = oracle::random_table(seed, 4);
    CAPTURE(seed);
    REQUIRE(validate_table(t).empty());
    auto value_of_mask = [&](Nat m) { return t.values[m].finite(); };
    Rat expect = oracle::hull_by_vertices(value_of_mask, 4);

    SubmeasureSpec spec(t);
    auto h = hat_phi(spec, FinSet{0, 1, 2, 3});
    CHECK(h.value == expect);
    CHECK(h.verified);
    CHECK(h.witness.dominated_by([&](const FinSet& b) { return eval(spec, b); }));
  }
}

TEST_CASE("hull agrees with the oracle on proper subsets too") {
  for (std::uint64_t seed = 500; seed < 515; ++seed) {
    auto t = oracle::random_table(seed, 4);
    CAPTURE(seed);
    SubmeasureSpec spec(t);
    FinSet a{0, 2, 3};
    auto h = hat_phi(spec, a);
    auto value_of_local = [&](Nat local) {
      return eval(spec, FinSet::from_mask(local, a.elements())).finite();
    };
    CHECK(h.value == oracle::hull_by_vertices(value_of_local, 3));
    CHECK(h.verified);
  }
}

TEST_CASE("suprema of measures are measure-attained: degree one across random pools") {
  std::mt19937_64 rng(987654);
  for (int round = 0; round < 25; ++round) {
    SupMeasuresSpec s;
    std::uniform_int_distribution<int> count(1, 3), mass(0, 4);
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
      std::map<Nat, Rat> w;
      for (Nat x = 0; x < 5; ++x) w[x] = Rat(mass(rng), 4);
      s.measures.push_back(PointMeasure(std::move(w)));
    }
    SubmeasureSpec spec(std::move(s));
    auto rep = pathology_degree(spec, FinSet{0, 1, 2, 3, 4}, 3);
    CAPTURE(round);
    CHECK(rep.degree == Rat(1));
    CHECK(!rep.witness_set.has_value());
    CHECK(rep.all_verified);
  }
}

TEST_CASE("degree scan pins the three-point witness") {
  auto spec = three_point();
  auto rep = pathology_degree(spec, FinSet{0, 1, 2}, 3);
  CHECK(rep.degree == Rat(4, 3));
  REQUIRE(rep.witness_set.has_value());
  CHECK(*rep.witness_set == FinSet{0, 1, 2});
  CHECK(rep.witness_value == ExtRat(2));
  CHECK(rep.witness_hull == Rat(3, 2));
  CHECK(rep.sets_scanned == 7);
  CHECK(rep.skipped_infinite == 0);
  CHECK(rep.skipped_zero == 0);
  CHECK(rep.all_verified);

  auto verdict = integer_pathology_criterion(spec, *rep.witness_set);
  CHECK(verdict.state == CriterionVerdict::Fired);
}

TEST_CASE("degree scan skips infinite and hull-zero sets but counts them") {
  ComputedSpec c;
  c.name = "zero-and-inf";
  c.eval_fn = [](const FinSet& f) {
    if (f.contains(2)) return ExtRat::infinity();
    return ExtRat(Rat(f.without(0).size()));  // element 0 carries no mass
  };
  SubmeasureSpec spec(std::move(c));
  auto rep = pathology_degree(spec, FinSet{0, 1, 2}, 2);
  // Scanned: {0} {1} {2} {0,1} {0,2} {1,2}.  Sets containing 2 are infinite;
  // {0} has hull zero; {1} and {0,1} have ratio one.
  CHECK(rep.sets_scanned == 6);
  CHECK(rep.skipped_infinite == 3);
  CHECK(rep.skipped_zero == 1);
  CHECK(rep.degree == Rat(1));
}

TEST_CASE("degree scan honours the hull cap") {
  auto spec = counting_table(4);
  HatCaps tight;
  tight.max_set = 3;
  CHECK_THROWS_AS(pathology_degree(spec, FinSet{0, 1, 2, 3}, 4, tight), CapExceeded);
  auto rep = pathology_degree(spec, FinSet{0, 1, 2, 3}, 3, tight);
  CHECK(rep.degree == Rat(1));
}

TEST_CASE("integer criterion: fired, not fired, inapplicable") {
  auto pathological = three_point();
  auto fired = integer_pathology_criterion(pathological, FinSet{0, 1, 2});
  CHECK(fired.state == CriterionVerdict::Fired);
  CHECK(fired.value == ExtRat(2));
  REQUIRE(fired.co_values.size() == 3);
  for (const auto& [x, v] : fired.co_values) CHECK(v == ExtRat(1));

  // Counting measure: co-singletons drop strictly but the value equals the
  // cardinality, so nothing is forced.
  auto counting = counting_table(3);
  auto flat = integer_pathology_criterion(counting, FinSet{0, 1, 2});
  CHECK(flat.state == CriterionVerdict::NotFired);

  // A pair inside the three-point example: value 1, co-singletons 1 and 1.
  auto pair = integer_pathology_criterion(pathological, FinSet{0, 1});
  CHECK(pair.state == CriterionVerdict::NotFired);

  // Singletons are too small for the test to say anything.
  auto single = integer_pathology_criterion(pathological, FinSet{0});
  CHECK(single.state == CriterionVerdict::NotFired);

  // Non-integer values make the test inapplicable rather than false.
  TableSpec t;
  t.universe = 2;
  t.values = {ExtRat(0), ExtRat(Rat(1, 2)), ExtRat(Rat(1, 2)), ExtRat(Rat(3, 4))};
  REQUIRE(validate_table(t).empty());
  auto frac = integer_pathology_criterion(SubmeasureSpec(std::move(t)), FinSet{0, 1});
  CHECK(frac.state == CriterionVerdict::Inapplicable);
}

TEST_CASE("minimal witness search walks size-major and respects its budget") {
  auto spec = three_point();
  FinSet pool{0, 1, 2};

  auto w0 = minimal_witness(spec, 0, pool, 100);
  REQUIRE(w0.witness.has_value());
  CHECK(w0.witness->empty());

  auto w1 = minimal_witness(spec, 1, pool, 100);
  REQUIRE(w1.witness.has_value());
  CHECK(*w1.witness == FinSet{0});

  auto w2 = minimal_witness(spec, 2, pool, 100);
  REQUIRE(w2.witness.has_value());
  CHECK(*w2.witness == FinSet{0, 1, 2});
  // Three singleton pre-checks, six smaller subsets, the triple, and its
  // three co-singletons.
  CHECK(w2.evals_used == 13);

  auto starved = minimal_witness(spec, 2, pool, 3);
  CHECK(starved.budget_hit);
  CHECK(!starved.witness.has_value());

  auto unreachable = minimal_witness(spec, 5, pool, 100);
  CHECK(!unreachable.witness.has_value());
  CHECK(!unreachable.budget_hit);

  TableSpec t;
  t.universe = 2;
  t.values = {ExtRat(0), ExtRat(Rat(1, 2)), ExtRat(Rat(1, 2)), ExtRat(1)};
  REQUIRE(validate_table(t).empty());
  CHECK_THROWS_AS(minimal_witness(SubmeasureSpec(std::move(t)), 1, FinSet{0, 1}, 100),
                  DomainError);
}
