#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "subm/colorings.hpp"
#include "subm/families.hpp"
#include "subm/schemes.hpp"

using namespace subm;

TEST_CASE("pair colorings are symmetric and refuse the diagonal") {
  auto c = partition_coloring([](Nat n) { return n / 3; });
  CHECK(c.at(0, 2) == 0);
  CHECK(c.at(2, 0) == 0);
  CHECK(c.at(2, 3) == 1);
  CHECK(c.at(3, 2) == 1);
  CHECK_THROWS_AS(c.at(4, 4), DomainError);
}

TEST_CASE("the rational enumeration starts 0, 1, 1/2, 1/3, 2/3, 1/4, 2/5, 3/5, 3/4") {
  const Rat expect[] = {Rat(0),    Rat(1),     Rat(1, 2), Rat(1, 3), Rat(2, 3),
                        Rat(1, 4), Rat(2, 5),  Rat(3, 5), Rat(3, 4)};
  for (Nat m = 0; m < 9; ++m) CHECK(sb_rational(m) == expect[m]);
}

TEST_CASE("the rational enumeration has no repeats and stays inside [0,1]") {
  std::set<Rat> seen;
  for (Nat m = 0; m < 300; ++m) {
    Rat r = sb_rational(m);
    CHECK(Rat(0) <= r);
    CHECK(r <= Rat(1));
    CHECK(seen.insert(r).second);
  }
}

TEST_CASE("order coloring matches the enumeration order") {
  auto c = sierpinski_coloring();
  CHECK(c.at(2, 3) == 0);  // 1/2 then 1/3: decreasing
  CHECK(c.at(3, 4) == 1);  // 1/3 then 2/3: increasing
  CHECK(c.at(0, 1) == 1);
  CHECK(c.at(4, 3) == c.at(3, 4));
}

TEST_CASE("pivot extraction returns a certified homogeneous set") {
  auto c = sierpinski_coloring();
  auto s = SetStream::iota(0);
  auto r = ramsey_extract(c, s, 5, 64);
  REQUIRE(r.ok);
  CHECK(r.hom.size() == 5);
  for (std::size_t i = 0; i < r.hom.size(); ++i)
    for (std::size_t j = i + 1; j < r.hom.size(); ++j)
      CHECK(c.at(r.hom[i], r.hom[j]) == r.color);

  auto s2 = SetStream::iota(0);
  auto tiny = ramsey_extract(c, s2, 0, 8);
  CHECK(tiny.ok);
  CHECK(tiny.hom.empty());

  auto s3 = SetStream::iota(0);
  auto starved = ramsey_extract(c, s3, 10, 10);
  CHECK(!starved.ok);
  CHECK(starved.largest_partial < 10);
  CHECK(!starved.note.empty());
}

TEST_CASE("homogeneity cover agrees with the partition oracle") {
  auto hom_base = [](const Coloring& c, const FinSet& s) {
    int seen = -1;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        int col = c.at(s[i], s[j]);
        if (seen < 0)
          seen = col;
        else if (col != seen)
          return false;
      }
    return true;
  };

  auto sp = sierpinski_coloring();
  FinSet window{0, 1, 2, 3, 4, 5, 6, 7};
  auto expect = oracle::cover_by_partitions(
      [&](const FinSet& s) { return hom_base(sp, s); }, window);
  REQUIRE(expect.has_value());
  CHECK(hom_cover_number(window, sp) == *expect);

  std::mt19937_64 rng(600613);
  for (int round = 0; round < 30; ++round) {
    // A random symmetric coloring on eight points.
    std::map<std::pair<Nat, Nat>, int> table;
    std::uniform_int_distribution<int> bit(0, 1);
    for (Nat i = 0; i < 8; ++i)
      for (Nat j = i + 1; j < 8; ++j) table[{i, j}] = bit(rng);
    Coloring c{[table](Nat n, Nat m) { return table.at({n, m}); }, "random"};

    auto want = oracle::cover_by_partitions(
        [&](const FinSet& s) { return hom_base(c, s); }, window);
    REQUIRE(want.has_value());
    CAPTURE(round);
    CHECK(hom_cover_number(window, c) == *want);
  }
}

TEST_CASE("homogeneity cover edge cases") {
  auto mono = partition_coloring([](Nat) { return 0; });  // everything color 0
  CHECK(hom_cover_number(FinSet{}, mono) == 0);
  CHECK(hom_cover_number(FinSet{5}, mono) == 1);
  CHECK(hom_cover_number(FinSet{1, 2, 9, 12}, mono) == 1);

  std::vector<Nat> big;
  for (Nat i = 0; i < 13; ++i) big.push_back(i);
  CHECK_THROWS_AS(hom_cover_number(FinSet(big), mono), CapExceeded);
}

TEST_CASE("first homogeneous set search is deterministic") {
  auto c = sierpinski_coloring();
  auto s1 = SetStream::iota(0);
  auto up = favors_witness(c, 1, 4, FinSet{}, s1);
  REQUIRE(up.has_value());
  CHECK(*up == FinSet{0, 2, 4, 8});

  auto s2 = SetStream::iota(0);
  auto dodged = favors_witness(c, 1, 4, FinSet{2}, s2);
  REQUIRE(dodged.has_value());
  CHECK(*dodged == FinSet{0, 3, 4, 8});

  auto s3 = SetStream::iota(0);
  auto down = favors_witness(c, 0, 3, FinSet{}, s3);
  REQUIRE(down.has_value());
  CHECK(*down == FinSet{1, 2, 3});

  auto s4 = SetStream::iota(0);
  CHECK(!favors_witness(c, 1, 3, FinSet{}, s4, 1).has_value());  // budget of one check
}

TEST_CASE("dyadic bands split [0,1] at the powers of two") {
  CHECK(dyadic_band(Rat(1)) == 0);
  CHECK(dyadic_band(Rat(1, 2)) == 0);
  CHECK(dyadic_band(Rat(1, 3)) == 1);
  CHECK(dyadic_band(Rat(1, 4)) == 1);
  CHECK(dyadic_band(Rat(1, 5)) == 2);
  CHECK(dyadic_band(Rat(-3, 4)) == 0);
  CHECK_THROWS_AS(dyadic_band(Rat(0)), DomainError);
  CHECK_THROWS_AS(dyadic_band(Rat(5, 4)), DomainError);
}

TEST_CASE("level partitions and level unions") {
  SparseVec x({{0, Rat(1)}, {1, Rat(1, 2)}, {2, Rat(1, 3)}, {3, Rat(1, 8)}, {4, Rat(-1, 4)}});
  auto lp = level_partition(x);
  REQUIRE(lp.bands.size() == 3);
  CHECK(lp.bands.at(0) == FinSet{0, 1});
  CHECK(lp.bands.at(1) == FinSet{2, 4});
  CHECK(lp.bands.at(2) == FinSet{3});

  CHECK(level_union(x, 0) == FinSet{0});
  CHECK(level_union(x, 1) == FinSet{0, 1});
  CHECK(level_union(x, 2) == FinSet{0, 1, 2, 4});
  CHECK(level_union(SparseVec{}, 3).empty());
}

TEST_CASE("band-diving coloring on the banded family") {
  auto fam = cj_family();
  auto c = c0like_coloring(fam);
  CHECK(c.at(1, 2) == 1);  // 1/4 at coordinate 0 dives below band 0
  CHECK(c.at(2, 3) == 0);  // both sit at 1/4 on coordinate 0
  CHECK(c.at(2, 4) == 1);
  CHECK(c.at(4, 2) == 1);
}

TEST_CASE("eventual-disjointness extraction strips a shared head") {
  std::vector<SparseVec> vecs;
  vecs.push_back(SparseVec({{0, Rat(1)}, {1, Rat(1, 2)}}));
  vecs.push_back(SparseVec({{0, Rat(1)}, {2, Rat(1, 2)}}));
  vecs.push_back(SparseVec({{0, Rat(1)}, {3, Rat(1, 2)}}));
  vecs.push_back(SparseVec({{5, Rat(1)}}));
  vecs.push_back(SparseVec({{6, Rat(1)}}));
  vecs.push_back(SparseVec({{7, Rat(1)}}));
  auto fam = family_from_seq(VectorSeq(std::move(vecs)), "shared-head");

  auto s1 = SetStream::iota(0);
  auto three = eventually_disjoint_extract(fam, 1, s1, 3, 6);
  REQUIRE(three.ok);
  CHECK(three.indices == FinSet{0, 1, 2});
  CHECK(three.p == 0);

  auto s2 = SetStream::iota(0);
  auto four = eventually_disjoint_extract(fam, 1, s2, 4, 6);
  REQUIRE(four.ok);
  CHECK(four.indices.size() == 4);

  auto s3 = SetStream::iota(0);
  auto hopeless = eventually_disjoint_extract(fam, 1, s3, 50, 6);
  CHECK(!hopeless.ok);
  CHECK(!hopeless.note.empty());
}

TEST_CASE("eventual-disjointness claim holds on the banded family") {
  auto fam = cj_family();
  // The greedy chain needs roughly geometric spacing: each new level set
  // must start past the previous one, which doubles the index.
  auto s = SetStream::iota(1);
  auto r = eventually_disjoint_extract(fam, 2, s, 5, 60);
  REQUIRE(r.ok);
  CHECK(r.indices == FinSet{1, 4, 10, 22, 46});
  CHECK(r.p == 0);
  for (std::size_t i = 0; i < r.indices.size(); ++i)
    for (std::size_t j = i + 1; j < r.indices.size(); ++j) {
      FinSet meet = set_intersection(level_union(fam.at(r.indices[i]), 2),
                                     level_union(fam.at(r.indices[j]), 2));
      if (!meet.empty()) CHECK(meet.max() <= r.p);
    }
}

TEST_CASE("admissible sets need size equal to minimum plus one") {
  CHECK(SchreierElement(FinSet{0}).q() == 0);
  CHECK(SchreierElement(FinSet{1, 5}).q() == 1);
  CHECK(SchreierElement(FinSet{2, 3, 7}).q() == 2);
  CHECK_THROWS_AS(SchreierElement(FinSet{1, 2, 3}), DomainError);
  CHECK_THROWS_AS(SchreierElement(FinSet{3, 4}), DomainError);
  CHECK_THROWS_AS(SchreierElement(FinSet{}), DomainError);
}

TEST_CASE("uniform-coordinate coloring of admissible sets") {
  auto fam = cj_family();
  // Threshold 1/4: coordinate 1 is at least 1/4 on exactly x_2, x_4, x_5.
  CHECK(schreier_c3(fam, 1, SchreierElement(FinSet{2, 4, 5})) == 1);
  CHECK(schreier_c3(fam, 1, SchreierElement(FinSet{1, 2})) == 1);
  CHECK(schreier_c3(fam, 1, SchreierElement(FinSet{2, 3, 4})) == 0);
  CHECK(schreier_c3(fam, 1, SchreierElement(FinSet{1, 5})) == 0);
  // Threshold 1/2: no coordinate stays that large across two vectors.
  CHECK(schreier_c3(fam, 0, SchreierElement(FinSet{1, 2})) == 0);
}
