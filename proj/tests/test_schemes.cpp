#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "subm/schemes.hpp"

using namespace subm;

TEST_CASE("pairing walks the anti-diagonals") {
  CHECK(PairingPartition::pair(0, 0) == 0);
  CHECK(PairingPartition::pair(1, 0) == 1);
  CHECK(PairingPartition::pair(0, 1) == 2);
  CHECK(PairingPartition::pair(2, 0) == 3);
  CHECK(PairingPartition::pair(1, 1) == 4);
  CHECK(PairingPartition::pair(0, 2) == 5);
  CHECK(PairingPartition::pair(3, 0) == 6);
  CHECK(PairingPartition::pair(4, 0) == 10);
}

TEST_CASE("pairing and unpairing are mutually inverse") {
  for (Nat m = 0; m < 5000; ++m) {
    auto [n, k] = PairingPartition::unpair(m);
    CHECK(PairingPartition::pair(n, k) == m);
  }
  for (Nat n = 0; n < 60; ++n)
    for (Nat k = 0; k < 60; ++k) {
      auto [n2, k2] = PairingPartition::unpair(PairingPartition::pair(n, k));
      CHECK(n2 == n);
      CHECK(k2 == k);
    }
}

TEST_CASE("block prefixes list the documented members") {
  CHECK(PairingPartition::block_prefix(0, 5) == FinSet{0, 2, 5, 9, 14});
  CHECK(PairingPartition::block_prefix(1, 4) == FinSet{1, 4, 8, 13});
  CHECK(PairingPartition::block_prefix(2, 3) == FinSet{3, 7, 12});
  CHECK(PairingPartition::block_prefix(3, 2) == FinSet{6, 11});
  CHECK(PairingPartition::block_prefix(4, 1) == FinSet{10});
  CHECK(PairingPartition::block_of(14) == 0);
  CHECK(PairingPartition::index_in_block(14) == 4);
}

TEST_CASE("blocks tile the naturals without overlap") {
  // Count how many of 0..1999 fall in blocks 0..79; every element must land
  // in exactly one block, and the per-block memberships must be consistent.
  std::vector<int> hits(2000, 0);
  for (Nat n = 0; n < 80; ++n)
    for (Nat k = 0;; ++k) {
      Nat m = PairingPartition::pair(n, k);
      if (m >= 2000) break;
      ++hits[m];
      CHECK(PairingPartition::block_of(m) == n);
    }
  for (Nat m = 0; m < 2000; ++m) {
    if (PairingPartition::block_of(m) < 80) CHECK(hits[m] == 1);
  }
}

TEST_CASE("block streams enumerate in ascending order") {
  auto s = PairingPartition::block_stream(2);
  CHECK(s.take(5) == std::vector<Nat>{3, 7, 12, 18, 25});
}

TEST_CASE("every full run has value n+1 in both variants") {
  for (SubBlockVariant v : {SubBlockVariant::A, SubBlockVariant::B}) {
    SubBlockScheme sch(v);
    for (Nat n = 0; n < 8; ++n)
      for (Nat k = 0; k < 6; ++k)
        CHECK(Rat(sch.run_size(n, k)) * sch.point_mass(n, k) == Rat(n + 1));
  }
}

TEST_CASE("uniform variant: constant run sizes, dyadic masses") {
  SubBlockScheme a(SubBlockVariant::A);
  CHECK(a.run_size(0, 3) == 1);
  CHECK(a.run_size(1, 0) == 4);
  CHECK(a.run_size(2, 5) == 12);
  CHECK(a.run_size(3, 1) == 32);
  CHECK(a.point_mass(2, 5) == Rat(1, 4));
  CHECK(a.run_start(2, 3) == 36);
  CHECK(a.run_of_index(2, 35) == 2);
  CHECK(a.run_of_index(2, 36) == 3);
  CHECK(a.run_set(1, 0) == FinSet{1, 4, 8, 13});
  CHECK(a.name() == "subblocks-a");
}

TEST_CASE("stretching variant: run k gains k extra columns") {
  SubBlockScheme b(SubBlockVariant::B);
  CHECK(b.run_size(0, 0) == 1);
  CHECK(b.run_size(0, 1) == 2);
  CHECK(b.run_size(0, 2) == 3);
  CHECK(b.point_mass(0, 2) == Rat(1, 3));
  CHECK(b.run_start(0, 3) == 6);  // 3*4/2
  CHECK(b.run_set(0, 2) == FinSet{9, 14, 20});
  CHECK(b.name() == "subblocks-b");

  for (Nat n = 0; n < 4; ++n)
    for (Nat k = 0; k < 6; ++k) {
      CHECK(b.run_start(n, k + 1) == b.run_start(n, k) + b.run_size(n, k));
      CHECK(b.run_of_index(n, b.run_start(n, k)) == k);
      CHECK(b.run_of_index(n, b.run_start(n, k) + b.run_size(n, k) - 1) == k);
    }
}

TEST_CASE("cell lookup agrees with the run layout") {
  for (SubBlockVariant v : {SubBlockVariant::A, SubBlockVariant::B}) {
    SubBlockScheme sch(v);
    for (Nat n = 0; n < 3; ++n)
      for (Nat k = 0; k < 4; ++k) {
        Nat m = PairingPartition::pair(n, sch.run_start(n, k));
        auto cell = sch.cell_of(m);
        CHECK(cell.block == n);
        CHECK(cell.run == k);
        CHECK(cell.mass == sch.point_mass(n, k));
      }
  }
}

TEST_CASE("thin diagonal keeps the first n+1 members of block n") {
  CHECK(ThinDiagonal::contains(0));
  CHECK(ThinDiagonal::contains(1));
  CHECK(!ThinDiagonal::contains(2));
  CHECK(ThinDiagonal::contains(4));
  CHECK(!ThinDiagonal::contains(5));
  CHECK(ThinDiagonal::contains(12));  // (2,2) sits on the boundary k == n
  CHECK(!ThinDiagonal::contains(13));

  CHECK(ThinDiagonal::slice(2) == FinSet{3, 7, 12});
  CHECK(ThinDiagonal::prefix_by_block(2) == FinSet{0, 1, 3, 4, 7, 12});

  auto s = ThinDiagonal::stream();
  CHECK(s.take(8) == std::vector<Nat>{0, 1, 3, 4, 6, 7, 10, 11});

  // Against the definition, for a long prefix.
  for (Nat m = 0; m < 3000; ++m) {
    auto [n, k] = PairingPartition::unpair(m);
    CHECK(ThinDiagonal::contains(m) == (k <= n));
  }
}
