#include <catch2/catch_amalgamated.hpp>

#include "subm/rational.hpp"

using namespace subm;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("6/8") == Rat(3, 4));  // normalized on construction
  CHECK(parse_rat("0") == Rat(0));
  CHECK(format_rat(Rat(3, 4)) == "3/4");
  CHECK(format_rat(Rat(8, 4)) == "2");
  CHECK(format_rat_slash(Rat(2)) == "2/1");
  CHECK(format_rat(parse_rat("100000000000000000000/3")) == "100000000000000000000/3");

  CHECK_THROWS_AS(parse_rat(""), SchemaError);
  CHECK_THROWS_AS(parse_rat("1.5"), SchemaError);
  CHECK_THROWS_AS(parse_rat("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rat("1/-2"), SchemaError);
  CHECK_THROWS_AS(parse_rat("x"), SchemaError);
}

TEST_CASE("pow2 is exact in both directions") {
  CHECK(pow2(0) == Rat(1));
  CHECK(pow2(10) == Rat(1024));
  CHECK(pow2(-3) == Rat(1, 8));
  CHECK(pow2(-80) * pow2(80) == Rat(1));
}

TEST_CASE("extended rationals order with infinity on top") {
  ExtRat inf = ExtRat::infinity();
  CHECK(ExtRat(1) < inf);
  CHECK(!(inf < inf));
  CHECK(inf == inf);
  CHECK(inf + ExtRat(5) == inf);
  CHECK(ExtRat(Rat(1, 2)) + ExtRat(Rat(1, 3)) == ExtRat(Rat(5, 6)));
  CHECK(min(ExtRat(2), inf) == ExtRat(2));
  CHECK(max(ExtRat(2), inf).is_infinite());
  CHECK(inf.str() == "inf");
  CHECK(ExtRat(Rat(3, 4)).str() == "3/4");
  CHECK(ExtRat(2).str_slash() == "2/1");

  CHECK_THROWS_AS(ExtRat(Rat(-1)), DomainError);
  CHECK_THROWS_AS(inf.finite(), DomainError);
  CHECK(parse_extrat("inf").is_infinite());
  CHECK(parse_extrat("7/2") == ExtRat(Rat(7, 2)));
}
