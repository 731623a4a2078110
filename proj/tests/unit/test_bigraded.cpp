#include "knotscope/bigraded.hpp"
#include "knotscope/error.hpp"

#include <doctest.h>

using namespace knotscope;

TEST_SUITE("bigraded") {

TEST_CASE("support text round trip and ordering") {
  auto s = parse_support("1:3,9;z2:2,7;1:0,1;1:0,3;1:2,5");
  CHECK(to_text(s) == "1:0,1;1:0,3;1:2,5;z2:2,7;1:3,9");
  CHECK(parse_support(to_text(s)) == s);
  CHECK_THROWS_AS(parse_support("1:0"), ParseError);
  CHECK_THROWS_AS(parse_support("q:0,1"), ParseError);
}

TEST_CASE("trefoil diagonals") {
  // Integral Khovanov homology of the right-handed trefoil: Z at (0,1),
  // (0,3), (2,5), (3,9) and Z2 at (3,7).
  auto s = parse_support("1:0,1;1:0,3;1:2,5;1:3,9;z2:3,7");
  auto d = DiagonalSets::from_support(s);
  CHECK(d.rational == std::vector<int>{1, 3});
  CHECK(*d.z2 == std::vector<int>{1});
  CHECK(d.z4->empty());
  CHECK(to_text(s.poincare_polynomial()) == "1:1,0;1:3,0;1:5,2;1:9,3");
}

TEST_CASE("mirror moves free and torsion parts differently") {
  auto s = parse_support("1:0,1;1:0,3;1:2,5;1:3,9;z2:3,7");
  auto m = s.mirrored();
  CHECK(to_text(m) == "1:-3,-9;z2:-2,-7;1:-2,-5;1:0,-3;1:0,-1");
  CHECK(m.mirrored() == s);
  auto d = DiagonalSets::from_support(s);
  CHECK(DiagonalSets::from_support(m) == d.mirrored());
  CHECK(d.mirrored().rational == std::vector<int>{-3, -1});
  CHECK(*d.mirrored().z2 == std::vector<int>{-3});
}

TEST_CASE("diagonal lists") {
  CHECK(parse_diagonal_list("5;1;3") == std::vector<int>{1, 3, 5});
  CHECK(parse_diagonal_list("none").empty());
  CHECK(diagonal_list_text({}) == "none");
  CHECK(diagonal_list_text({-1, 3}) == "-1;3");
}

}
