#include "knotscope/error.hpp"
#include "knotscope/ingest.hpp"
#include "knotscope/vectorize.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace knotscope;

namespace {

const std::filesystem::path kFixtures = KNOTSCOPE_FIXTURE_DIR;

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in);
}

}  // namespace

TEST_SUITE("vectorize") {

TEST_CASE("one-variable window and coordinates") {
  auto d = parse("id,jones\na,1:1;1:3;-1:4\nb,1:-2;-1:-1;1:0;-1:1;1:2\n");
  const InvariantKind k[] = {InvariantKind::kJones};
  auto spec = compute_spec(d, k);
  REQUIRE(spec.blocks.size() == 1);
  CHECK(spec.blocks[0].min1 == -2);
  CHECK(spec.blocks[0].max1 == 4);
  CHECK(spec.dimension() == 7);
  auto c = embed(d, spec);
  CHECK(std::vector<int>(c.row(0).begin(), c.row(0).end()) == std::vector<int>{0, 0, 0, 1, 0, 1, -1});
  CHECK(std::vector<int>(c.row(1).begin(), c.row(1).end()) == std::vector<int>{1, -1, 1, -1, 1, 0, 0});
  CHECK(squared_distance(c.row(0), c.row(1)) == 10);
}

TEST_CASE("blocks concatenate with weights and two-variable layout") {
  auto d = parse("id,alexander,khovanov\na,1:-1;-1:0;1:1,\"1:1,0;1:3,0\"\nb,1:0,\"2:-1,-1\"\n");
  const InvariantKind k[] = {InvariantKind::kAlexander, InvariantKind::kKhovanov};
  const int w[] = {1, 3};
  auto spec = compute_spec(d, k, w);
  CHECK(spec.blocks[1].offset == 3);
  // quantum -1..3, homological -1..0: 5 x 2
  CHECK(spec.blocks[1].dimension() == 10);
  // coordinates are global: block offset plus local index
  CHECK(*spec.blocks[1].coordinate(Exponent2{3, 0}) == 12);
  CHECK(spec.blocks[1].exponent_at(12) == Exponent2{3, 0});
  auto c = embed(d, spec);
  CHECK(c.row(0)[3 + 5] == 3);  // (1,0) weighted
  CHECK(c.row(1)[3 + 0] == 6);  // (-1,-1) coefficient 2, weight 3
}

TEST_CASE("stale spec and missing data") {
  auto small = parse("id,jones\na,1:0;1:1\n");
  auto big = parse("id,jones\nb,1:-3\n");
  const InvariantKind k[] = {InvariantKind::kJones};
  auto spec = compute_spec(small, k);
  CHECK_THROWS_AS(embed(big, spec), StaleSpecError);
  auto none = parse("id,alexander\nc,1:0\n");
  CHECK_THROWS_AS(compute_spec(none, k), MissingDataError);
}

TEST_CASE("coordinate bound") {
  auto d = parse("id,jones\na,16777215:0\nb,16777216:0\n");
  const InvariantKind k[] = {InvariantKind::kJones};
  auto spec = compute_spec(d, k);
  CHECK_THROWS_AS(embed(d, spec), DomainError);
  auto ok = parse("id,jones\na,16777215:0\nb,-16777215:0\n");
  auto c = embed(ok, compute_spec(ok, k));
  CHECK(squared_distance(c.row(0), c.row(1)) == std::int64_t(33554430) * 33554430);
}

TEST_CASE("cloud save and load round trip") {
  auto d = load_dataset(kFixtures / "standard_knots.csv");
  const InvariantKind k[] = {InvariantKind::kJones, InvariantKind::kKhovanov};
  auto c = embed(d, compute_spec(d, k));
  auto path = std::filesystem::temp_directory_path() / "knotscope_unit_cloud.csv";
  save_cloud(c, path);
  auto back = load_cloud(path);
  CHECK(back == c);
  std::filesystem::remove(path);
  std::filesystem::remove(sidecar_path(path));
}

}
