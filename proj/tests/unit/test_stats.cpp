#include "knotscope/error.hpp"
#include "knotscope/ingest.hpp"
#include "knotscope/stats.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace knotscope;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in);
}

const char* kSmall =
    "id,crossings,alternating,alexander,jones\n"
    "a,3,1,1:0,1:0\n"
    "b,4,1,1:0,1:1\n"
    "c,4,0,1:0,1:1\n"
    "d,5,0,2:0,1:1\n"
    "e,5,1,3:0,1:2\n";

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("multiplicity classes and histogram") {
  auto d = parse(kSmall);
  const InvariantKind alex[] = {InvariantKind::kAlexander};
  auto rep = multiplicity(d, alex);
  CHECK(rep.n == 5);
  CHECK(rep.distinct_count() == 3);
  CHECK(rep.unique_count() == 2);
  CHECK(rep.histogram == std::map<std::size_t, std::size_t>{{1, 2}, {3, 1}});
  CHECK(rep.unique_pct() == doctest::Approx(40.0));
  CHECK(class_lookup(rep, probe_key(alex, std::vector<std::string>{"1:0"})) ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(class_lookup(rep, probe_key(alex, std::vector<std::string>{"7:0"})).empty());

  const InvariantKind both[] = {InvariantKind::kAlexander, InvariantKind::kJones};
  auto fine = multiplicity(d, both);
  CHECK(fine.distinct_count() == 4);
  CHECK(fine.unique_count() == 3);
  CHECK(keyset_label(both) == "alexander+jones");
}

TEST_CASE("missing key is reported") {
  auto d = parse("id,alexander\na,1:0\n");
  const InvariantKind k[] = {InvariantKind::kJones};
  CHECK_THROWS_AS(multiplicity(d, k), MissingDataError);
}

TEST_CASE("filtration is cumulative and grouped") {
  auto d = parse(kSmall);
  std::vector<std::vector<InvariantKind>> sets{{InvariantKind::kAlexander}};
  auto rows = filtration_curves(d, sets, AlternatingMode::kAll);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].max_crossing == 3);
  CHECK(rows[0].n == 1);
  CHECK(rows[0].unique_pct == doctest::Approx(100));
  CHECK(rows[1].n == 3);
  CHECK(rows[1].distinct == 1);
  CHECK(rows[2].n == 5);
  CHECK(rows[2].distinct == 3);
  auto nonalt = filtration_curves(d, sets, AlternatingMode::kExclude);
  REQUIRE(nonalt.size() == 2);
  CHECK(nonalt[1].n == 2);
  CHECK(nonalt[1].unique == 2);
}

TEST_CASE("multiplicity is independent of the thread count") {
  std::ostringstream text;
  text << "id,alexander\n";
  for (int k = 0; k < 400; ++k) text << "k" << k << "," << (k * 7919) % 37 + 1 << ":0\n";
  auto d = parse(text.str());
  const InvariantKind k[] = {InvariantKind::kAlexander};
  auto a = multiplicity(d, k, 1), b = multiplicity(d, k, 9);
  CHECK(a.classes == b.classes);
  CHECK(a.histogram == b.histogram);
}

}
