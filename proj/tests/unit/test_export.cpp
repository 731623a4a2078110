#include "knotscope/error.hpp"
#include "knotscope/export.hpp"

#include <doctest.h>

using namespace knotscope;
using nlohmann::json;

namespace {

struct Fixture {
  PointCloud cloud{{0, 1, 2, 5, 6, 20}, 1, {"a", "b", "c", "d", "e", "f"}};
  BallMapperGraph graph = build_graph(cloud, build_net(cloud, Epsilon::parse("1")));

  GraphBundle bundle(MemberPolicy policy = {}) const {
    std::vector<Coloring> cols{
        color_scalar(graph, std::vector<double>{1, 2, 3, 4, 5, 6}, Aggregator::kMean, Transform::kIdentity, "val"),
        color_categorical(graph, std::vector<std::string>{"x", "y", "y", "x", "x", "z"}, "lab")};
    return make_bundle(graph, cloud.row_ids(), cols, {"sha256:00", "1", {"jones"}, "all", 0}, policy);
  }
};

std::vector<std::string> problems(json doc) {
  try {
    bundle_from_json(doc);
  } catch (const BundleValidationError& e) {
    return e.items();
  }
  return {};
}

bool mentions(const std::vector<std::string>& items, const std::string& text) {
  return std::any_of(items.begin(), items.end(), [&text](const auto& s) { return s.find(text) != std::string::npos; });
}

}  // namespace

TEST_SUITE("export") {

TEST_CASE("bundle content and round trip") {
  Fixture f;
  auto b = f.bundle();
  REQUIRE(b.nodes.size() == 4);
  CHECK(b.nodes[0].landmark == "a");
  CHECK(b.nodes[1].members == std::vector<std::string>{"b", "c"});
  CHECK(b.meta.cloud_rows == 6);
  CHECK(b.colorings[0].name == "lab");  // sorted by name
  auto text = write_bundle(b);
  CHECK(text.back() == '\n');
  auto back = read_bundle(text);
  CHECK(back == b);
  CHECK(write_bundle(back) == text);
  auto doc = json::parse(text);
  CHECK(doc["schema"] == "gbm/1");
  CHECK(doc["graph"]["member_policy"] == "full");
  CHECK(validate_bundle(doc).empty());
}

TEST_CASE("capped membership keeps sizes") {
  Fixture f;
  auto b = f.bundle(MemberPolicy::parse("capped:1"));
  CHECK(b.nodes[0].members.size() == 1);
  CHECK(b.nodes[0].size == 2);
  CHECK(b.nodes[0].truncated);
  CHECK_FALSE(b.nodes[3].truncated);
  CHECK(read_bundle(write_bundle(b)) == b);
  CHECK_THROWS_AS(graph_from_bundle(b, f.cloud.row_ids()), ValidationError);
  CHECK(MemberPolicy::parse("capped:7").text() == "capped:7");
  CHECK_THROWS(MemberPolicy::parse("capped:x"));
}

TEST_CASE("graph rebuilt from a bundle") {
  Fixture f;
  auto g = graph_from_bundle(f.bundle(), f.cloud.row_ids());
  CHECK(g.landmarks == f.graph.landmarks);
  CHECK(g.covers == f.graph.covers);
  CHECK(g.edges == f.graph.edges);
}

TEST_CASE("every violation is itemised") {
  Fixture f;
  auto doc = bundle_to_json(f.bundle());
  doc["nodes"][1]["id"] = 5;
  doc["nodes"][2]["size"] = 9;
  doc["edges"].push_back(json{{"source", 1}, {"target", 0}, {"overlap", 0}});
  doc["edges"].push_back(json{{"source", 0}, {"target", 7}, {"overlap", 1}});
  doc["colorings"]["val"]["values"].erase(0);
  doc["colorings"]["lab"]["values"][0]["x"] = 0.9;
  auto items = problems(doc);
  CHECK(mentions(items, "node 1: id"));
  CHECK(mentions(items, "node 2: 2 members listed for size 9"));
  CHECK(mentions(items, "source must be smaller"));
  CHECK(mentions(items, "overlap must be at least 1"));
  CHECK(mentions(items, "endpoint 7"));
  CHECK(mentions(items, "3 values for 4 nodes"));
  CHECK(mentions(items, "proportions sum"));
  CHECK(items.size() >= 7);
}

TEST_CASE("another schema version is refused before anything else") {
  Fixture f;
  auto doc = bundle_to_json(f.bundle());
  doc["schema"] = "gbm/2";
  doc["nodes"] = 3;
  auto items = problems(doc);
  REQUIRE(items.size() == 1);
  CHECK(mentions(items, "schema version"));
}

TEST_CASE("missing keys and malformed text") {
  auto items = problems(json{{"schema", "gbm/1"}});
  CHECK(mentions(items, "missing 'graph'"));
  CHECK(mentions(items, "missing 'nodes'"));
  CHECK_THROWS_AS(read_bundle("{not json"), ParseError);
}

TEST_CASE("coloring length must match the vertex count") {
  Fixture f;
  Coloring short_col{"short", Coloring::Kind::kScalar, {1.0}, {}};
  CHECK_THROWS_AS(make_bundle(f.graph, f.cloud.row_ids(), {short_col}, {}, {}), ValidationError);
  auto dup = color_scalar(f.graph, std::vector<double>(6, 1.0), Aggregator::kMean, Transform::kIdentity, "v");
  CHECK_THROWS_AS(make_bundle(f.graph, f.cloud.row_ids(), {dup, dup}, {}, {}), ValidationError);
}

}
