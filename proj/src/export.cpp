#include "knotscope/export.hpp"

#include "detail/text.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace knotscope {
namespace {

using nlohmann::json;

// Non-negative integer, whether stored signed or unsigned.
bool is_count(const json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0); }

std::string join_items(const std::vector<std::string>& items) {
  std::string out = "invalid graph bundle:";
  for (const auto& i : items) out += "\n  - " + i;
  return out;
}

json coloring_to_json(const Coloring& c) {
  if (c.kind == Coloring::Kind::kScalar) return {{"kind", "scalar"}, {"values", c.scalar}};
  json values = json::array();
  for (const auto& dist : c.categorical) values.push_back(dist);
  return {{"kind", "categorical"}, {"values", std::move(values)}};
}

// Appends problems with one coloring to `items`.
void check_coloring(const std::string& name, const json& c, std::size_t nodes, std::vector<std::string>& items) {
  auto where = "coloring '" + name + "'";
  if (!c.is_object() || !c.contains("kind") || !c.contains("values") || !c["values"].is_array()) {
    items.push_back(where + ": needs 'kind' and a 'values' array");
    return;
  }
  const auto& values = c["values"];
  if (values.size() != nodes)
    items.push_back(where + ": " + std::to_string(values.size()) + " values for " + std::to_string(nodes) + " nodes");
  auto kind = c["kind"].is_string() ? c["kind"].get<std::string>() : "";
  if (kind == "scalar") {
    for (std::size_t k = 0; k < values.size(); ++k)
      if (!values[k].is_number()) items.push_back(where + ": value " + std::to_string(k) + " is not a number");
  } else if (kind == "categorical") {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto& dist = values[k];
      if (!dist.is_object()) {
        items.push_back(where + ": value " + std::to_string(k) + " is not a category map");
        continue;
      }
      double sum = 0;
      bool ok = true;
      for (const auto& [label, p] : dist.items()) {
        if (!p.is_number() || p.get<double>() < 0 || p.get<double>() > 1) ok = false;
        else sum += p.get<double>();
      }
      if (!ok) items.push_back(where + ": node " + std::to_string(k) + " has a proportion outside [0,1]");
      else if (std::abs(sum - 1.0) > 1e-9)
        items.push_back(where + ": node " + std::to_string(k) + " proportions sum to " + std::to_string(sum));
    }
  } else {
    items.push_back(where + ": kind must be 'scalar' or 'categorical'");
  }
}

}  // namespace

BundleValidationError::BundleValidationError(std::vector<std::string> items)
    : ValidationError(join_items(items)), items_(std::move(items)) {}

MemberPolicy MemberPolicy::parse(std::string_view text) {
  text = detail::trim(text);
  if (text == "full") return {};
  if (text.starts_with("capped:")) {
    auto k = detail::parse_int<std::size_t>(text.substr(7), "member cap");
    return {k};
  }
  throw ValidationError("member policy must be 'full' or 'capped:K', got '" + std::string(text) + "'");
}

std::string MemberPolicy::text() const { return cap ? "capped:" + std::to_string(*cap) : "full"; }

GraphBundle make_bundle(const BallMapperGraph& g, std::span<const std::string> row_ids,
                        std::vector<Coloring> colorings, BundleMeta meta, MemberPolicy policy) {
  if (row_ids.size() != g.cloud_rows) throw ValidationError("row id list does not match the graph's cloud");
  std::set<std::string> names;
  for (const auto& c : colorings) {
    if (c.size() != g.vertex_count())
      throw ValidationError("coloring '" + c.name + "' has " + std::to_string(c.size()) + " values for " +
                            std::to_string(g.vertex_count()) + " vertices");
    if (!names.insert(c.name).second) throw ValidationError("duplicate coloring name '" + c.name + "'");
  }
  std::sort(colorings.begin(), colorings.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  GraphBundle b;
  meta.cloud_rows = g.cloud_rows;
  if (meta.epsilon.empty()) meta.epsilon = g.epsilon.text();
  if (meta.cloud_id.empty()) meta.cloud_id = g.cloud_ref;
  b.meta = std::move(meta);
  b.policy = policy;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    BundleNode n{v, row_ids[g.landmarks[v]], g.covers[v].size(), {}, false};
    std::size_t keep = policy.cap ? std::min(*policy.cap, g.covers[v].size()) : g.covers[v].size();
    n.truncated = keep < g.covers[v].size();
    n.members.reserve(keep);
    for (std::size_t k = 0; k < keep; ++k) n.members.push_back(row_ids[g.covers[v][k]]);
    b.nodes.push_back(std::move(n));
  }
  for (const auto& e : g.edges) b.edges.push_back({e.source, e.target, e.overlap});
  b.colorings = std::move(colorings);
  b.provenance = json::object();
  return b;
}

json bundle_to_json(const GraphBundle& b) {
  json nodes = json::array();
  for (const auto& n : b.nodes)
    nodes.push_back({{"id", n.id}, {"landmark", n.landmark}, {"size", n.size}, {"members", n.members},
                     {"truncated", n.truncated}});
  json edges = json::array();
  for (const auto& e : b.edges) edges.push_back({{"source", e.source}, {"target", e.target}, {"overlap", e.overlap}});
  json colorings = json::object();
  for (const auto& c : b.colorings) colorings[c.name] = coloring_to_json(c);
  return {{"schema", kBundleSchema},
          {"graph",
           {{"cloud_id", b.meta.cloud_id},
            {"epsilon", b.meta.epsilon},
            {"kinds", b.meta.kinds},
            {"filter", b.meta.filter},
            {"cloud_rows", b.meta.cloud_rows},
            {"member_policy", b.policy.text()}}},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"colorings", std::move(colorings)},
          {"provenance", b.provenance.is_null() ? json::object() : b.provenance}};
}

std::string write_bundle(const GraphBundle& b) { return bundle_to_json(b).dump() + "\n"; }

std::vector<std::string> validate_bundle(const json& doc) {
  std::vector<std::string> items;
  if (!doc.is_object()) return {"document is not a JSON object"};
  if (!doc.contains("schema") || doc["schema"] != kBundleSchema) {
    items.push_back("schema version must be \"" + std::string(kBundleSchema) + "\"");
    return items;
  }
  for (auto key : {"graph", "nodes", "edges", "colorings"})
    if (!doc.contains(key)) items.push_back(std::string("missing '") + key + "'");
  if (!items.empty()) return items;

  const auto& graph = doc["graph"];
  bool capped = false;
  if (!graph.is_object()) {
    items.push_back("'graph' must be an object");
  } else {
    for (auto key : {"cloud_id", "epsilon", "filter", "member_policy"})
      if (!graph.contains(key) || !graph[key].is_string()) items.push_back(std::string("graph.") + key + " must be a string");
    if (!graph.contains("kinds") || !graph["kinds"].is_array()) items.push_back("graph.kinds must be an array");
    if (!graph.contains("cloud_rows") || !is_count(graph["cloud_rows"]))
      items.push_back("graph.cloud_rows must be a non-negative integer");
    if (graph.contains("member_policy") && graph["member_policy"].is_string()) {
      try {
        capped = MemberPolicy::parse(graph["member_policy"].get<std::string>()).cap.has_value();
      } catch (const Error& e) {
        items.push_back(std::string("graph.member_policy: ") + e.what());
      }
    }
  }

  const auto& nodes = doc["nodes"];
  std::size_t node_count = nodes.is_array() ? nodes.size() : 0;
  if (!nodes.is_array()) items.push_back("'nodes' must be an array");
  for (std::size_t k = 0; k < node_count; ++k) {
    const auto& n = nodes[k];
    auto where = "node " + std::to_string(k);
    if (!n.is_object()) {
      items.push_back(where + ": not an object");
      continue;
    }
    if (!n.contains("id") || !is_count(n["id"]) || n["id"].get<std::size_t>() != k)
      items.push_back(where + ": id must equal its position (dense 0..|V|-1)");
    if (!n.contains("landmark") || !n["landmark"].is_string()) items.push_back(where + ": landmark must be a string");
    bool members_ok = n.contains("members") && n["members"].is_array() &&
                      std::all_of(n["members"].begin(), n["members"].end(), [](const json& m) { return m.is_string(); });
    if (!members_ok) items.push_back(where + ": members must be an array of knot ids");
    if (!n.contains("size") || !is_count(n["size"]) || n["size"].get<std::size_t>() == 0) {
      items.push_back(where + ": size must be a positive integer");
    } else if (members_ok) {
      bool truncated = n.contains("truncated") && n["truncated"].is_boolean() && n["truncated"].get<bool>();
      auto size = n["size"].get<std::size_t>();
      auto listed = n["members"].size();
      if (!n.contains("truncated") || !n["truncated"].is_boolean()) items.push_back(where + ": truncated must be a boolean");
      if (truncated && !capped) items.push_back(where + ": truncated under the full member policy");
      if (truncated ? listed >= size : listed != size)
        items.push_back(where + ": " + std::to_string(listed) + " members listed for size " + std::to_string(size));
    }
  }

  const auto& edges = doc["edges"];
  if (!edges.is_array()) items.push_back("'edges' must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; edges.is_array() && k < edges.size(); ++k) {
    const auto& e = edges[k];
    auto where = "edge " + std::to_string(k);
    auto uint_field = [&e](const char* key) { return e.is_object() && e.contains(key) && is_count(e[key]); };
    if (!uint_field("source") || !uint_field("target") || !uint_field("overlap")) {
      items.push_back(where + ": source, target and overlap must be non-negative integers");
      continue;
    }
    auto s = e["source"].get<std::size_t>(), t = e["target"].get<std::size_t>();
    if (s >= node_count || t >= node_count)
      items.push_back(where + ": endpoint " + std::to_string(std::max(s, t)) + " is not a node of this " +
                      std::to_string(node_count) + "-node bundle");
    if (s >= t) items.push_back(where + ": source must be smaller than target");
    if (e["overlap"].get<std::size_t>() == 0) items.push_back(where + ": overlap must be at least 1");
    if (!seen.insert({s, t}).second) items.push_back(where + ": duplicate edge");
  }

  const auto& colorings = doc["colorings"];
  if (!colorings.is_object()) items.push_back("'colorings' must be an object");
  else
    for (const auto& [name, c] : colorings.items()) check_coloring(name, c, node_count, items);
  return items;
}

GraphBundle bundle_from_json(const json& doc) {
  auto items = validate_bundle(doc);
  if (!items.empty()) throw BundleValidationError(std::move(items));
  GraphBundle b;
  const auto& g = doc["graph"];
  b.meta.cloud_id = g["cloud_id"].get<std::string>();
  b.meta.epsilon = g["epsilon"].get<std::string>();
  b.meta.kinds = g["kinds"].get<std::vector<std::string>>();
  b.meta.filter = g["filter"].get<std::string>();
  b.meta.cloud_rows = g["cloud_rows"].get<std::size_t>();
  b.policy = MemberPolicy::parse(g["member_policy"].get<std::string>());
  for (const auto& n : doc["nodes"])
    b.nodes.push_back({n["id"].get<std::size_t>(), n["landmark"].get<std::string>(), n["size"].get<std::size_t>(),
                       n["members"].get<std::vector<std::string>>(), n["truncated"].get<bool>()});
  for (const auto& e : doc["edges"])
    b.edges.push_back({e["source"].get<std::size_t>(), e["target"].get<std::size_t>(), e["overlap"].get<std::size_t>()});
  for (const auto& [name, c] : doc["colorings"].items()) {
    Coloring col;
    col.name = name;
    if (c["kind"] == "scalar") {
      col.kind = Coloring::Kind::kScalar;
      col.scalar = c["values"].get<std::vector<double>>();
    } else {
      col.kind = Coloring::Kind::kCategorical;
      for (const auto& dist : c["values"]) col.categorical.push_back(dist.get<std::map<std::string, double>>());
    }
    b.colorings.push_back(std::move(col));
  }
  b.provenance = doc.contains("provenance") ? doc["provenance"] : json::object();
  return b;
}

GraphBundle read_bundle(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph bundle is not valid JSON: ") + e.what());
  }
  return bundle_from_json(doc);
}

BallMapperGraph graph_from_bundle(const GraphBundle& b, std::span<const std::string> row_ids) {
  if (b.policy.cap) throw ValidationError("cross-mapper coloring needs a bundle with full membership");
  std::unordered_map<std::string_view, std::size_t> row_of;
  for (std::size_t i = 0; i < row_ids.size(); ++i) row_of.emplace(row_ids[i], i);
  auto lookup = [&row_of](const std::string& id) {
    auto it = row_of.find(id);
    if (it == row_of.end()) throw ValidationError("bundle member '" + id + "' is not in the row id list");
    return it->second;
  };
  BallMapperGraph g;
  g.epsilon = Epsilon::parse(b.meta.epsilon);
  g.cloud_ref = b.meta.cloud_id;
  g.cloud_rows = row_ids.size();
  for (const auto& n : b.nodes) {
    g.landmarks.push_back(lookup(n.landmark));
    std::vector<std::size_t> cover;
    for (const auto& m : n.members) cover.push_back(lookup(m));
    std::sort(cover.begin(), cover.end());
    g.covers.push_back(std::move(cover));
  }
  for (const auto& e : b.edges) g.edges.push_back({e.source, e.target, e.overlap});
  return g;
}

}  // namespace knotscope
