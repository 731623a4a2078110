#pragma once

#include "knotscope/ballmapper.hpp"
#include "knotscope/error.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knotscope {

inline constexpr std::string_view kBundleSchema = "gbm/1";

struct BundleNode {
  std::size_t id = 0;
  std::string landmark;
  /// Cover cardinality, also when members are truncated.
  std::size_t size = 0;
  std::vector<std::string> members;
  bool truncated = false;
  friend bool operator==(const BundleNode&, const BundleNode&) = default;
};

struct BundleEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t overlap = 0;
  friend bool operator==(const BundleEdge&, const BundleEdge&) = default;
};

struct BundleMeta {
  std::string cloud_id;
  std::string epsilon;
  std::vector<std::string> kinds;
  std::string filter = "all";
  std::size_t cloud_rows = 0;
  friend bool operator==(const BundleMeta&, const BundleMeta&) = default;
};

/// Full membership, or at most `cap` member ids per node.
struct MemberPolicy {
  std::optional<std::size_t> cap;
  static MemberPolicy parse(std::string_view text);  // "full" or "capped:K"
  std::string text() const;
  friend bool operator==(const MemberPolicy&, const MemberPolicy&) = default;
};

struct GraphBundle {
  BundleMeta meta;
  MemberPolicy policy;
  std::vector<BundleNode> nodes;
  std::vector<BundleEdge> edges;
  /// Sorted by name on output.
  std::vector<Coloring> colorings;
  /// Free-form run description, carried through unchanged.
  nlohmann::json provenance;
  friend bool operator==(const GraphBundle&, const GraphBundle&) = default;
};

/// Every violated rule of a bundle, one message per item.
class BundleValidationError : public ValidationError {
 public:
  explicit BundleValidationError(std::vector<std::string> items);
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
};

/// ValidationError when a coloring does not cover every vertex.
GraphBundle make_bundle(const BallMapperGraph& g, std::span<const std::string> row_ids,
                        std::vector<Coloring> colorings, BundleMeta meta, MemberPolicy policy);

/// Canonical document: sorted keys, shortest round-trip number formatting,
/// trailing newline.
std::string write_bundle(const GraphBundle& b);
nlohmann::json bundle_to_json(const GraphBundle& b);

/// Parses and validates; BundleValidationError lists every problem found.
GraphBundle read_bundle(std::string_view text);
GraphBundle bundle_from_json(const nlohmann::json& doc);

/// Problems in a bundle (empty when valid).
std::vector<std::string> validate_bundle(const nlohmann::json& doc);

/// Rebuilds the graph part of a bundle (landmark and member rows resolved
/// through `row_ids`). Requires full membership.
BallMapperGraph graph_from_bundle(const GraphBundle& b, std::span<const std::string> row_ids);

}  // namespace knotscope
