#pragma once

#include "knotscope/poly.hpp"
#include "knotscope/vectorize.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knotscope {

/// Positive rational ball radius. Cover tests compare exact integer squared
/// distances against floor(ε²), which is equivalent to d ≤ ε for integer
/// clouds.
class Epsilon {
 public:
  Epsilon() = default;
  explicit Epsilon(Rational value);
  /// Accepts "100", "225/2" or a decimal such as "1.1" (read exactly).
  static Epsilon parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  /// floor(ε²), saturated at INT64_MAX.
  std::int64_t squared_floor() const noexcept { return squared_floor_; }
  double to_double() const;
  /// "p" or "p/q" in lowest terms.
  std::string text() const;

  friend bool operator==(const Epsilon& a, const Epsilon& b) { return a.value_ == b.value_; }
  friend auto operator<=>(const Epsilon& a, const Epsilon& b) {
    return a.value_ < b.value_ ? std::strong_ordering::less
                               : (b.value_ < a.value_ ? std::strong_ordering::greater
                                                      : std::strong_ordering::equal);
  }

 private:
  Rational value_{1};
  std::int64_t squared_floor_ = 1;
};

struct EpsilonNet {
  Epsilon epsilon;
  /// Row indices of the landmarks in selection order (ascending).
  std::vector<std::size_t> landmarks;
};

/// Greedy net: rows are scanned in cloud order and a row becomes a landmark
/// iff it is farther than ε from every landmark chosen so far.
EpsilonNet build_net(const PointCloud& cloud, const Epsilon& epsilon, unsigned threads = 1);

struct GraphEdge {
  std::size_t source = 0;  // source < target
  std::size_t target = 0;
  std::size_t overlap = 0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
  friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

/// Vertex v is the closed ball around row landmarks[v]; covers[v] lists the
/// covered rows in ascending order. Edges are sorted by (source, target).
struct BallMapperGraph {
  Epsilon epsilon;
  std::string cloud_ref;
  std::size_t cloud_rows = 0;
  std::vector<std::size_t> landmarks;
  std::vector<std::vector<std::size_t>> covers;
  std::vector<GraphEdge> edges;

  std::size_t vertex_count() const noexcept { return landmarks.size(); }
  friend bool operator==(const BallMapperGraph&, const BallMapperGraph&) = default;
};

/// Exact ball memberships and overlap edges. Candidate landmarks are pruned
/// with pivot distances (triangle inequality, conservative float margin);
/// every membership decision is the exact integer test.
BallMapperGraph build_graph(const PointCloud& cloud, const EpsilonNet& net, unsigned threads = 1);

/// Checks the cover and separation properties exactly; throws IntegrityError
/// naming the first violation.
void verify_net(const PointCloud& cloud, const EpsilonNet& net);

enum class Aggregator { kMean, kStd, kMin, kMax, kFractionTrue };
enum class Transform { kIdentity, kAbs, kLog1pAbs, kMod4 };
Aggregator parse_aggregator(std::string_view text);
Transform parse_transform(std::string_view text);
std::string_view name(Aggregator a);
std::string_view name(Transform t);

struct Coloring {
  enum class Kind { kScalar, kCategorical };
  std::string name;
  Kind kind = Kind::kScalar;
  std::vector<double> scalar;
  std::vector<std::map<std::string, double>> categorical;

  std::size_t size() const { return kind == Kind::kScalar ? scalar.size() : categorical.size(); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Per-vertex aggregate of per-row values; the transform is applied to each
/// raw value first. std is the population standard deviation. fraction_true
/// counts nonzero values.
Coloring color_scalar(const BallMapperGraph& g, std::span<const double> values, Aggregator agg,
                      Transform transform, std::string name);

/// Per-vertex proportion of each label among covered rows.
Coloring color_categorical(const BallMapperGraph& g, std::span<const std::string> labels,
                           std::string name);

/// Fraction, per vertex of g_g, of covered knots that lie in the union of
/// the selected vertex balls of g_f. Rows are related by knot id; the two id
/// sets must coincide.
Coloring map_mappers(const BallMapperGraph& g_f, std::span<const std::string> f_ids,
                     const BallMapperGraph& g_g, std::span<const std::string> g_ids,
                     std::span<const std::size_t> selected, std::string name);

/// Same coloring from an explicit knot id selection.
Coloring map_selection(const BallMapperGraph& g, std::span<const std::string> ids,
                       const std::set<std::string, std::less<>>& selected_ids, std::string name);

/// Connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<std::size_t>> components(const BallMapperGraph& g);

/// Keeps components with at least `min_vertices` vertices. Surviving vertices
/// keep their landmark and cover and are renumbered densely in original
/// order.
BallMapperGraph filter_components(const BallMapperGraph& g, std::size_t min_vertices);

struct SweepRow {
  Epsilon epsilon;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  /// Vertices of degree one (tips of flares).
  std::size_t flares = 0;
};

std::vector<SweepRow> epsilon_sweep(const PointCloud& cloud, std::span<const Epsilon> grid,
                                    unsigned threads = 1);

}  // namespace knotscope
