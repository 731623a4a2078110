#include "knotscope/vectorize.hpp"

#include "knotscope/error.hpp"
#include "knotscope/parallel.hpp"
#include "detail/text.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>

namespace knotscope {
namespace {

using nlohmann::json;

struct Window {
  int min1 = std::numeric_limits<int>::max(), max1 = std::numeric_limits<int>::min();
  int min2 = std::numeric_limits<int>::max(), max2 = std::numeric_limits<int>::min();
  bool empty() const { return min1 > max1; }
};

void widen(Window& w, int e1, int e2 = 0) {
  w.min1 = std::min(w.min1, e1);
  w.max1 = std::max(w.max1, e1);
  w.min2 = std::min(w.min2, e2);
  w.max2 = std::max(w.max2, e2);
}

template <class F>
void for_each_term(const KnotRecord& r, InvariantKind kind, F&& f) {
  auto one = [&f](const LaurentPoly1& p) {
    for (const auto& [e, c] : p.terms()) f(Exponent2{e, 0}, c);
  };
  auto two = [&f](const LaurentPoly2& p) {
    for (const auto& [e, c] : p.terms()) f(e, c);
  };
  switch (kind) {
    case InvariantKind::kAlexander: one(*r.alexander); break;
    case InvariantKind::kJones: one(*r.jones); break;
    case InvariantKind::kHomflypt: two(*r.homflypt); break;
    case InvariantKind::kKhovanov: two(*r.khovanov); break;
  }
}

std::size_t checked_span(int lo, int hi) { return static_cast<std::size_t>(std::int64_t(hi) - lo + 1); }

json spec_to_json(const EmbeddingSpec& spec) {
  json blocks = json::array();
  for (const auto& b : spec.blocks) {
    json j{{"kind", name(b.kind)}, {"offset", b.offset}, {"dimension", b.dimension()},
           {"weight", b.weight},   {"min", {b.min1}},    {"max", {b.max1}}};
    if (is_two_variable(b.kind)) {
      j["min"] = {b.min1, b.min2};
      j["max"] = {b.max1, b.max2};
    }
    blocks.push_back(std::move(j));
  }
  return {{"blocks", std::move(blocks)}, {"dimension", spec.dimension()}};
}

EmbeddingSpec spec_from_json(const json& j) {
  EmbeddingSpec spec;
  for (const auto& jb : j.at("blocks")) {
    EmbeddingBlock b;
    b.kind = parse_invariant_kind(jb.at("kind").get<std::string>());
    b.offset = jb.at("offset").get<std::size_t>();
    b.weight = jb.at("weight").get<int>();
    const auto& lo = jb.at("min");
    const auto& hi = jb.at("max");
    b.min1 = lo.at(0).get<int>();
    b.max1 = hi.at(0).get<int>();
    if (is_two_variable(b.kind)) {
      b.min2 = lo.at(1).get<int>();
      b.max2 = hi.at(1).get<int>();
    }
    if (b.dimension() != jb.at("dimension").get<std::size_t>())
      throw ValidationError("embedding block dimension does not match its window");
    spec.blocks.push_back(b);
  }
  return spec;
}

}  // namespace

std::size_t EmbeddingBlock::dimension() const {
  std::size_t d = checked_span(min1, max1);
  if (is_two_variable(kind)) d *= checked_span(min2, max2);
  return d;
}

std::optional<std::size_t> EmbeddingBlock::coordinate(int e) const {
  if (e < min1 || e > max1) return std::nullopt;
  return offset + static_cast<std::size_t>(e - min1);
}

std::optional<std::size_t> EmbeddingBlock::coordinate(const Exponent2& e) const {
  if (!is_two_variable(kind)) {
    if (e.second != 0) return std::nullopt;
    return coordinate(e.first);
  }
  if (e.first < min1 || e.first > max1 || e.second < min2 || e.second > max2) return std::nullopt;
  return offset + static_cast<std::size_t>(e.first - min1) * checked_span(min2, max2) +
         static_cast<std::size_t>(e.second - min2);
}

Exponent2 EmbeddingBlock::exponent_at(std::size_t c) const {
  std::size_t local = c - offset;
  if (!is_two_variable(kind)) return {min1 + static_cast<int>(local), 0};
  std::size_t r2 = checked_span(min2, max2);
  return {min1 + static_cast<int>(local / r2), min2 + static_cast<int>(local % r2)};
}

std::size_t EmbeddingSpec::dimension() const {
  std::size_t d = 0;
  for (const auto& b : blocks) d += b.dimension();
  return d;
}

std::vector<InvariantKind> EmbeddingSpec::kinds() const {
  std::vector<InvariantKind> out;
  for (const auto& b : blocks) out.push_back(b.kind);
  return out;
}

EmbeddingSpec compute_spec(const Dataset& d, std::span<const InvariantKind> kinds,
                           std::span<const int> weights) {
  if (kinds.empty()) throw ValidationError("at least one invariant kind is required");
  if (!weights.empty() && weights.size() != kinds.size())
    throw ValidationError("one weight per invariant kind is required");
  EmbeddingSpec spec;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    Window w;
    for (const auto& r : d.records()) {
      if (!r.has(kinds[k]))
        throw MissingDataError(r.id + ": no " + std::string(name(kinds[k])) + " polynomial");
      for_each_term(r, kinds[k], [&w](const Exponent2& e, const BigInt&) { widen(w, e.first, e.second); });
    }
    if (w.empty()) w = Window{0, 0, 0, 0};
    EmbeddingBlock b{.kind = kinds[k], .min1 = w.min1, .max1 = w.max1, .min2 = w.min2, .max2 = w.max2,
                     .offset = offset, .weight = weights.empty() ? 1 : weights[k]};
    if (b.weight < 1) throw ValidationError("embedding weights must be positive integers");
    if (!is_two_variable(b.kind)) b.min2 = b.max2 = 0;
    offset += b.dimension();
    if (offset > kMaxDimension)
      throw DomainError("embedding dimension " + std::to_string(offset) + " exceeds " +
                        std::to_string(kMaxDimension));
    spec.blocks.push_back(b);
  }
  return spec;
}

PointCloud::PointCloud(std::vector<std::int32_t> data, std::size_t dimension,
                       std::vector<std::string> row_ids, EmbeddingSpec spec)
    : data_(std::move(data)), dimension_(dimension), row_ids_(std::move(row_ids)), spec_(std::move(spec)) {
  if (dimension_ == 0 || dimension_ > kMaxDimension)
    throw DomainError("cloud dimension must be in 1.." + std::to_string(kMaxDimension));
  if (data_.size() != row_ids_.size() * dimension_)
    throw ValidationError("cloud matrix size does not match rows x dimension");
  if (!spec_.blocks.empty() && spec_.dimension() != dimension_)
    throw ValidationError("cloud dimension does not match its embedding spec");
  for (auto v : data_)
    if (v > kMaxCoordinate || v < -kMaxCoordinate)
      throw DomainError("cloud coordinate " + std::to_string(v) + " is outside [-(2^24-1), 2^24-1]");
}

PointCloud embed(const Dataset& d, const EmbeddingSpec& spec, unsigned threads) {
  const std::size_t dim = spec.dimension();
  if (dim == 0) throw ValidationError("empty embedding spec");
  std::vector<std::int32_t> data(d.size() * dim, 0);
  parallel_for(d.size(), threads, [&](std::size_t i) {
    const auto& r = d[i];
    std::int32_t* row = data.data() + i * dim;
    for (const auto& b : spec.blocks) {
      if (!r.has(b.kind)) throw MissingDataError(r.id + ": no " + std::string(name(b.kind)) + " polynomial");
      for_each_term(r, b.kind, [&](const Exponent2& e, const BigInt& c) {
        auto coord = b.coordinate(e);
        if (!coord)
          throw StaleSpecError(r.id + ": " + std::string(name(b.kind)) + " exponent (" +
                               std::to_string(e.first) +
                               (is_two_variable(b.kind) ? "," + std::to_string(e.second) : "") +
                               ") lies outside the embedding window; recompute the spec");
        BigInt v = c * b.weight;
        if (v > kMaxCoordinate || v < -kMaxCoordinate)
          throw DomainError(r.id + ": coefficient " + v.str() + " exceeds the coordinate bound 2^24-1");
        row[*coord] = static_cast<std::int32_t>(v);
      });
    }
  });
  std::vector<std::string> ids;
  ids.reserve(d.size());
  for (const auto& r : d.records()) ids.push_back(r.id);
  return PointCloud(std::move(data), dim, std::move(ids), spec);
}

std::int64_t squared_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::int64_t t = std::int64_t(a[k]) - b[k];
    s += t * t;
  }
  return s;
}

std::filesystem::path sidecar_path(const std::filesystem::path& matrix_path) {
  return std::filesystem::path(matrix_path.string() + ".json");
}

void save_cloud(const PointCloud& cloud, const std::filesystem::path& matrix_path) {
  {
    std::ofstream out(matrix_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + matrix_path.string() + "'");
    std::string line;
    for (std::size_t i = 0; i < cloud.rows(); ++i) {
      line.clear();
      for (auto v : cloud.row(i)) {
        if (!line.empty()) line += ',';
        line += std::to_string(v);
      }
      out << line << '\n';
    }
  }
  json side{{"format", "knotscope-cloud/1"},
            {"rows", cloud.rows()},
            {"dimension", cloud.dimension()},
            {"row_ids", cloud.row_ids()},
            {"spec", spec_to_json(cloud.spec())}};
  std::ofstream out(sidecar_path(matrix_path), std::ios::binary);
  if (!out) throw Error("cannot write '" + sidecar_path(matrix_path).string() + "'");
  out << side.dump(1) << '\n';
}

PointCloud load_cloud(const std::filesystem::path& matrix_path) {
  std::ifstream side_in(sidecar_path(matrix_path), std::ios::binary);
  if (!side_in) throw MissingDataError("cloud sidecar '" + sidecar_path(matrix_path).string() + "' not found");
  json side;
  try {
    side = json::parse(side_in);
  } catch (const json::exception& e) {
    throw ParseError("cloud sidecar: " + std::string(e.what()));
  }
  if (side.value("format", "") != "knotscope-cloud/1")
    throw ValidationError("unsupported cloud sidecar format");
  auto dim = side.at("dimension").get<std::size_t>();
  auto ids = side.at("row_ids").get<std::vector<std::string>>();
  EmbeddingSpec spec = spec_from_json(side.at("spec"));

  std::ifstream in(matrix_path, std::ios::binary);
  if (!in) throw MissingDataError("cloud matrix '" + matrix_path.string() + "' not found");
  std::vector<std::int32_t> data;
  data.reserve(ids.size() * dim);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    ++row;
    auto cells = detail::split(detail::trim(line), ',');
    if (cells.size() != dim)
      throw ParseError("expected " + std::to_string(dim) + " coordinates", row);
    for (auto c : cells) data.push_back(detail::parse_int<std::int32_t>(c, "cloud coordinate"));
  }
  if (row != ids.size()) throw ValidationError("cloud matrix row count does not match sidecar row_ids");
  return PointCloud(std::move(data), dim, std::move(ids), std::move(spec));
}

}  // namespace knotscope
