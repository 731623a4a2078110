#pragma once

#include "knotscope/record.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace knotscope {

/// Coordinates of one invariant inside a concatenated embedding. One-variable
/// blocks use the first axis only. Two-variable blocks flatten (e1, e2) in
/// lexicographic order: coordinate = (e1 - min1) * range2 + (e2 - min2).
struct EmbeddingBlock {
  InvariantKind kind = InvariantKind::kAlexander;
  int min1 = 0, max1 = 0;
  int min2 = 0, max2 = 0;
  std::size_t offset = 0;
  /// Every coefficient is multiplied by this before storage.
  int weight = 1;

  std::size_t dimension() const;
  /// Global coordinate of an exponent, or nullopt when outside the window.
  std::optional<std::size_t> coordinate(int e) const;
  std::optional<std::size_t> coordinate(const Exponent2& e) const;
  /// Inverse of coordinate(); `c` is a global coordinate inside this block.
  Exponent2 exponent_at(std::size_t c) const;

  friend bool operator==(const EmbeddingBlock&, const EmbeddingBlock&) = default;
};

struct EmbeddingSpec {
  std::vector<EmbeddingBlock> blocks;

  std::size_t dimension() const;
  std::vector<InvariantKind> kinds() const;
  friend bool operator==(const EmbeddingSpec&, const EmbeddingSpec&) = default;
};

/// Largest absolute coordinate and largest dimension a cloud may have. With
/// these bounds every squared distance is below 2^63.
inline constexpr std::int32_t kMaxCoordinate = (1 << 24) - 1;
inline constexpr std::size_t kMaxDimension = 8192;

/// Global exponent window per kind over the whole dataset. `weights`, when
/// given, has one entry per kind.
EmbeddingSpec compute_spec(const Dataset& d, std::span<const InvariantKind> kinds,
                           std::span<const int> weights = {});

/// Dense integer rows in dataset order, rows keyed by knot id.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::vector<std::int32_t> data, std::size_t dimension, std::vector<std::string> row_ids,
             EmbeddingSpec spec = {});

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const std::int32_t> row(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }
  const std::vector<std::int32_t>& data() const noexcept { return data_; }
  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
  const EmbeddingSpec& spec() const noexcept { return spec_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<std::int32_t> data_;
  std::size_t dimension_ = 0;
  std::vector<std::string> row_ids_;
  EmbeddingSpec spec_;
};

/// Embeds every record. StaleSpecError when an exponent falls outside the
/// spec's window, MissingDataError when a record lacks a kind, DomainError
/// when a weighted coefficient exceeds kMaxCoordinate.
PointCloud embed(const Dataset& d, const EmbeddingSpec& spec, unsigned threads = 1);

/// Squared Euclidean distance, exact.
std::int64_t squared_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

/// Matrix as headerless integer CSV plus a JSON sidecar with the spec and
/// row ids (`<path>.json`).
void save_cloud(const PointCloud& cloud, const std::filesystem::path& matrix_path);
PointCloud load_cloud(const std::filesystem::path& matrix_path);
std::filesystem::path sidecar_path(const std::filesystem::path& matrix_path);

}  // namespace knotscope
