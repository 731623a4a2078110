#pragma once

#include "knotscope/ballmapper.hpp"
#include "knotscope/vectorize.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace knotscope {

/// Explained-variance spectrum of a centred cloud.
struct Spectrum {
  /// Descending, summing to 1. Empty when the cloud has zero variance.
  std::vector<double> ratios;
  std::vector<double> cumulative;
  bool degenerate = false;
};

Eigen::MatrixXd to_matrix(const PointCloud& cloud);
Eigen::MatrixXd to_matrix(const PointCloud& cloud, std::span<const std::size_t> rows);

/// Squared singular values of the column-centred matrix, normalised.
/// DomainError when there are fewer than two rows.
Spectrum spectrum(const Eigen::MatrixXd& x);
Spectrum spectrum(const PointCloud& cloud);

/// Smallest d whose cumulative ratio reaches `threshold` at every level.
/// Degenerate levels impose no constraint. Levels must be nonempty.
int persistent_dimension(std::span<const Spectrum> levels, double threshold = 0.95);

/// Smallest d with cumulative ratio ≥ threshold; 0 for a degenerate spectrum.
int dimension_at(const Spectrum& s, double threshold = 0.95);

/// Scores on the two leading principal directions. Each direction is signed
/// so its largest-magnitude loading (first on ties) is positive.
std::vector<std::array<double, 2>> project2(const Eigen::MatrixXd& x);
std::vector<std::array<double, 2>> project2(const PointCloud& cloud);

/// Sample Pearson correlation. DomainError on length mismatch, fewer than two
/// values, or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Per-vertex dimension of the covered sub-cloud; 0 when the vertex covers
/// fewer than two rows or the sub-cloud is a single point.
std::vector<int> local_dimension(const BallMapperGraph& g, const PointCloud& cloud,
                                 double threshold = 0.95, unsigned threads = 1);

}  // namespace knotscope
