#include "knotscope/pca.hpp"

#include "knotscope/error.hpp"
#include "knotscope/parallel.hpp"

#include <cmath>

namespace knotscope {
namespace {

Eigen::MatrixXd centred(const Eigen::MatrixXd& x) {
  Eigen::RowVectorXd mean = x.colwise().mean();
  return x.rowwise() - mean;
}

}  // namespace

Eigen::MatrixXd to_matrix(const PointCloud& cloud) {
  Eigen::MatrixXd m(cloud.rows(), cloud.dimension());
  for (std::size_t i = 0; i < cloud.rows(); ++i) {
    auto r = cloud.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) m(i, k) = r[k];
  }
  return m;
}

Eigen::MatrixXd to_matrix(const PointCloud& cloud, std::span<const std::size_t> rows) {
  Eigen::MatrixXd m(rows.size(), cloud.dimension());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto r = cloud.row(rows[i]);
    for (std::size_t k = 0; k < r.size(); ++k) m(i, k) = r[k];
  }
  return m;
}

Spectrum spectrum(const Eigen::MatrixXd& x) {
  if (x.rows() < 2) throw DomainError("spectrum needs at least two points");
  Eigen::MatrixXd c = centred(x);
  Spectrum s;
  if (c.cwiseAbs().maxCoeff() == 0.0) {
    s.degenerate = true;
    return s;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(c);
  Eigen::VectorXd sq = svd.singularValues().array().square();
  double total = sq.sum();
  double run = 0;
  for (Eigen::Index k = 0; k < sq.size(); ++k) {
    s.ratios.push_back(sq[k] / total);
    run += sq[k] / total;
    s.cumulative.push_back(run);
  }
  return s;
}

Spectrum spectrum(const PointCloud& cloud) { return spectrum(to_matrix(cloud)); }

int dimension_at(const Spectrum& s, double threshold) {
  if (s.degenerate) return 0;
  for (std::size_t k = 0; k < s.cumulative.size(); ++k)
    if (s.cumulative[k] >= threshold - 1e-12) return static_cast<int>(k + 1);
  return static_cast<int>(s.cumulative.size());
}

int persistent_dimension(std::span<const Spectrum> levels, double threshold) {
  if (levels.empty()) throw DomainError("persistent dimension needs at least one level");
  int d = 1;
  for (const auto& s : levels) d = std::max(d, dimension_at(s, threshold));
  return d;
}

std::vector<std::array<double, 2>> project2(const Eigen::MatrixXd& x) {
  if (x.rows() < 3 || x.cols() < 2) throw DomainError("2-D projection needs at least 3 points in 2+ dimensions");
  Eigen::MatrixXd c = centred(x);
  if (c.cwiseAbs().maxCoeff() == 0.0) throw DomainError("2-D projection of a zero-variance cloud");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinV);
  Eigen::MatrixXd v = svd.matrixV().leftCols(2);
  for (Eigen::Index k = 0; k < 2; ++k) {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.rows(); ++i)
      if (std::abs(v(i, k)) > std::abs(v(arg, k)) + 1e-12) arg = i;
    if (v(arg, k) < 0) v.col(k) = -v.col(k);
  }
  Eigen::MatrixXd scores = c * v;
  std::vector<std::array<double, 2>> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] = {scores(i, 0), scores(i, 1)};
  return out;
}

std::vector<std::array<double, 2>> project2(const PointCloud& cloud) { return project2(to_matrix(cloud)); }

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("pearson: sequences differ in length");
  if (x.size() < 2) throw DomainError("pearson: need at least two values");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw DomainError("pearson: zero variance, correlation undefined");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<int> local_dimension(const BallMapperGraph& g, const PointCloud& cloud, double threshold,
                                 unsigned threads) {
  if (g.cloud_rows != cloud.rows()) throw ValidationError("graph was not built on this cloud");
  std::vector<int> out(g.vertex_count(), 0);
  parallel_for(g.vertex_count(), threads, [&](std::size_t v) {
    const auto& cover = g.covers[v];
    if (cover.size() < 2) return;
    out[v] = dimension_at(spectrum(to_matrix(cloud, cover)), threshold);
  });
  return out;
}

}  // namespace knotscope
