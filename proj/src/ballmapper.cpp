#include "knotscope/ballmapper.hpp"

#include "knotscope/error.hpp"
#include "knotscope/parallel.hpp"
#include "detail/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace knotscope {
namespace {

constexpr std::size_t kMaxPivots = 4;

// Pivot distances for triangle-inequality pruning. Doubles are only used to
// discard candidates that are certainly farther than ε; the tolerance covers
// the rounding of sqrt over an exact int64.
class PivotIndex {
 public:
  PivotIndex(const PointCloud& cloud, unsigned threads) : cloud_(cloud) {
    const std::size_t n = cloud.rows();
    std::size_t count = std::min(kMaxPivots, n);
    std::vector<std::int64_t> nearest(n, std::numeric_limits<std::int64_t>::max());
    dist_.assign(n * count, 0.0);
    stride_ = count;
    std::size_t next = farthest_from(0, threads);
    for (std::size_t p = 0; p < count; ++p) {
      pivots_.push_back(next);
      std::vector<std::int64_t> d2(n);
      parallel_for(n, threads, [&](std::size_t i) { d2[i] = squared_distance(cloud.row(i), cloud.row(next)); });
      std::size_t best = 0;
      for (std::size_t i = 0; i < n; ++i) {
        nearest[i] = std::min(nearest[i], d2[i]);
        if (nearest[i] > nearest[best]) best = i;
      }
      for (std::size_t i = 0; i < n; ++i) dist_[i * count + p] = std::sqrt(static_cast<double>(d2[i]));
      if (nearest[best] == 0) break;
      next = best;
    }
    // Pivots skipped because the cloud ran out of distinct points repeat the
    // last one so every row has `count` entries.
    for (std::size_t p = pivots_.size(); p < count; ++p)
      for (std::size_t i = 0; i < n; ++i) dist_[i * count + p] = dist_[i * count + pivots_.size() - 1];
  }

  double at(std::size_t row, std::size_t p) const { return dist_[row * stride_ + p]; }
  std::size_t stride() const { return stride_; }

  static double tolerance(double a, double b) { return 1e-9 * (1.0 + std::max(a, b)); }

  // True unless the pivot bounds prove d(x, y) > eps.
  bool may_be_within(std::size_t x, std::size_t y, double eps) const {
    for (std::size_t p = 0; p < stride_; ++p) {
      double a = at(x, p), b = at(y, p);
      if (std::abs(a - b) > eps + tolerance(a, b)) return false;
    }
    return true;
  }

 private:
  std::size_t farthest_from(std::size_t origin, unsigned threads) const {
    std::vector<std::int64_t> d2(cloud_.rows());
    parallel_for(d2.size(), threads,
                 [&](std::size_t i) { d2[i] = squared_distance(cloud_.row(i), cloud_.row(origin)); });
    return static_cast<std::size_t>(std::max_element(d2.begin(), d2.end()) - d2.begin());
  }

  const PointCloud& cloud_;
  std::vector<std::size_t> pivots_;
  std::vector<double> dist_;
  std::size_t stride_ = 1;
};

double search_radius(const Epsilon& e) { return e.to_double() * (1.0 + 1e-12) + 1e-9; }

std::vector<std::size_t> degrees(const BallMapperGraph& g) {
  std::vector<std::size_t> deg(g.vertex_count(), 0);
  for (const auto& e : g.edges) {
    ++deg[e.source];
    ++deg[e.target];
  }
  return deg;
}

double apply(Transform t, double v) {
  switch (t) {
    case Transform::kIdentity: return v;
    case Transform::kAbs: return std::abs(v);
    case Transform::kLog1pAbs: return std::log10(1.0 + std::abs(v));
    case Transform::kMod4: {
      if (v != std::floor(v)) throw DomainError("mod4 transform needs integer values");
      return std::fmod(std::fmod(v, 4.0) + 4.0, 4.0);
    }
  }
  return v;
}

void check_rows(const BallMapperGraph& g, std::size_t n, std::string_view what) {
  if (n != g.cloud_rows)
    throw ValidationError(std::string(what) + " has " + std::to_string(n) + " entries but the graph's cloud has " +
                          std::to_string(g.cloud_rows) + " rows");
}

}  // namespace

Epsilon::Epsilon(Rational value) : value_(std::move(value)) {
  if (value_ <= 0) throw ValidationError("epsilon must be positive, got " + text());
  BigInt num = boost::multiprecision::numerator(value_);
  BigInt den = boost::multiprecision::denominator(value_);
  BigInt sq = (num * num) / (den * den);
  squared_floor_ = sq > std::numeric_limits<std::int64_t>::max() ? std::numeric_limits<std::int64_t>::max()
                                                                  : static_cast<std::int64_t>(sq);
}

Epsilon Epsilon::parse(std::string_view text) {
  auto t = detail::trim(text);
  auto bad = [&t]() { return ParseError("epsilon '" + std::string(t) + "' is not a positive rational"); };
  if (t.empty()) throw bad();
  auto digits_only = [](std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    auto p = t.substr(0, slash), q = t.substr(slash + 1);
    if (!digits_only(p) || !digits_only(q)) throw bad();
    BigInt den{std::string(q)};
    if (den == 0) throw bad();
    return Epsilon(Rational(BigInt{std::string(p)}, den));
  }
  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    auto whole = t.substr(0, dot), frac = t.substr(dot + 1);
    if ((!whole.empty() && !digits_only(whole)) || !digits_only(frac)) throw bad();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt num{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    return Epsilon(Rational(num, scale));
  }
  if (!digits_only(t)) throw bad();
  return Epsilon(Rational(BigInt{std::string(t)}));
}

double Epsilon::to_double() const { return value_.convert_to<double>(); }

std::string Epsilon::text() const {
  BigInt den = boost::multiprecision::denominator(value_);
  std::string out = boost::multiprecision::numerator(value_).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

EpsilonNet build_net(const PointCloud& cloud, const Epsilon& epsilon, unsigned threads) {
  if (cloud.rows() == 0) throw ValidationError("cannot build an epsilon net on an empty cloud");
  PivotIndex index(cloud, threads);
  const double radius = search_radius(epsilon);
  const std::int64_t limit = epsilon.squared_floor();
  // Landmarks ordered by distance to the first pivot; a candidate only
  // needs checking against the slice within `radius` of its own value.
  std::multimap<double, std::size_t> by_pivot;
  EpsilonNet net{epsilon, {}};
  for (std::size_t x = 0; x < cloud.rows(); ++x) {
    double key = index.at(x, 0);
    double slack = radius + PivotIndex::tolerance(key, key + radius);
    bool covered = false;
    for (auto it = by_pivot.lower_bound(key - slack); it != by_pivot.end() && it->first <= key + slack; ++it) {
      std::size_t y = it->second;
      if (!index.may_be_within(x, y, radius)) continue;
      if (squared_distance(cloud.row(x), cloud.row(y)) <= limit) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      net.landmarks.push_back(x);
      by_pivot.emplace(key, x);
    }
  }
  return net;
}

BallMapperGraph build_graph(const PointCloud& cloud, const EpsilonNet& net, unsigned threads) {
  const std::size_t n = cloud.rows();
  const std::size_t v_count = net.landmarks.size();
  for (auto l : net.landmarks)
    if (l >= n) throw ValidationError("landmark row " + std::to_string(l) + " outside the cloud");
  BallMapperGraph g;
  g.epsilon = net.epsilon;
  g.cloud_rows = n;
  g.landmarks = net.landmarks;
  g.covers.assign(v_count, {});
  if (v_count == 0) return g;

  PivotIndex index(cloud, threads);
  const double radius = search_radius(net.epsilon);
  const std::int64_t limit = net.epsilon.squared_floor();
  std::vector<std::pair<double, std::size_t>> sorted;
  sorted.reserve(v_count);
  for (std::size_t v = 0; v < v_count; ++v) sorted.emplace_back(index.at(net.landmarks[v], 0), v);
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::vector<std::uint32_t>> member_of(n);
  parallel_for(n, threads, [&](std::size_t x) {
    double key = index.at(x, 0);
    double slack = radius + PivotIndex::tolerance(key, key + radius);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair(key - slack, std::size_t{0}));
    auto& out = member_of[x];
    for (; it != sorted.end() && it->first <= key + slack; ++it) {
      std::size_t y = net.landmarks[it->second];
      if (!index.may_be_within(x, y, radius)) continue;
      if (squared_distance(cloud.row(x), cloud.row(y)) <= limit) out.push_back(static_cast<std::uint32_t>(it->second));
    }
    std::sort(out.begin(), out.end());
  });

  std::unordered_map<std::uint64_t, std::size_t> overlap;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& m = member_of[x];
    for (std::size_t a = 0; a < m.size(); ++a) {
      g.covers[m[a]].push_back(x);
      for (std::size_t b = a + 1; b < m.size(); ++b) ++overlap[std::uint64_t(m[a]) * v_count + m[b]];
    }
  }
  g.edges.reserve(overlap.size());
  for (const auto& [key, count] : overlap) g.edges.push_back({key / v_count, key % v_count, count});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

void verify_net(const PointCloud& cloud, const EpsilonNet& net) {
  const std::int64_t limit = net.epsilon.squared_floor();
  for (std::size_t a = 0; a < net.landmarks.size(); ++a)
    for (std::size_t b = a + 1; b < net.landmarks.size(); ++b)
      if (squared_distance(cloud.row(net.landmarks[a]), cloud.row(net.landmarks[b])) <= limit)
        throw IntegrityError("landmarks " + std::to_string(net.landmarks[a]) + " and " +
                             std::to_string(net.landmarks[b]) + " are within epsilon");
  for (std::size_t x = 0; x < cloud.rows(); ++x) {
    bool covered = std::any_of(net.landmarks.begin(), net.landmarks.end(), [&](std::size_t y) {
      return squared_distance(cloud.row(x), cloud.row(y)) <= limit;
    });
    if (!covered) throw IntegrityError("row " + std::to_string(x) + " is not covered by the net");
  }
}

Aggregator parse_aggregator(std::string_view text) {
  text = detail::trim(text);
  for (auto a : {Aggregator::kMean, Aggregator::kStd, Aggregator::kMin, Aggregator::kMax, Aggregator::kFractionTrue})
    if (text == name(a)) return a;
  throw ValidationError("unknown aggregator '" + std::string(text) + "' (mean, std, min, max, fraction_true)");
}

Transform parse_transform(std::string_view text) {
  text = detail::trim(text);
  for (auto t : {Transform::kIdentity, Transform::kAbs, Transform::kLog1pAbs, Transform::kMod4})
    if (text == name(t)) return t;
  throw ValidationError("unknown transform '" + std::string(text) + "' (identity, abs, log1p_abs, mod4)");
}

std::string_view name(Aggregator a) {
  switch (a) {
    case Aggregator::kMean: return "mean";
    case Aggregator::kStd: return "std";
    case Aggregator::kMin: return "min";
    case Aggregator::kMax: return "max";
    case Aggregator::kFractionTrue: return "fraction_true";
  }
  return "?";
}

std::string_view name(Transform t) {
  switch (t) {
    case Transform::kIdentity: return "identity";
    case Transform::kAbs: return "abs";
    case Transform::kLog1pAbs: return "log1p_abs";
    case Transform::kMod4: return "mod4";
  }
  return "?";
}

Coloring color_scalar(const BallMapperGraph& g, std::span<const double> values, Aggregator agg,
                      Transform transform, std::string name) {
  check_rows(g, values.size(), "value column");
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) t[i] = apply(transform, values[i]);
  Coloring c{std::move(name), Coloring::Kind::kScalar, {}, {}};
  c.scalar.reserve(g.vertex_count());
  for (const auto& cover : g.covers) {
    if (cover.empty()) throw ValidationError("vertex with an empty cover");
    double out = 0;
    switch (agg) {
      case Aggregator::kMean:
      case Aggregator::kStd: {
        double sum = 0;
        for (auto r : cover) sum += t[r];
        double mean = sum / static_cast<double>(cover.size());
        if (agg == Aggregator::kMean) {
          out = mean;
        } else {
          double sq = 0;
          for (auto r : cover) sq += (t[r] - mean) * (t[r] - mean);
          out = std::sqrt(sq / static_cast<double>(cover.size()));
        }
        break;
      }
      case Aggregator::kMin:
        out = t[cover.front()];
        for (auto r : cover) out = std::min(out, t[r]);
        break;
      case Aggregator::kMax:
        out = t[cover.front()];
        for (auto r : cover) out = std::max(out, t[r]);
        break;
      case Aggregator::kFractionTrue: {
        std::size_t hits = 0;
        for (auto r : cover) hits += t[r] != 0.0;
        out = static_cast<double>(hits) / static_cast<double>(cover.size());
        break;
      }
    }
    c.scalar.push_back(out);
  }
  return c;
}

Coloring color_categorical(const BallMapperGraph& g, std::span<const std::string> labels, std::string name) {
  check_rows(g, labels.size(), "label column");
  Coloring c{std::move(name), Coloring::Kind::kCategorical, {}, {}};
  c.categorical.reserve(g.vertex_count());
  for (const auto& cover : g.covers) {
    if (cover.empty()) throw ValidationError("vertex with an empty cover");
    std::map<std::string, std::size_t> counts;
    for (auto r : cover) ++counts[labels[r]];
    std::map<std::string, double> dist;
    for (const auto& [label, k] : counts) dist[label] = static_cast<double>(k) / static_cast<double>(cover.size());
    c.categorical.push_back(std::move(dist));
  }
  return c;
}

Coloring map_selection(const BallMapperGraph& g, std::span<const std::string> ids,
                       const std::set<std::string, std::less<>>& selected_ids, std::string name) {
  check_rows(g, ids.size(), "row id list");
  std::size_t found = 0;
  std::vector<double> indicator(ids.size(), 0.0);
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (selected_ids.contains(ids[i])) {
      indicator[i] = 1.0;
      ++found;
    }
  if (found != selected_ids.size()) {
    std::set<std::string_view> known(ids.begin(), ids.end());
    for (const auto& s : selected_ids)
      if (!known.contains(s)) throw ValidationError("selected knot id '" + s + "' is not in the cloud");
  }
  return color_scalar(g, indicator, Aggregator::kMean, Transform::kIdentity, std::move(name));
}

Coloring map_mappers(const BallMapperGraph& g_f, std::span<const std::string> f_ids,
                     const BallMapperGraph& g_g, std::span<const std::string> g_ids,
                     std::span<const std::size_t> selected, std::string name) {
  check_rows(g_f, f_ids.size(), "first row id list");
  check_rows(g_g, g_ids.size(), "second row id list");
  if (f_ids.size() != g_ids.size())
    throw ValidationError("the two clouds index different numbers of knots");
  std::set<std::string, std::less<>> g_set(g_ids.begin(), g_ids.end());
  if (g_set.size() != g_ids.size()) throw ValidationError("duplicate knot id in the second cloud");
  for (const auto& id : f_ids)
    if (!g_set.contains(id)) throw ValidationError("knot id '" + id + "' is missing from the second cloud");
  std::set<std::string, std::less<>> chosen;
  for (auto v : selected) {
    if (v >= g_f.vertex_count()) throw ValidationError("selected vertex " + std::to_string(v) + " does not exist");
    for (auto r : g_f.covers[v]) chosen.insert(f_ids[r]);
  }
  return map_selection(g_g, g_ids, chosen, std::move(name));
}

std::vector<std::vector<std::size_t>> components(const BallMapperGraph& g) {
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges) {
    auto a = find(e.source), b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

BallMapperGraph filter_components(const BallMapperGraph& g, std::size_t min_vertices) {
  std::vector<bool> keep(g.vertex_count(), false);
  for (const auto& comp : components(g))
    if (comp.size() >= min_vertices)
      for (auto v : comp) keep[v] = true;
  BallMapperGraph out;
  out.epsilon = g.epsilon;
  out.cloud_ref = g.cloud_ref;
  out.cloud_rows = g.cloud_rows;
  std::vector<std::size_t> renumber(g.vertex_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!keep[v]) continue;
    renumber[v] = out.landmarks.size();
    out.landmarks.push_back(g.landmarks[v]);
    out.covers.push_back(g.covers[v]);
  }
  for (const auto& e : g.edges)
    if (keep[e.source]) out.edges.push_back({renumber[e.source], renumber[e.target], e.overlap});
  return out;
}

std::vector<SweepRow> epsilon_sweep(const PointCloud& cloud, std::span<const Epsilon> grid, unsigned threads) {
  std::vector<SweepRow> rows;
  for (const auto& eps : grid) {
    auto g = build_graph(cloud, build_net(cloud, eps, threads), threads);
    auto deg = degrees(g);
    rows.push_back({eps, g.vertex_count(), g.edges.size(), components(g).size(),
                    static_cast<std::size_t>(std::count(deg.begin(), deg.end(), std::size_t{1}))});
  }
  return rows;
}

}  // namespace knotscope
