#include "knotscope/stats.hpp"

#include "knotscope/error.hpp"
#include "knotscope/parallel.hpp"

#include <algorithm>
#include <unordered_map>

namespace knotscope {
namespace {

std::string poly_text(const KnotRecord& r, InvariantKind kind) {
  switch (kind) {
    case InvariantKind::kAlexander: return to_text(*r.alexander);
    case InvariantKind::kJones: return to_text(*r.jones);
    case InvariantKind::kHomflypt: return to_text(*r.homflypt);
    case InvariantKind::kKhovanov: return to_text(*r.khovanov);
  }
  return {};
}

double pct(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

std::size_t MultiplicityReport::unique_count() const {
  auto it = histogram.find(1);
  return it == histogram.end() ? 0 : it->second;
}

double MultiplicityReport::unique_pct() const { return pct(unique_count(), n); }
double MultiplicityReport::distinct_pct() const { return pct(distinct_count(), n); }

std::string class_key(const KnotRecord& r, std::span<const InvariantKind> keys) {
  std::string key;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!r.has(keys[k])) throw MissingDataError(r.id + ": no " + std::string(name(keys[k])) + " polynomial");
    if (k) key += '|';
    key += poly_text(r, keys[k]);
  }
  return key;
}

std::string probe_key(std::span<const InvariantKind> keys, std::span<const std::string> texts) {
  if (keys.size() != texts.size()) throw ValidationError("probe needs one polynomial per key");
  std::string key;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (k) key += '|';
    key += is_two_variable(keys[k]) ? to_text(parse_poly2(texts[k])) : to_text(parse_poly1(texts[k]));
  }
  return key;
}

std::string keyset_label(std::span<const InvariantKind> keys) {
  std::string out;
  for (auto k : keys) {
    if (!out.empty()) out += '+';
    out += name(k);
  }
  return out;
}

MultiplicityReport multiplicity(const Dataset& d, std::span<const InvariantKind> keys, unsigned threads) {
  if (keys.empty()) throw ValidationError("at least one key is required");
  std::vector<std::string> key_of(d.size());
  parallel_for(d.size(), threads, [&](std::size_t i) { key_of[i] = class_key(d[i], keys); });
  MultiplicityReport rep;
  rep.keys.assign(keys.begin(), keys.end());
  rep.n = d.size();
  for (std::size_t i = 0; i < d.size(); ++i) rep.classes[std::move(key_of[i])].push_back(d[i].id);
  for (const auto& [k, members] : rep.classes) ++rep.histogram[members.size()];
  return rep;
}

std::vector<std::string> class_lookup(const MultiplicityReport& report, const std::string& key) {
  auto it = report.classes.find(key);
  return it == report.classes.end() ? std::vector<std::string>{} : it->second;
}

std::vector<FiltrationRow> filtration_curves(const Dataset& d,
                                             std::span<const std::vector<InvariantKind>> keysets,
                                             AlternatingMode group) {
  RecordFilter f;
  f.alternating = group;
  std::vector<const KnotRecord*> recs;
  for (const auto& r : d.records())
    if (r.crossings && f.matches(r)) recs.push_back(&r);
  std::stable_sort(recs.begin(), recs.end(),
                   [](const KnotRecord* a, const KnotRecord* b) { return *a->crossings < *b->crossings; });

  std::vector<FiltrationRow> rows;
  for (const auto& keys : keysets) {
    std::unordered_map<std::string, std::size_t> counts;
    std::size_t unique = 0;
    std::string label = keyset_label(keys);
    for (std::size_t i = 0; i < recs.size();) {
      int level = *recs[i]->crossings;
      for (; i < recs.size() && *recs[i]->crossings == level; ++i) {
        auto& c = counts[class_key(*recs[i], keys)];
        if (c == 0) ++unique;
        else if (c == 1) --unique;
        ++c;
      }
      rows.push_back({level, label, i, unique, counts.size(), pct(unique, i), pct(counts.size(), i)});
    }
  }
  return rows;
}

}  // namespace knotscope
