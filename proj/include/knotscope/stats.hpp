#pragma once

#include "knotscope/ingest.hpp"
#include "knotscope/record.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace knotscope {

/// Grouping of knots by exact equality of an invariant tuple.
struct MultiplicityReport {
  std::vector<InvariantKind> keys;
  std::size_t n = 0;
  /// Canonical key text -> member ids in dataset order. Keys sort as strings.
  std::map<std::string, std::vector<std::string>> classes;
  /// Multiplicity -> number of classes with that multiplicity.
  std::map<std::size_t, std::size_t> histogram;

  std::size_t unique_count() const;
  std::size_t distinct_count() const { return classes.size(); }
  double unique_pct() const;
  double distinct_pct() const;
};

/// Canonical text of a record's invariant tuple: the polynomial texts joined
/// by '|'. MissingDataError when a key is absent.
std::string class_key(const KnotRecord& r, std::span<const InvariantKind> keys);

/// Canonical key of a probe given as polynomial texts, one per key.
std::string probe_key(std::span<const InvariantKind> keys, std::span<const std::string> texts);

MultiplicityReport multiplicity(const Dataset& d, std::span<const InvariantKind> keys, unsigned threads = 1);

/// Members of the class with this canonical key; empty when unseen.
std::vector<std::string> class_lookup(const MultiplicityReport& report, const std::string& key);

struct FiltrationRow {
  int max_crossing = 0;
  std::string keyset;
  std::size_t n = 0;
  std::size_t unique = 0;
  std::size_t distinct = 0;
  double unique_pct = 0;
  double distinct_pct = 0;
};

/// One multiplicity computation per cumulative crossing level (every
/// crossing number that occurs), per keyset, after the alternating filter.
/// Rows are ordered by keyset, then level. Records without a crossing
/// number are excluded.
std::vector<FiltrationRow> filtration_curves(const Dataset& d,
                                             std::span<const std::vector<InvariantKind>> keysets,
                                             AlternatingMode group);

/// "alexander+jones" style label.
std::string keyset_label(std::span<const InvariantKind> keys);

}  // namespace knotscope
