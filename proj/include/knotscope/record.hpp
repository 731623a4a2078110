#pragma once

#include "knotscope/bigraded.hpp"
#include "knotscope/poly.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knotscope {

enum class InvariantKind { kAlexander, kJones, kHomflypt, kKhovanov };

std::string_view name(InvariantKind kind);
/// Accepts the CSV column names: alexander, jones, homflypt, khovanov.
InvariantKind parse_invariant_kind(std::string_view text);
/// Comma- or `+`-separated list of kinds, e.g. "alexander+jones".
std::vector<InvariantKind> parse_invariant_kinds(std::string_view text);
bool is_two_variable(InvariantKind kind);

/// One knot. Optional fields are absent when the source has no value;
/// absence is never encoded as zero.
struct KnotRecord {
  std::string id;
  std::optional<int> crossings;
  std::optional<bool> alternating;
  std::optional<int> signature;
  std::optional<int> s;
  std::optional<LaurentPoly1> alexander;
  std::optional<LaurentPoly1> jones;
  std::optional<LaurentPoly2> homflypt;
  /// Khovanov polynomial, exponents (quantum, homological).
  std::optional<LaurentPoly2> khovanov;
  std::optional<BigradedSupport> kh_support;
  /// Diagonal lists given directly (`kh_q_diag`, `kh_z2_diag`, `kh_z4_diag`).
  std::optional<std::vector<int>> kh_q_diag;
  std::optional<std::vector<int>> kh_z2_diag;
  std::optional<std::vector<int>> kh_z4_diag;
  /// Columns the reader does not interpret, kept verbatim.
  std::map<std::string, std::string> extra;

  bool has(InvariantKind kind) const;

  friend bool operator==(const KnotRecord&, const KnotRecord&) = default;
};

/// Ordered, id-unique collection of records. Record order is the file order
/// and is what every order-dependent algorithm downstream keys off.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<KnotRecord> records, std::string provenance);

  const std::vector<KnotRecord>& records() const noexcept { return records_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const KnotRecord& operator[](std::size_t i) const { return records_[i]; }

  /// Index of a knot id, if present.
  std::optional<std::size_t> find(std::string_view id) const;

  /// Column names of `extra` fields in first-seen order.
  const std::vector<std::string>& extra_columns() const noexcept { return extra_columns_; }

 private:
  std::vector<KnotRecord> records_;
  std::string provenance_;
  std::vector<std::string> extra_columns_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace knotscope
