#include "knotscope/record.hpp"

#include "knotscope/error.hpp"
#include "detail/text.hpp"

#include <set>

namespace knotscope {

std::string_view name(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::kAlexander: return "alexander";
    case InvariantKind::kJones: return "jones";
    case InvariantKind::kHomflypt: return "homflypt";
    case InvariantKind::kKhovanov: return "khovanov";
  }
  return "?";
}

InvariantKind parse_invariant_kind(std::string_view text) {
  text = detail::trim(text);
  for (auto k : {InvariantKind::kAlexander, InvariantKind::kJones, InvariantKind::kHomflypt,
                 InvariantKind::kKhovanov})
    if (text == name(k)) return k;
  throw ValidationError("unknown invariant kind '" + std::string(text) +
                        "' (expected alexander, jones, homflypt or khovanov)");
}

std::vector<InvariantKind> parse_invariant_kinds(std::string_view text) {
  std::vector<InvariantKind> out;
  for (auto part : detail::split(text, text.find('+') != std::string_view::npos ? '+' : ','))
    out.push_back(parse_invariant_kind(part));
  return out;
}

bool is_two_variable(InvariantKind kind) {
  return kind == InvariantKind::kHomflypt || kind == InvariantKind::kKhovanov;
}

bool KnotRecord::has(InvariantKind kind) const {
  switch (kind) {
    case InvariantKind::kAlexander: return alexander.has_value();
    case InvariantKind::kJones: return jones.has_value();
    case InvariantKind::kHomflypt: return homflypt.has_value();
    case InvariantKind::kKhovanov: return khovanov.has_value();
  }
  return false;
}

Dataset::Dataset(std::vector<KnotRecord> records, std::string provenance)
    : records_(std::move(records)), provenance_(std::move(provenance)) {
  std::set<std::string, std::less<>> seen_extra;
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto& r = records_[k];
    if (r.id.empty()) throw ValidationError("record " + std::to_string(k + 1) + " has an empty id");
    if (!index_.emplace(r.id, k).second) throw ValidationError("duplicate knot id '" + r.id + "'");
    if (r.signature && *r.signature % 2 != 0)
      throw ValidationError(r.id + ": signature " + std::to_string(*r.signature) + " is odd");
    if (r.s && *r.s % 2 != 0)
      throw ValidationError(r.id + ": s-invariant " + std::to_string(*r.s) + " is odd");
    if (r.crossings && *r.crossings < 0)
      throw ValidationError(r.id + ": negative crossing number");
    for (const auto& [col, v] : r.extra)
      if (seen_extra.insert(col).second) extra_columns_.push_back(col);
  }
}

std::optional<std::size_t> Dataset::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace knotscope
