#include "knotscope/bigraded.hpp"

#include "knotscope/error.hpp"
#include "detail/text.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace knotscope {
namespace {

std::vector<int> sorted_unique(std::set<int> s) { return {s.begin(), s.end()}; }

std::vector<int> negated_reversed(const std::vector<int>& v, int shift = 0) {
  std::vector<int> out;
  out.reserve(v.size());
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(-*it + shift);
  return out;
}

}  // namespace

BigradedSupport::BigradedSupport(std::vector<BigradeEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (e.free_rank == 0 && !e.z2 && !e.z4)
      throw ValidationError("bigrade (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") carries neither free rank nor torsion");
    if (k > 0 && entries_[k - 1].i == e.i && entries_[k - 1].j == e.j)
      throw ValidationError("bigrade (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") listed twice");
  }
}

BigradedSupport BigradedSupport::from_khovanov(const LaurentPoly2& kh) {
  std::vector<BigradeEntry> entries;
  for (const auto& [e, c] : kh.terms()) {
    if (c < 0) throw ValidationError("Khovanov polynomial has a negative coefficient");
    if (c > BigInt(UINT32_MAX)) throw ValidationError("Khovanov rank exceeds 32 bits");
    entries.push_back({.i = e.second, .j = e.first, .free_rank = static_cast<std::uint32_t>(c)});
  }
  return BigradedSupport(std::move(entries));
}

BigradedSupport BigradedSupport::mirrored() const {
  // Free part: (i, j) -> (-i, -j). Torsion follows the universal coefficient
  // theorem for the dual complex: (i, j) -> (1 - i, -j).
  std::map<std::pair<int, int>, BigradeEntry> out;
  auto slot = [&out](int i, int j) -> BigradeEntry& {
    auto& e = out[{i, j}];
    e.i = i;
    e.j = j;
    return e;
  };
  for (const auto& e : entries_) {
    if (e.free_rank > 0) slot(-e.i, -e.j).free_rank = e.free_rank;
    if (e.z2) slot(1 - e.i, -e.j).z2 = true;
    if (e.z4) slot(1 - e.i, -e.j).z4 = true;
  }
  std::vector<BigradeEntry> entries;
  for (auto& [k, e] : out) entries.push_back(e);
  return BigradedSupport(std::move(entries));
}

LaurentPoly2 BigradedSupport::poincare_polynomial() const {
  LaurentPoly2::Terms terms;
  for (const auto& e : entries_)
    if (e.free_rank > 0) terms[{e.j, e.i}] = e.free_rank;
  return LaurentPoly2(std::move(terms));
}

std::string to_text(const BigradedSupport& s) {
  std::string out;
  auto emit = [&out](const std::string& head, const BigradeEntry& e) {
    if (!out.empty()) out += ';';
    out += head + ':' + std::to_string(e.i) + ',' + std::to_string(e.j);
  };
  for (const auto& e : s.entries()) {
    if (e.free_rank > 0) emit(std::to_string(e.free_rank), e);
    if (e.z2) emit("z2", e);
    if (e.z4) emit("z4", e);
  }
  return out;
}

BigradedSupport parse_support(std::string_view text) {
  std::map<std::pair<int, int>, BigradeEntry> merged;
  std::set<std::pair<int, int>> ranked;
  for (auto raw : detail::split(detail::trim(text), ';')) {
    auto term = detail::trim(raw);
    auto colon = term.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("support term '" + std::string(term) + "' is not of the form head:i,j");
    auto head = detail::trim(term.substr(0, colon));
    auto coords = detail::split(term.substr(colon + 1), ',');
    if (coords.size() != 2) throw ParseError("support term '" + std::string(term) + "' needs i,j");
    int i = detail::parse_int<int>(coords[0], "support term");
    int j = detail::parse_int<int>(coords[1], "support term");
    auto& entry = merged[{i, j}];
    entry.i = i;
    entry.j = j;
    if (head == "z2") {
      entry.z2 = true;
    } else if (head == "z4") {
      entry.z4 = true;
    } else if (!head.empty() && head.front() == 'z') {
      throw ParseError("torsion order '" + std::string(head) + "' not supported (only z2, z4)");
    } else {
      if (!ranked.insert({i, j}).second)
        throw ParseError("rank for bigrade " + std::to_string(i) + "," + std::to_string(j) +
                         " given twice");
      entry.free_rank = detail::parse_int<std::uint32_t>(head, "support rank");
    }
  }
  std::vector<BigradeEntry> entries;
  for (auto& [k, e] : merged) entries.push_back(e);
  return BigradedSupport(std::move(entries));
}

DiagonalSets DiagonalSets::from_support(const BigradedSupport& s) {
  std::set<int> q, z2, z4;
  for (const auto& e : s.entries()) {
    if (e.free_rank > 0) q.insert(e.diagonal());
    if (e.z2) z2.insert(e.diagonal());
    if (e.z4) z4.insert(e.diagonal());
  }
  return {sorted_unique(q), sorted_unique(z2), sorted_unique(z4)};
}

DiagonalSets DiagonalSets::mirrored() const {
  DiagonalSets out{negated_reversed(rational), std::nullopt, std::nullopt};
  if (z2) out.z2 = negated_reversed(*z2, -2);
  if (z4) out.z4 = negated_reversed(*z4, -2);
  return out;
}

std::string diagonal_list_text(const std::vector<int>& diagonals) {
  if (diagonals.empty()) return "none";
  std::string out;
  for (int d : diagonals) {
    if (!out.empty()) out += ';';
    out += std::to_string(d);
  }
  return out;
}

std::vector<int> parse_diagonal_list(std::string_view text) {
  text = detail::trim(text);
  if (text == "none") return {};
  std::set<int> values;
  for (auto tok : detail::split(text, ';')) {
    int d = detail::parse_int<int>(tok, "diagonal list");
    if (d % 2 == 0) throw ValidationError("knot Khovanov diagonals are odd, got " + std::to_string(d));
    values.insert(d);
  }
  return sorted_unique(std::move(values));
}

}  // namespace knotscope
