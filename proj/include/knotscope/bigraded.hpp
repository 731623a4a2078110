#pragma once

#include "knotscope/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace knotscope {

/// One occupied bigrade of Khovanov homology: homological degree i, quantum
/// degree j, rank of the free part and which torsion summands occur.
struct BigradeEntry {
  int i = 0;
  int j = 0;
  std::uint32_t free_rank = 0;
  bool z2 = false;
  bool z4 = false;

  /// Slope-2 diagonal index j - 2i.
  int diagonal() const { return j - 2 * i; }
  friend bool operator==(const BigradeEntry&, const BigradeEntry&) = default;
};

/// Support of integral Khovanov homology. Entries are unique per (i, j),
/// sorted by (i, j), and each carries free rank or torsion.
class BigradedSupport {
 public:
  BigradedSupport() = default;
  explicit BigradedSupport(std::vector<BigradeEntry> entries);

  /// Free part read off a Khovanov polynomial in (quantum, homological).
  static BigradedSupport from_khovanov(const LaurentPoly2& kh);

  const std::vector<BigradeEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Support of the mirror knot: free part (i, j) -> (-i, -j), torsion
  /// (i, j) -> (1 - i, -j).
  BigradedSupport mirrored() const;

  /// The free part as a polynomial in (quantum, homological).
  LaurentPoly2 poincare_polynomial() const;

  friend bool operator==(const BigradedSupport&, const BigradedSupport&) = default;

 private:
  std::vector<BigradeEntry> entries_;
};

/// `rank:i,j` terms plus `z2:i,j` / `z4:i,j` torsion terms joined by `;`.
std::string to_text(const BigradedSupport& s);
BigradedSupport parse_support(std::string_view text);

/// Diagonal lists per coefficient view. Torsion lists are optional: they are
/// unknown when only the Khovanov polynomial (free part) was ingested.
struct DiagonalSets {
  std::vector<int> rational;
  std::optional<std::vector<int>> z2;
  std::optional<std::vector<int>> z4;

  static DiagonalSets from_support(const BigradedSupport& s);
  /// Rational diagonals d -> -d; torsion diagonals d -> -d - 2 (see
  /// BigradedSupport::mirrored).
  DiagonalSets mirrored() const;
  friend bool operator==(const DiagonalSets&, const DiagonalSets&) = default;
};

/// Integers joined by `;`, or `none` for a known-empty list.
std::string diagonal_list_text(const std::vector<int>& diagonals);
std::vector<int> parse_diagonal_list(std::string_view text);

}  // namespace knotscope
