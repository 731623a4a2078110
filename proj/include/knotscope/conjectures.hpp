#pragma once

#include "knotscope/ingest.hpp"
#include "knotscope/poly.hpp"

#include <map>
#include <optional>
#include <span>

namespace knotscope {

struct FoxResult {
  bool holds = false;
  /// Half the span (floor when the span is odd).
  int n = 0;
  /// Plateau half-width, present iff holds.
  std::optional<int> m;
  bool is_triangle = false;
  bool sign_alternation_ok = false;
  bool symmetric_ok = false;
  friend bool operator==(const FoxResult&, const FoxResult&) = default;
};

/// Trapezoid test on the Alexander polynomial, after normalising by ±t^k so
/// the exponents run over [0, 2n] with a positive top coefficient.
FoxResult fox_check(const LaurentPoly1& delta);

/// Same test on an already normalised coefficient sequence a_0..a_{2n}.
FoxResult fox_check(std::span<const BigInt> coefficients);

/// m ≤ |σ|/2. DomainError unless f.holds.
bool hm_check(const FoxResult& f, int sigma);

struct FoxSurvey {
  std::size_t total = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t trapezoids = 0;
  std::size_t triangles = 0;
  /// Determinant bin floor(bins_per_decade * log10(det)) -> count.
  std::map<int, std::size_t> det_holds;
  std::map<int, std::size_t> det_fails;
  int bins_per_decade = 1;
};

/// Bin of a positive determinant: floor(bins_per_decade * log10(det)).
int determinant_bin(const BigInt& det, int bins_per_decade);

/// Fox check over every record passing `filter`. Records need the Alexander
/// polynomial; the determinant is taken from it (and cross-checked against
/// the Jones polynomial when present).
FoxSurvey fox_survey(const Dataset& d, const RecordFilter& filter, int bins_per_decade = 1,
                     unsigned threads = 1);

}  // namespace knotscope
