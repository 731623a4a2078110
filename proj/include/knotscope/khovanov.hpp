#pragma once

#include "knotscope/bigraded.hpp"
#include "knotscope/ingest.hpp"
#include "knotscope/record.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace knotscope {

/// Which part of Khovanov homology a diagonal list describes. kIntegral is
/// the union of the free part and both torsion parts.
enum class CoefficientView { kRational, kZ2, kZ4, kIntegral };
CoefficientView parse_coefficient_view(std::string_view text);
std::string_view name(CoefficientView v);

/// Sign convention linking the ingested signature to the diagonals.
/// kAgreesWithS: the signature carries the same sign as s, and the span test
/// is d_1 < σ < d_w. kOppositeToS: the test is d_1 < -σ < d_w.
enum class SignatureConvention { kAgreesWithS, kOppositeToS };
SignatureConvention parse_signature_convention(std::string_view text);
std::string_view name(SignatureConvention c);

/// Diagonal sets of a record, from the first available source: kh_support,
/// then the kh_*_diag columns, then the Khovanov polynomial (free part
/// only). Sources present together must agree (IntegrityError). nullopt
/// when the record has no Khovanov data.
std::optional<DiagonalSets> diagonal_sets(const KnotRecord& r);

/// Sorted diagonals of one view. MissingDataError when a torsion view is
/// unknown; DomainError when the view is empty.
std::vector<int> diagonals(const DiagonalSets& sets, CoefficientView view);
std::vector<int> diagonals(const BigradedSupport& s, CoefficientView view);
int width(const DiagonalSets& sets, CoefficientView view);
/// Rational width is exactly 2.
bool is_thin(const DiagonalSets& sets);

/// "{-5,-3,-1}" from the integral view, or the rational view when torsion is
/// unknown.
std::string diagonal_label(const DiagonalSets& sets);

struct SigmaSpanResult {
  bool holds = false;
  bool degenerate = false;  // fewer than two diagonals
  int d1 = 0;
  int dw = 0;
};

SigmaSpanResult sigma_span_check(const std::vector<int>& diagonals, int sigma,
                                 SignatureConvention convention = SignatureConvention::kAgreesWithS);

/// Refuses (IntegrityError) a record whose Khovanov and Jones polynomials
/// are both present and fail the decategorification identity.
void require_decat(const KnotRecord& r);

struct DiagonalStats {
  int diagonal = 0;
  /// Number of knots whose free part meets this diagonal; the averages below
  /// are over those knots.
  std::size_t knots = 0;
  double max_coefficient = 0;
  double mean_coefficient = 0;
  double sum = 0;
  double nonzero = 0;
};

/// Per-diagonal coefficient statistics of the free part, averaged over the
/// records passing `filter` that carry Khovanov data.
std::vector<DiagonalStats> diagonal_profile(const Dataset& d, const RecordFilter& filter);

struct SSigmaRow {
  int crossing = 0;
  std::size_t equal = 0;
  std::size_t s_greater = 0;
  std::size_t s_smaller = 0;
  std::size_t total() const { return equal + s_greater + s_smaller; }
  std::size_t differ() const { return s_greater + s_smaller; }
};

struct SSigmaCensus {
  bool cumulative = true;
  std::vector<SSigmaRow> rows;
  /// (|s| - |σ|, width) -> count over all counted records. Width is 0 for
  /// records without Khovanov data.
  std::map<std::pair<int, int>, std::size_t> distribution;
};

/// Counts of |s| vs |σ| per crossing level (exact or cumulative), over the
/// records in `group` that carry s, σ and a crossing number.
SSigmaCensus s_sigma_census(const Dataset& d, AlternatingMode group, bool cumulative,
                            CoefficientView width_view = CoefficientView::kRational);

/// crossing -> (width -> count) at each exact crossing level.
std::map<int, std::map<int, std::size_t>> width_census(const Dataset& d, AlternatingMode group,
                                                       CoefficientView view);

struct CounterexampleRow {
  std::string id;
  int sigma = 0;
  std::optional<int> s;
  DiagonalSets sets;
  int width_rational = 0;
  std::optional<int> width_integral;
  bool rational_holds = false;
  std::optional<bool> integral_holds;

  bool integral_counterexample() const { return integral_holds && !*integral_holds; }
};

/// Records violating the σ-span test in the rational or integral view,
/// ordered by knot id.
std::vector<CounterexampleRow> counterexample_scan(const Dataset& d,
                                                   SignatureConvention convention = SignatureConvention::kAgreesWithS);

/// Records with |s| - |σ| == gap, ordered by knot id, in the same row shape
/// (span flags computed as for counterexample_scan).
std::vector<CounterexampleRow> gap_scan(const Dataset& d, int gap,
                                        SignatureConvention convention = SignatureConvention::kAgreesWithS);

}  // namespace knotscope
