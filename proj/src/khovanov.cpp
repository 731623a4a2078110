#include "knotscope/khovanov.hpp"

#include "knotscope/error.hpp"
#include "detail/text.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace knotscope {
namespace {

std::vector<int> merged(std::initializer_list<const std::vector<int>*> lists) {
  std::set<int> out;
  for (const auto* l : lists) out.insert(l->begin(), l->end());
  return {out.begin(), out.end()};
}

std::string sets_text(const DiagonalSets& s) {
  auto opt = [](const std::optional<std::vector<int>>& v) { return v ? diagonal_list_text(*v) : "?"; };
  return "Q " + diagonal_list_text(s.rational) + ", Z2 " + opt(s.z2) + ", Z4 " + opt(s.z4);
}

void require_agree(const KnotRecord& r, const DiagonalSets& a, const DiagonalSets& b, std::string_view what) {
  bool same = a.rational == b.rational && (!a.z2 || !b.z2 || *a.z2 == *b.z2) && (!a.z4 || !b.z4 || *a.z4 == *b.z4);
  if (!same)
    throw IntegrityError(r.id + ": " + std::string(what) + " disagree (" + sets_text(a) + " vs " + sets_text(b) + ")");
}

// Free-part entries (i, j, rank) of a record.
std::vector<BigradeEntry> free_entries(const KnotRecord& r) {
  if (r.kh_support) return r.kh_support->entries();
  if (r.khovanov) return BigradedSupport::from_khovanov(*r.khovanov).entries();
  return {};
}

CounterexampleRow make_row(const KnotRecord& r, const DiagonalSets& sets, SignatureConvention convention) {
  CounterexampleRow row;
  row.id = r.id;
  row.sigma = *r.signature;
  row.s = r.s;
  row.sets = sets;
  row.width_rational = static_cast<int>(sets.rational.size());
  row.rational_holds = sigma_span_check(sets.rational, row.sigma, convention).holds;
  if (sets.z2 && sets.z4) {
    auto integral = diagonals(sets, CoefficientView::kIntegral);
    row.width_integral = static_cast<int>(integral.size());
    row.integral_holds = sigma_span_check(integral, row.sigma, convention).holds;
  }
  return row;
}

}  // namespace

CoefficientView parse_coefficient_view(std::string_view text) {
  text = detail::trim(text);
  for (auto v : {CoefficientView::kRational, CoefficientView::kZ2, CoefficientView::kZ4, CoefficientView::kIntegral})
    if (text == name(v)) return v;
  throw ValidationError("unknown coefficient view '" + std::string(text) + "' (rational, z2, z4, integral)");
}

std::string_view name(CoefficientView v) {
  switch (v) {
    case CoefficientView::kRational: return "rational";
    case CoefficientView::kZ2: return "z2";
    case CoefficientView::kZ4: return "z4";
    case CoefficientView::kIntegral: return "integral";
  }
  return "?";
}

SignatureConvention parse_signature_convention(std::string_view text) {
  text = detail::trim(text);
  if (text == name(SignatureConvention::kAgreesWithS)) return SignatureConvention::kAgreesWithS;
  if (text == name(SignatureConvention::kOppositeToS)) return SignatureConvention::kOppositeToS;
  throw ValidationError("unknown signature convention '" + std::string(text) + "' (agrees-with-s, opposite-to-s)");
}

std::string_view name(SignatureConvention c) {
  return c == SignatureConvention::kAgreesWithS ? "agrees-with-s" : "opposite-to-s";
}

std::optional<DiagonalSets> diagonal_sets(const KnotRecord& r) {
  std::optional<DiagonalSets> from_support, from_columns, from_poly;
  if (r.kh_support) from_support = DiagonalSets::from_support(*r.kh_support);
  if (r.kh_q_diag || r.kh_z2_diag || r.kh_z4_diag) {
    if (!r.kh_q_diag) throw MissingDataError(r.id + ": torsion diagonals given without kh_q_diag");
    from_columns = DiagonalSets{*r.kh_q_diag, r.kh_z2_diag, r.kh_z4_diag};
  }
  if (r.khovanov) {
    // The polynomial only carries the free part; torsion stays unknown.
    from_poly = DiagonalSets::from_support(BigradedSupport::from_khovanov(*r.khovanov));
    from_poly->z2.reset();
    from_poly->z4.reset();
  }

  if (from_support && r.khovanov && r.kh_support->poincare_polynomial() != *r.khovanov)
    throw IntegrityError(r.id + ": kh_support free part differs from the Khovanov polynomial");
  if (from_support && from_columns) require_agree(r, *from_support, *from_columns, "kh_support and diagonal columns");
  if (from_columns && from_poly) require_agree(r, *from_columns, *from_poly, "diagonal columns and Khovanov polynomial");

  if (from_support) return from_support;
  if (from_columns) return from_columns;
  return from_poly;
}

std::vector<int> diagonals(const DiagonalSets& sets, CoefficientView view) {
  auto need = [](const std::optional<std::vector<int>>& v, std::string_view what) -> const std::vector<int>& {
    if (!v) throw MissingDataError(std::string(what) + " torsion diagonals are unknown for this record");
    return *v;
  };
  std::vector<int> out;
  switch (view) {
    case CoefficientView::kRational: out = sets.rational; break;
    case CoefficientView::kZ2: out = need(sets.z2, "Z2"); break;
    case CoefficientView::kZ4: out = need(sets.z4, "Z4"); break;
    case CoefficientView::kIntegral:
      out = merged({&sets.rational, &need(sets.z2, "Z2"), &need(sets.z4, "Z4")});
      break;
  }
  if (out.empty()) throw DomainError("no diagonals in the " + std::string(name(view)) + " view");
  return out;
}

std::vector<int> diagonals(const BigradedSupport& s, CoefficientView view) {
  return diagonals(DiagonalSets::from_support(s), view);
}

int width(const DiagonalSets& sets, CoefficientView view) { return static_cast<int>(diagonals(sets, view).size()); }

bool is_thin(const DiagonalSets& sets) { return sets.rational.size() == 2; }

std::string diagonal_label(const DiagonalSets& sets) {
  auto list = sets.z2 && sets.z4 ? merged({&sets.rational, &*sets.z2, &*sets.z4}) : sets.rational;
  std::string out = "{";
  for (std::size_t k = 0; k < list.size(); ++k) out += (k ? "," : "") + std::to_string(list[k]);
  return out + "}";
}

SigmaSpanResult sigma_span_check(const std::vector<int>& diagonals, int sigma, SignatureConvention convention) {
  SigmaSpanResult r;
  if (diagonals.size() < 2) {
    r.degenerate = true;
    if (!diagonals.empty()) r.d1 = r.dw = diagonals.front();
    return r;
  }
  r.d1 = diagonals.front();
  r.dw = diagonals.back();
  int target = convention == SignatureConvention::kAgreesWithS ? sigma : -sigma;
  r.holds = r.d1 < target && target < r.dw;
  return r;
}

void require_decat(const KnotRecord& r) {
  if (r.khovanov && r.jones && !decat_check(*r.khovanov, *r.jones))
    throw IntegrityError(r.id + ": Khovanov polynomial at t=-1 is not (q+1/q)V(q^2)");
}

std::vector<DiagonalStats> diagonal_profile(const Dataset& d, const RecordFilter& filter) {
  struct Acc {
    std::size_t knots = 0;
    double max = 0, mean = 0, sum = 0, nonzero = 0;
  };
  std::map<int, Acc> acc;
  for (const auto& r : d.records()) {
    if (!filter.matches(r)) continue;
    require_decat(r);
    struct Raw {
      std::uint32_t max = 0;
      std::uint64_t sum = 0;
      std::size_t count = 0;
    };
    std::map<int, Raw> per;
    for (const auto& e : free_entries(r)) {
      if (e.free_rank == 0) continue;
      auto& raw = per[e.diagonal()];
      raw.max = std::max(raw.max, e.free_rank);
      raw.sum += e.free_rank;
      ++raw.count;
    }
    for (const auto& [diag, raw] : per) {
      auto& a = acc[diag];
      ++a.knots;
      a.max += raw.max;
      a.sum += static_cast<double>(raw.sum);
      a.mean += static_cast<double>(raw.sum) / static_cast<double>(raw.count);
      a.nonzero += static_cast<double>(raw.count);
    }
  }
  std::vector<DiagonalStats> out;
  for (const auto& [diag, a] : acc) {
    double k = static_cast<double>(a.knots);
    out.push_back({diag, a.knots, a.max / k, a.mean / k, a.sum / k, a.nonzero / k});
  }
  return out;
}

SSigmaCensus s_sigma_census(const Dataset& d, AlternatingMode group, bool cumulative, CoefficientView width_view) {
  RecordFilter f;
  f.alternating = group;
  std::map<int, SSigmaRow> per;
  SSigmaCensus census;
  census.cumulative = cumulative;
  for (const auto& r : d.records()) {
    if (!f.matches(r) || !r.crossings || !r.s || !r.signature) continue;
    require_decat(r);
    int as = std::abs(*r.s), ag = std::abs(*r.signature);
    auto& row = per[*r.crossings];
    row.crossing = *r.crossings;
    if (as == ag) ++row.equal;
    else if (as > ag) ++row.s_greater;
    else ++row.s_smaller;
    int w = 0;
    if (auto sets = diagonal_sets(r); sets && !sets->rational.empty()) w = width(*sets, width_view);
    ++census.distribution[{as - ag, w}];
  }
  SSigmaRow run;
  for (const auto& [c, row] : per) {
    if (cumulative) {
      run.crossing = c;
      run.equal += row.equal;
      run.s_greater += row.s_greater;
      run.s_smaller += row.s_smaller;
      census.rows.push_back(run);
    } else {
      census.rows.push_back(row);
    }
  }
  return census;
}

std::map<int, std::map<int, std::size_t>> width_census(const Dataset& d, AlternatingMode group, CoefficientView view) {
  RecordFilter f;
  f.alternating = group;
  std::map<int, std::map<int, std::size_t>> out;
  for (const auto& r : d.records()) {
    if (!f.matches(r) || !r.crossings) continue;
    require_decat(r);
    auto sets = diagonal_sets(r);
    if (!sets) throw MissingDataError(r.id + ": width census needs Khovanov data");
    ++out[*r.crossings][width(*sets, view)];
  }
  return out;
}

std::vector<CounterexampleRow> counterexample_scan(const Dataset& d, SignatureConvention convention) {
  std::vector<CounterexampleRow> out;
  for (const auto& r : d.records()) {
    if (!r.signature) continue;
    require_decat(r);
    auto sets = diagonal_sets(r);
    if (!sets || sets->rational.empty()) continue;
    auto row = make_row(r, *sets, convention);
    if (!row.rational_holds || row.integral_counterexample()) out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::vector<CounterexampleRow> gap_scan(const Dataset& d, int gap, SignatureConvention convention) {
  std::vector<CounterexampleRow> out;
  for (const auto& r : d.records()) {
    if (!r.signature || !r.s || std::abs(*r.s) - std::abs(*r.signature) != gap) continue;
    require_decat(r);
    auto sets = diagonal_sets(r);
    if (!sets || sets->rational.empty()) continue;
    out.push_back(make_row(r, *sets, convention));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace knotscope
