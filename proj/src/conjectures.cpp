#include "knotscope/conjectures.hpp"

#include "knotscope/error.hpp"
#include "knotscope/invariants.hpp"
#include "knotscope/parallel.hpp"

#include <cmath>
#include <vector>

namespace knotscope {
namespace {

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

BigInt pow10(int e) { return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e)); }

}  // namespace

FoxResult fox_check(std::span<const BigInt> a) {
  if (a.empty()) throw DomainError("Fox check of the zero polynomial");
  const std::size_t top = a.size() - 1;
  FoxResult r;
  r.n = static_cast<int>(top / 2);
  r.sign_alternation_ok = true;
  for (std::size_t j = 0; j <= top; ++j) {
    if (a[j] == 0 || (j > 0 && (a[j] > 0) == (a[j - 1] > 0))) {
      r.sign_alternation_ok = false;
      break;
    }
  }
  r.symmetric_ok = true;
  for (std::size_t j = 0; j <= top; ++j)
    if (abs_big(a[j]) != abs_big(a[top - j])) {
      r.symmetric_ok = false;
      break;
    }
  if (top % 2 != 0 || !r.sign_alternation_ok || !r.symmetric_ok) return r;

  std::size_t i = 0;
  while (i < top && abs_big(a[i]) < abs_big(a[i + 1])) ++i;
  std::size_t j = i;
  while (j < top && abs_big(a[j]) == abs_big(a[j + 1])) ++j;
  std::size_t k = j;
  while (k < top && abs_big(a[k]) > abs_big(a[k + 1])) ++k;
  if (k != top) return r;
  r.holds = true;
  r.m = static_cast<int>((j - i) / 2);
  r.is_triangle = *r.m == 0;
  return r;
}

FoxResult fox_check(const LaurentPoly1& delta) {
  if (delta.is_zero()) throw DomainError("Fox check of the zero polynomial");
  int lo = min_exponent(delta);
  std::vector<BigInt> a(static_cast<std::size_t>(span(delta)) + 1, 0);
  for (const auto& [e, c] : delta.terms()) a[static_cast<std::size_t>(e - lo)] = c;
  if (a.back() < 0)
    for (auto& c : a) c = -c;
  return fox_check(std::span<const BigInt>(a));
}

bool hm_check(const FoxResult& f, int sigma) {
  if (!f.holds || !f.m) throw DomainError("Hirasawa-Murasugi bound applies only when the Fox shape holds");
  return *f.m <= std::abs(sigma) / 2;
}

int determinant_bin(const BigInt& det, int bins_per_decade) {
  if (det <= 0) throw DomainError("determinant bin needs a positive determinant");
  if (bins_per_decade < 1) throw ValidationError("bins per decade must be positive");
  if (bins_per_decade == 1) return static_cast<int>(det.str().size()) - 1;
  // log10 through the leading digits, then corrected at decade boundaries
  // where the comparison is exact.
  std::string digits = det.str();
  double mantissa = std::stod("0." + digits.substr(0, 17));
  double lg = static_cast<double>(digits.size()) + std::log10(mantissa);
  int b = static_cast<int>(std::floor(bins_per_decade * lg));
  if ((b + 1) % bins_per_decade == 0 && det >= pow10((b + 1) / bins_per_decade)) ++b;
  if (b % bins_per_decade == 0 && b >= 0 && det < pow10(b / bins_per_decade)) --b;
  return b;
}

FoxSurvey fox_survey(const Dataset& d, const RecordFilter& filter, int bins_per_decade, unsigned threads) {
  std::vector<const KnotRecord*> recs;
  for (const auto& r : d.records())
    if (filter.matches(r)) recs.push_back(&r);
  struct Item {
    FoxResult fox;
    int bin = 0;
  };
  std::vector<Item> items(recs.size());
  parallel_for(recs.size(), threads, [&](std::size_t i) {
    const auto& r = *recs[i];
    if (!r.alexander) throw MissingDataError(r.id + ": Fox survey needs the Alexander polynomial");
    BigInt det = determinant(r);
    if (det == 0) throw IntegrityError(r.id + ": determinant 0 is impossible for a knot");
    items[i] = {fox_check(*r.alexander), determinant_bin(det, bins_per_decade)};
  });
  FoxSurvey s;
  s.bins_per_decade = bins_per_decade;
  s.total = items.size();
  for (const auto& it : items) {
    if (it.fox.holds) {
      ++s.holds;
      ++(it.fox.is_triangle ? s.triangles : s.trapezoids);
      ++s.det_holds[it.bin];
    } else {
      ++s.fails;
      ++s.det_fails[it.bin];
    }
  }
  return s;
}

}  // namespace knotscope
