#include "knotscope/invariants.hpp"

#include "knotscope/error.hpp"

namespace knotscope {
namespace {

BigInt abs_at_minus_one(const LaurentPoly1& p) {
  BigInt sum = 0;
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 == 0) sum += c;
    else sum -= c;
  }
  return sum < 0 ? BigInt(-sum) : sum;
}

}  // namespace

BigInt determinant(const KnotRecord& r) {
  if (!r.alexander && !r.jones)
    throw MissingDataError(r.id + ": determinant needs the Alexander or Jones polynomial");
  if (!r.alexander) return abs_at_minus_one(*r.jones);
  BigInt det = abs_at_minus_one(*r.alexander);
  if (r.jones) {
    BigInt other = abs_at_minus_one(*r.jones);
    if (other != det)
      throw IntegrityError(r.id + ": |Δ(-1)| = " + det.str() + " but |V(-1)| = " + other.str());
  }
  return det;
}

int signature_mod4(const KnotRecord& r) {
  if (!r.signature) throw MissingDataError(r.id + ": signature missing");
  return ((*r.signature % 4) + 4) % 4;
}

std::int64_t jones_span(const KnotRecord& r) {
  if (!r.jones) throw MissingDataError(r.id + ": Jones polynomial missing");
  return span(*r.jones);
}

}  // namespace knotscope
