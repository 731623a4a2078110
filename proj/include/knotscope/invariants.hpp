#pragma once

#include "knotscope/record.hpp"

namespace knotscope {

/// |Δ(-1)| when the Alexander polynomial is present, else |V(-1)|. With both
/// present they must agree (IntegrityError otherwise). MissingDataError when
/// neither is present.
BigInt determinant(const KnotRecord& r);

/// ((σ mod 4) + 4) mod 4, so 0 or 2 for knots.
int signature_mod4(const KnotRecord& r);

/// Span of the Jones polynomial.
std::int64_t jones_span(const KnotRecord& r);

}  // namespace knotscope
