#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace knotscope {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Sparse Laurent polynomial with exact integer coefficients.
///
/// `Exponent` is `int` for one variable and `std::pair<int, int>` for two;
/// terms iterate in ascending (lexicographic) exponent order and zero
/// coefficients are never stored, so equal polynomials compare equal term by
/// term.
template <class Exponent>
class LaurentPoly {
 public:
  using exponent_type = Exponent;
  using Terms = std::map<Exponent, BigInt>;

  LaurentPoly() = default;

  explicit LaurentPoly(Terms terms) : terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
  }

  LaurentPoly(std::initializer_list<std::pair<const Exponent, BigInt>> terms)
      : LaurentPoly(Terms(terms)) {}

  static LaurentPoly monomial(BigInt coefficient, Exponent e) {
    Terms t;
    t.emplace(e, std::move(coefficient));
    return LaurentPoly(std::move(t));
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  BigInt coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  BigInt coefficient_sum() const {
    BigInt s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// Rebuilds the polynomial with every exponent passed through `f`.
  /// Colliding images are summed.
  template <class F>
  LaurentPoly map_exponents(F&& f) const {
    Terms out;
    for (const auto& [e, c] : terms_) out[f(e)] += c;
    return LaurentPoly(std::move(out));
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto& slot = terms_[e];
      slot += c;
      if (slot == 0) terms_.erase(e);
    }
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    Terms out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out[add(ea, eb)] += ca * cb;
    return LaurentPoly(std::move(out));
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  static int add(int a, int b) { return a + b; }
  static std::pair<int, int> add(const std::pair<int, int>& a, const std::pair<int, int>& b) {
    return {a.first + b.first, a.second + b.second};
  }

  Terms terms_;
};

using Exponent2 = std::pair<int, int>;
using LaurentPoly1 = LaurentPoly<int>;
/// Two-variable polynomial. For Khovanov data the first exponent is the
/// quantum degree and the second the homological degree.
using LaurentPoly2 = LaurentPoly<Exponent2>;

// Text grammar: `coef:exp` (or `coef:e1,e2`) terms joined by `;`, ascending
// exponent order on output; the zero polynomial is written `0`.
std::string to_text(const LaurentPoly1& p);
std::string to_text(const LaurentPoly2& p);
LaurentPoly1 parse_poly1(std::string_view text);
LaurentPoly2 parse_poly2(std::string_view text);

int min_exponent(const LaurentPoly1& p);
int max_exponent(const LaurentPoly1& p);

/// Exact value of p at a nonzero rational point.
Rational evaluate(const LaurentPoly1& p, const Rational& x);

/// max exponent - min exponent; throws DomainError on the zero polynomial.
std::int64_t span(const LaurentPoly1& p);

/// p(x^k). k = -1 is the mirror substitution.
LaurentPoly1 substitute_power(const LaurentPoly1& p, int k);

/// Substitutes `value` for the second variable, yielding a polynomial in the
/// first. Only units (+1, -1) keep the result a Laurent polynomial.
LaurentPoly1 specialize_second(const LaurentPoly2& p, int value);

/// True iff kh(q, -1) == (q + q^-1) * v(q^2).
bool decat_check(const LaurentPoly2& kh, const LaurentPoly1& v);

}  // namespace knotscope
