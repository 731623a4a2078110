#include "knotscope/poly.hpp"

#include "knotscope/error.hpp"
#include "detail/text.hpp"

#include <charconv>

namespace knotscope {
namespace {

using detail::split;
using detail::trim;

int parse_exponent(std::string_view s, std::string_view term) {
  s = trim(s);
  if (s.find('/') != std::string_view::npos || s.find('.') != std::string_view::npos)
    throw ParseError("half-integer exponent in term '" + std::string(term) +
                     "'; only knot (integer-exponent) polynomials are supported");
  int value = 0;
  auto first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad exponent in term '" + std::string(term) + "'");
  return value;
}

BigInt parse_coefficient(std::string_view s, std::string_view term) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    throw ParseError("bad coefficient in term '" + std::string(term) + "'");
  BigInt c{std::string(digits)};
  return s.front() == '-' ? BigInt(-c) : c;
}

template <class Exponent, class ParseExp>
LaurentPoly<Exponent> parse_terms(std::string_view text, ParseExp parse_exp) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty polynomial text");
  if (text == "0") return {};
  typename LaurentPoly<Exponent>::Terms terms;
  for (auto raw : split(text, ';')) {
    auto term = trim(raw);
    auto colon = term.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("term '" + std::string(term) + "' is not of the form coef:exponent");
    BigInt c = parse_coefficient(term.substr(0, colon), term);
    Exponent e = parse_exp(term.substr(colon + 1), term);
    if (!terms.emplace(e, std::move(c)).second)
      throw ParseError("repeated exponent in term '" + std::string(term) + "'");
  }
  return LaurentPoly<Exponent>(std::move(terms));
}

}  // namespace

std::string to_text(const LaurentPoly1& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += ';';
    out += c.str();
    out += ':';
    out += std::to_string(e);
  }
  return out;
}

std::string to_text(const LaurentPoly2& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += ';';
    out += c.str();
    out += ':';
    out += std::to_string(e.first);
    out += ',';
    out += std::to_string(e.second);
  }
  return out;
}

LaurentPoly1 parse_poly1(std::string_view text) {
  return parse_terms<int>(text, [](std::string_view s, std::string_view term) {
    if (s.find(',') != std::string_view::npos)
      throw ParseError("two exponents in one-variable term '" + std::string(term) + "'");
    return parse_exponent(s, term);
  });
}

LaurentPoly2 parse_poly2(std::string_view text) {
  return parse_terms<Exponent2>(text, [](std::string_view s, std::string_view term) {
    auto parts = split(s, ',');
    if (parts.size() != 2)
      throw ParseError("two-variable term '" + std::string(term) + "' needs exactly two exponents");
    return Exponent2{parse_exponent(parts[0], term), parse_exponent(parts[1], term)};
  });
}

int min_exponent(const LaurentPoly1& p) {
  if (p.is_zero()) throw DomainError("zero polynomial has no exponents");
  return p.terms().begin()->first;
}

int max_exponent(const LaurentPoly1& p) {
  if (p.is_zero()) throw DomainError("zero polynomial has no exponents");
  return p.terms().rbegin()->first;
}

Rational evaluate(const LaurentPoly1& p, const Rational& x) {
  if (x == 0) throw DomainError("evaluation of a Laurent polynomial at 0");
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational base = e >= 0 ? x : Rational(1) / x;
    Rational power = 1;
    for (int k = 0, n = e >= 0 ? e : -e; k < n; ++k) power *= base;
    sum += Rational(c) * power;
  }
  return sum;
}

std::int64_t span(const LaurentPoly1& p) {
  if (p.is_zero()) throw DomainError("span of the zero polynomial is undefined");
  return static_cast<std::int64_t>(max_exponent(p)) - min_exponent(p);
}

LaurentPoly1 substitute_power(const LaurentPoly1& p, int k) {
  if (k == 0) return LaurentPoly1::monomial(p.coefficient_sum(), 0);
  return p.map_exponents([k](int e) { return e * k; });
}

LaurentPoly1 specialize_second(const LaurentPoly2& p, int value) {
  if (value != 1 && value != -1)
    throw DomainError("second variable may only be specialised to +1 or -1");
  LaurentPoly1::Terms out;
  for (const auto& [e, c] : p.terms()) {
    bool flip = value == -1 && (e.second % 2 != 0);
    out[e.first] += flip ? BigInt(-c) : c;
  }
  return LaurentPoly1(std::move(out));
}

bool decat_check(const LaurentPoly2& kh, const LaurentPoly1& v) {
  const LaurentPoly1 q_plus_inverse{{-1, 1}, {1, 1}};
  return specialize_second(kh, -1) == q_plus_inverse * substitute_power(v, 2);
}

}  // namespace knotscope
