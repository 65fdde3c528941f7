#pragma once

// Coefficient-ring adaptors for MultiPoly and TwistedPoly.
//
// A ring adaptor is a small value object carrying whatever context the
// coefficients need (here: the constant field) and exposing
//   value_type, zero(), one(), add, sub, neg, mul, is_zero, equal,
//   invert_if_unit (optional result) and frobenius (x -> x^Q).

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "ffzeta/fraction.hpp"
#include "ffzeta/poly.hpp"

namespace ffz {

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a) {
  typename R::value_type;
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, a) } -> std::convertible_to<bool>;
  { r.invert_if_unit(a) } -> std::convertible_to<std::optional<typename R::value_type>>;
};

/// The ring A = F[theta].
struct PolyRing {
  using value_type = Poly;
  FieldPtr field;

  Poly zero() const { return Poly(field); }
  Poly one() const { return Poly::one(field); }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly sub(const Poly& a, const Poly& b) const { return a - b; }
  Poly neg(const Poly& a) const { return -a; }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
  bool is_zero(const Poly& a) const { return a.is_zero(); }
  bool equal(const Poly& a, const Poly& b) const { return a == b; }
  std::optional<Poly> invert_if_unit(const Poly& a) const {
    if (a.degree() != 0) return std::nullopt;
    return Poly::constant(field, field->inv(a.leading()));
  }
  Poly frobenius(const Poly& a, std::uint64_t Q) const { return a.frobenius_power(Q); }
  Poly constant(Elem c) const { return Poly::constant(field, c); }
  Poly from_poly(const Poly& a) const { return a; }
  std::string format(const Poly& a) const { return a.to_string(); }
  friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

/// The field K = F(theta).
struct FractionField {
  using value_type = Fraction;
  FieldPtr field;

  Fraction zero() const { return Fraction(field); }
  Fraction one() const { return Fraction::one(field); }
  Fraction add(const Fraction& a, const Fraction& b) const { return a + b; }
  Fraction sub(const Fraction& a, const Fraction& b) const { return a - b; }
  Fraction neg(const Fraction& a) const { return -a; }
  Fraction mul(const Fraction& a, const Fraction& b) const { return a * b; }
  bool is_zero(const Fraction& a) const { return a.is_zero(); }
  bool equal(const Fraction& a, const Fraction& b) const { return a == b; }
  std::optional<Fraction> invert_if_unit(const Fraction& a) const {
    if (a.is_zero()) return std::nullopt;
    return a.inverse();
  }
  Fraction frobenius(const Fraction& a, std::uint64_t Q) const { return a.frobenius_power(Q); }
  Fraction constant(Elem c) const { return Fraction::constant(field, c); }
  Fraction from_poly(const Poly& a) const { return Fraction(a); }
  std::string format(const Fraction& a) const { return a.to_string(); }
  friend bool operator==(const FractionField&, const FractionField&) = default;
};

}  // namespace ffz
