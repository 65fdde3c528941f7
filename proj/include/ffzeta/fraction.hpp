#pragma once

#include <iosfwd>
#include <string>

#include "ffzeta/poly.hpp"

namespace ffz {

/// Element of F(theta) kept in lowest terms: gcd(num, den) = 1, den monic,
/// and zero stored as 0/1.
class Fraction {
 public:
  Fraction() = default;
  explicit Fraction(FieldPtr f) : num_(f), den_(Poly::one(f)) {}
  explicit Fraction(Poly num);
  /// Reduces; throws PreconditionError when den is zero.
  Fraction(Poly num, Poly den);

  static Fraction zero(FieldPtr f) { return Fraction(f); }
  static Fraction one(FieldPtr f) { return Fraction(Poly::one(f)); }
  static Fraction constant(FieldPtr f, Elem c) { return Fraction(Poly::constant(f, c)); }

  FieldPtr field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// deg num - deg den, i.e. -v_infinity. Undefined (throws) for zero.
  long degree() const;

  Fraction operator-() const;
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
  Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Throws PreconditionError for zero.
  Fraction inverse() const;
  Fraction pow(long e) const;
  /// Coefficient-and-exponent Frobenius; equals this^Q for Q a power of p.
  Fraction frobenius_power(std::uint64_t Q) const;
  Fraction embed(const FieldEmbedding& e) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

}  // namespace ffz
