#pragma once

// Finite fields F_{p^m} with table-driven arithmetic.
//
// Elements are encoded as integers in [0, p^m): the coordinate vector
// (c_0, ..., c_{m-1}) of c_0 + c_1 x + ... over F_p[x]/(modulus) maps to
// sum c_i p^i. In particular 0 and 1 encode the field's zero and one, and
// the prime subfield is {0, ..., p-1}.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace ffz {

using Elem = std::uint32_t;

class FiniteField;
/// Fields are interned: make_field returns the same pointer for the same
/// (p, m) and the object lives for the rest of the program.
using FieldPtr = const FiniteField*;

class FiniteField {
 public:
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint32_t order() const { return order_; }
  bool is_prime() const { return m_ == 1; }
  /// Monic irreducible modulus over F_p, ascending coefficients, length m+1.
  /// Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string label() const;

  Elem add(Elem a, Elem b) const {
    if (m_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_table_[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (m_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws PreconditionError on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^p, the absolute Frobenius.
  Elem frobenius(Elem a) const { return frob_[a]; }
  Elem from_int(std::int64_t v) const;

  std::vector<std::uint32_t> coordinates(Elem a) const;
  Elem from_coordinates(const std::vector<std::uint32_t>& coords) const;

  bool contains(Elem a) const { return a < order_; }

 private:
  friend FieldPtr make_field(std::uint32_t p, std::uint32_t m);
  FiniteField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);
  Elem add_slow(Elem a, Elem b) const;
  Elem mul_coordinates(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t order_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint16_t> add_table_;  // order^2 entries when small enough
  std::vector<Elem> neg_table_;
  std::vector<Elem> log_;
  std::vector<Elem> exp_;  // length 2*(order-1) so log sums need no reduction
  std::vector<Elem> frob_;
};

/// The field with p^m elements, modulus = lexicographically smallest monic
/// irreducible of degree m over F_p (ordered by the integer sum c_i p^i of
/// its non-leading coefficients). Throws PreconditionError for non-prime p,
/// m == 0, or p^m above 2^16.
FieldPtr make_field(std::uint32_t p, std::uint32_t m);

bool is_prime(std::uint64_t n);

/// Explicit embedding F_small -> F_big, realised by sending the generator of
/// F_small to the smallest-encoded root of its modulus in F_big.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr from, FieldPtr to);
  FieldPtr from() const { return from_; }
  FieldPtr to() const { return to_; }
  Elem operator()(Elem a) const { return image_[a]; }
  /// Inverse on the image; throws PreconditionError if b is not in it.
  Elem preimage(Elem b) const;

 private:
  FieldPtr from_;
  FieldPtr to_;
  std::vector<Elem> image_;
};

/// Value-type convenience wrapper used by the public API and tests; the
/// arithmetic engines work with raw Elem plus a FieldPtr.
struct FieldElement {
  FieldPtr field = nullptr;
  Elem value = 0;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const { return {field, field->neg(value)}; }
  FieldElement inverse() const { return {field, field->inv(value)}; }
  FieldElement pow(std::uint64_t e) const { return {field, field->pow(value, e)}; }
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

}  // namespace ffz
