#pragma once

// Dense univariate polynomials over a finite field. This is the ring
// A = F_q[theta] (and its constant-field extensions F_{q^d}[theta]).

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ffzeta/field.hpp"

namespace ffz {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(field) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);
  Poly(FieldPtr field, std::initializer_list<Elem> coeffs)
      : Poly(field, std::vector<Elem>(coeffs)) {}

  static Poly zero(FieldPtr f) { return Poly(f); }
  static Poly one(FieldPtr f) { return constant(f, 1); }
  static Poly constant(FieldPtr f, Elem c);
  /// c * theta^k.
  static Poly monomial(FieldPtr f, std::uint64_t k, Elem c = 1);
  /// theta - c.
  static Poly linear(FieldPtr f, Elem c);

  FieldPtr field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  /// Lowest index with a nonzero coefficient (the theta-adic valuation).
  std::size_t low_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  Poly scale(Elem c) const;
  Poly shift(std::uint64_t k) const;  // times theta^k
  Poly monic() const;
  Poly derivative() const;
  Poly pow(std::uint64_t e) const;
  /// Coefficients c -> c^Q and theta^i -> theta^{iQ}; equals this^Q when Q is
  /// a power of the characteristic.
  Poly frobenius_power(std::uint64_t Q) const;
  Elem eval(Elem x) const;
  /// Substitute theta := g.
  Poly compose(const Poly& g) const;
  /// Image of this polynomial under a constant-field embedding.
  Poly embed(const FieldEmbedding& e) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  FieldPtr field_ = nullptr;
  std::vector<Elem> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Quotient and remainder; throws PreconditionError if b is zero.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);
/// a / b, throwing InvariantError when the division leaves a remainder.
Poly divide_exact(const Poly& a, const Poly& b);
/// Monic gcd (zero only if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
/// base^e mod m.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// Largest k with v^k | f. Throws PreconditionError for f == 0 or a
/// constant v.
std::uint64_t valuation(const Poly& f, const Poly& v);

bool is_irreducible(const Poly& f);

enum class EnumMode { ExactDegree, DegreeBelow };

/// ExactDegree: the q^d monic polynomials of degree d. DegreeBelow: the q^d
/// elements of A(d) (all polynomials of degree < d, including 0). Both in
/// the order of the integer sum c_i q^i over the listed coefficients.
std::vector<Poly> enumerate_polys(FieldPtr f, unsigned d, EnumMode mode);
std::vector<Poly> enumerate_monic(FieldPtr f, unsigned d);
std::vector<Poly> enumerate_irreducibles(FieldPtr f, unsigned d);
/// Product of all monic irreducibles of degree d (P_d).
Poly product_of_irreducibles(FieldPtr f, unsigned d);

/// Roots of a monic irreducible v of degree d over F_q, in the extension
/// F_{q^d} built by make_field(p, m*d): lambda, lambda^q, ..., lambda^{q^{d-1}}
/// with lambda the smallest-encoded root. Throws PreconditionError when v is
/// reducible.
struct ExtensionRoots {
  FieldPtr big;
  FieldEmbedding embedding;
  std::vector<Elem> roots;
};
ExtensionRoots roots_in_extension(const Poly& v);

}  // namespace ffz
