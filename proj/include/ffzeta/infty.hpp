#pragma once

// Finite-precision arithmetic at the infinite place.
//
// Laurent: truncated Laurent series in u = 1/theta. An element stores the
// coefficients of u^i for start <= i < precision; everything at or beyond
// the precision is unknown. Exact elements (finite Laurent polynomials such
// as images of A) carry the sentinel precision kExact.
//
// Ramified: sum_r iota^r x_r, r = 0..q-2, with iota^{q-1} = -theta. Valuations
// and precisions of ramified elements are measured in scaled units where
// v(u) = q-1 and v(iota) = -1, so |x| = q^{-v/(q-1)}.
//
// Tate: polynomials in t_1..t_s with ramified coefficients, truncated at a
// per-variable degree cap M, with one scaled precision P valid for every
// monomial within the cap (absent monomials are 0 mod P).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffzeta/fraction.hpp"
#include "ffzeta/mvpoly.hpp"

namespace ffz {

inline constexpr long kExact = 1L << 40;

/// a + b, saturating at kExact (an exact operand keeps the result exact).
long sat_add(long a, long b);
/// k * a with the same saturation.
long sat_mul(long k, long a);
/// floor(a / b) for b > 0.
long floor_div(long a, long b);

class Laurent {
 public:
  Laurent() = default;
  /// Zero modulo u^precision.
  explicit Laurent(FieldPtr field, long precision = kExact);
  /// sum_k coeffs[k] u^{start+k} modulo u^precision.
  Laurent(FieldPtr field, long start, std::vector<Elem> coeffs, long precision = kExact);

  /// c u^i.
  static Laurent monomial(FieldPtr field, long i, Elem c = 1, long precision = kExact);
  static Laurent one(FieldPtr field) { return monomial(field, 0); }
  /// theta^k -> u^{-k}; exact.
  static Laurent from_poly(const Poly& p);
  static Laurent from_fraction(const Fraction& x, long precision);

  FieldPtr field() const { return field_; }
  long precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  /// Zero modulo the precision.
  bool is_zero() const { return c_.empty(); }
  /// Index of the first nonzero coefficient; the precision for zero.
  long valuation() const { return c_.empty() ? prec_ : start_; }
  Elem coeff(long i) const;
  long start() const { return start_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_monomial() const { return c_.size() == 1; }

  Laurent truncated(long precision) const;

  Laurent operator-() const;
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent scale(Elem c) const;
  /// Multiply by u^k.
  Laurent shift(long k) const;
  /// Result precision min(precision - 2v, cap). An exact non-monomial needs
  /// a finite cap. Throws PreconditionError for zero.
  Laurent inverse(long cap = kExact) const;
  /// x^Q for Q a power of the characteristic: c -> c^Q, u^i -> u^{Qi}.
  Laurent frobenius(std::uint64_t Q) const;
  Laurent pow(std::uint64_t n) const;
  Laurent embed(const FieldEmbedding& e) const;

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  void normalize();
  FieldPtr field_ = nullptr;
  long start_ = 0;
  std::vector<Elem> c_;
  long prec_ = kExact;
};

class Ramified {
 public:
  Ramified() = default;
  /// Zero modulo scaled precision.
  Ramified(FieldPtr field, std::uint32_t q, long scaled_precision = kExact);

  static Ramified from_laurent(std::uint32_t q, const Laurent& x);
  /// iota^r x for 0 <= r < q-1.
  static Ramified homogeneous(std::uint32_t q, std::uint32_t r, const Laurent& x);
  /// iota^k for any integer k.
  static Ramified iota_power(FieldPtr field, std::uint32_t q, long k);
  static Ramified one(FieldPtr field, std::uint32_t q) { return from_laurent(q, Laurent::one(field)); }
  static Ramified from_poly(std::uint32_t q, const Poly& p) { return from_laurent(q, Laurent::from_poly(p)); }

  FieldPtr field() const { return field_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t grades() const { return q_ - 1; }
  const Laurent& component(std::uint32_t r) const { return comps_.at(r); }

  /// Scaled valuation: min_r ((q-1) v(x_r) - r).
  long valuation() const;
  /// Scaled precision: min_r ((q-1) N_r - r).
  long precision() const;
  bool is_zero() const;
  bool is_exact() const;
  /// The single nonzero grade, if there is at most one.
  std::optional<std::uint32_t> grade() const;

  /// Lowers component precisions so the scaled precision is about P.
  Ramified truncated(long scaled_precision) const;

  Ramified operator-() const;
  friend Ramified operator+(const Ramified& a, const Ramified& b);
  friend Ramified operator-(const Ramified& a, const Ramified& b);
  friend Ramified operator*(const Ramified& a, const Ramified& b);
  Ramified& operator+=(const Ramified& o) { return *this = *this + o; }
  Ramified& operator-=(const Ramified& o) { return *this = *this - o; }
  Ramified& operator*=(const Ramified& o) { return *this = *this * o; }

  Ramified scale(Elem c) const;
  Ramified mul(const Laurent& x) const;
  /// Result precision min(P - 2v, cap) (scaled). Throws PreconditionError
  /// for zero or for exact elements that are not monomials without a cap.
  Ramified inverse(long cap = kExact) const;
  /// x^Q for Q a power of q.
  Ramified frobenius(std::uint64_t Q) const;
  Ramified pow(std::uint64_t n) const;
  Ramified embed(const FieldEmbedding& e) const;

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  FieldPtr field_ = nullptr;
  std::uint32_t q_ = 0;
  std::vector<Laurent> comps_;
};

/// Ring adaptor letting MultiPoly carry ramified coefficients.
struct RamifiedRing {
  using value_type = Ramified;
  FieldPtr field = nullptr;
  std::uint32_t q = 0;

  Ramified zero() const { return Ramified(field, q); }
  Ramified one() const { return Ramified::one(field, q); }
  Ramified add(const Ramified& a, const Ramified& b) const { return a + b; }
  Ramified sub(const Ramified& a, const Ramified& b) const { return a - b; }
  Ramified neg(const Ramified& a) const { return -a; }
  Ramified mul(const Ramified& a, const Ramified& b) const { return a * b; }
  bool is_zero(const Ramified& a) const { return a.is_zero(); }
  bool equal(const Ramified& a, const Ramified& b) const { return (a - b).is_zero(); }
  std::optional<Ramified> invert_if_unit(const Ramified& a) const;
  Ramified frobenius(const Ramified& a, std::uint64_t Q) const { return a.frobenius(Q); }
  Ramified constant(Elem c) const { return Ramified::from_laurent(q, Laurent::monomial(field, 0, c)); }
  Ramified from_poly(const Poly& a) const { return Ramified::from_poly(q, a); }
  std::string format(const Ramified& a) const { return a.to_string(); }
  friend bool operator==(const RamifiedRing&, const RamifiedRing&) = default;
};

class Tate {
 public:
  using Series = mv::MultiPoly<RamifiedRing>;

  Tate() = default;
  /// Zero modulo the scaled precision.
  Tate(FieldPtr field, std::uint32_t q, std::vector<std::string> vars, std::uint32_t cap,
       long scaled_precision = kExact);

  static Tate constant(std::vector<std::string> vars, std::uint32_t cap, const Ramified& c);
  /// The variable vars[i] (exact).
  static Tate variable(FieldPtr field, std::uint32_t q, std::vector<std::string> vars, std::uint32_t cap,
                       std::size_t i);

  FieldPtr field() const { return field_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::string>& vars() const { return series_.vars(); }
  std::uint32_t cap() const { return cap_; }
  long precision() const { return prec_; }
  const Series& series() const { return series_; }
  Ramified coeff(const mv::Exponents& e) const;

  /// Adds c x^e; monomials beyond the cap are dropped. Lowers the
  /// precision to that of c if c is coarser.
  void add_term(const mv::Exponents& e, const Ramified& c);

  /// min over coefficients of the scaled valuation (the Gauss norm); the
  /// precision for zero.
  long gauss_valuation() const;

  Tate truncated(long scaled_precision) const;

  Tate operator-() const;
  friend Tate operator+(const Tate& a, const Tate& b);
  friend Tate operator-(const Tate& a, const Tate& b);
  friend Tate operator*(const Tate& a, const Tate& b);
  Tate& operator+=(const Tate& o) { return *this = *this + o; }
  Tate& operator-=(const Tate& o) { return *this = *this - o; }
  Tate& operator*=(const Tate& o) { return *this = *this * o; }

  Tate scale(const Ramified& c) const;
  Tate pow(std::uint64_t n) const;
  /// Formal inverse; the constant coefficient must be nonzero.
  Tate inverse() const;
  /// Coefficient-wise q^k-th power.
  Tate twist(unsigned k = 1) const;
  /// x_var -> x_var^k, dropping what leaves the cap.
  Tate substitute_power(std::size_t var, std::uint32_t k) const;
  /// x_var -> value with |value| <= 1. The dropped tail beyond the cap is
  /// declared by the caller: every omitted term has scaled valuation at
  /// least tail_valuation. The variable slot stays with exponent 0.
  Tate evaluate(std::size_t var, const Ramified& value, long tail_valuation) const;
  /// Embedding into the same variable list with another variable order is
  /// not supported; this re-types the constant field.
  Tate embed(const FieldEmbedding& e) const;

  nlohmann::json to_json() const;

 private:
  FieldPtr field_ = nullptr;
  std::uint32_t q_ = 0;
  std::uint32_t cap_ = 0;
  long prec_ = kExact;
  Series series_;
};

struct TateComparison {
  bool equal = false;
  /// Scaled precision at which the comparison was made.
  long certified = 0;
  /// Smallest scaled valuation of a coefficient of the difference (the
  /// certified precision when the difference vanishes).
  long margin = 0;
  std::optional<mv::Exponents> witness;
  std::uint32_t q = 0;
  /// certified in units of v(u): floor(certified / (q-1)).
  long certified_exponent() const { return floor_div(certified, q - 1); }
};

/// Throws PreconditionError on cap or variable-list mismatch.
TateComparison tate_equal(const Tate& a, const Tate& b);

/// pi~ = iota theta prod_{j>=1} (1 - theta^{1-q^j})^{-1}, scaled precision
/// at least (q-1) N.
Ramified pi_bar(FieldPtr field, long N);

/// Coefficients of t^m, m <= M, of omega(t) = iota prod_{j>=0}(1 - t/theta^{q^j})^{-1}.
std::vector<Ramified> omega_coeffs(FieldPtr field, long N, std::uint32_t M);
/// omega(vars[i]) as a Tate truncation.
Tate omega(FieldPtr field, long N, std::uint32_t M, const std::vector<std::string>& vars, std::size_t i);
inline Tate omega(FieldPtr field, long N, std::uint32_t M) { return omega(field, N, M, {"t"}, 0); }

/// e_C(x) = sum_j x^{q^j}/D_j, terms kept while their valuation is below
/// scaled precision (q-1) N. field->order() is q; x may live over an
/// extension only through the ramified grading base q.
Ramified carlitz_exp(const Ramified& x, long N);
Laurent carlitz_exp(const Laurent& x, long N);

/// f_C(x; t) = sum_j x^{q^j} / (D_j (theta^{q^j} - t)) in the variable vars[i].
Tate agf(const Ramified& x, long N, std::uint32_t M, const std::vector<std::string>& vars, std::size_t i);
inline Tate agf(const Ramified& x, long N, std::uint32_t M) { return agf(x, N, M, {"t"}, 0); }

/// Tate truncation of a polynomial in A[vars] (exact coefficients).
Tate tate_from(const mv::PolyA& f, std::uint32_t cap);
/// Tate truncation of a polynomial in K[vars], coefficients expanded to
/// Laurent precision N.
Tate tate_from(const mv::PolyK& f, std::uint32_t cap, long N);

}  // namespace ffz
