#pragma once

// Special polynomials attached to the Carlitz module over A = F_q[theta]:
// brackets [d], the products D_j, ell_e, b_d(t), the normalized Carlitz
// polynomials E_d(z), Carlitz factorials and bracket multinomials.

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "ffzeta/fraction.hpp"
#include "ffzeta/mvpoly.hpp"
#include "ffzeta/report.hpp"

namespace ffz {

/// Polynomial in one auxiliary variable t with coefficients in A, dense and
/// ascending. Used for b_d(t).
using TPoly = std::vector<Poly>;

/// Evaluate sum c_i t^i at t := x (an element of A).
Poly eval_tpoly(const TPoly& f, const Poly& x);
TPoly derivative_tpoly(const TPoly& f);

/// Base-q digits, little-endian.
struct BaseQ {
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> digits;
  std::uint64_t length() const;
};
BaseQ base_q(std::uint64_t n, std::uint64_t q);

class CarlitzCache {
 public:
  explicit CarlitzCache(FieldPtr field);

  FieldPtr field() const { return field_; }
  std::uint64_t q() const { return q_; }

  /// theta^{q^d} - theta, d >= 1.
  const Poly& bracket(unsigned d);
  const Poly& D(unsigned j);
  /// prod_{j=1}^{e} (theta - theta^{q^j}).
  const Poly& ell(unsigned e);
  /// prod_{j<d} (t - theta^{q^j}).
  const TPoly& b_tpoly(unsigned d);
  /// Coefficient of z^{q^i} in E_d, i = 0..d.
  const std::vector<Fraction>& E_coeffs(unsigned d);

  mv::PolyA b(unsigned d);
  mv::PolyK E(unsigned d);

  /// E_d(x) for x in A; an element of A (checked).
  Poly E_at(unsigned d, const Poly& x);

 private:
  FieldPtr field_;
  std::uint64_t q_;
  std::mutex mu_;
  std::deque<Poly> bracket_;
  std::deque<Poly> D_;
  std::deque<Poly> ell_;
  std::deque<TPoly> b_;
  std::deque<std::vector<Fraction>> E_;
};

/// Shared cache per field.
CarlitzCache& carlitz_cache(FieldPtr field);

/// Sum_i c_i tau^i with tau c = c^q tau. R must provide frobenius(a, Q).
template <CoefficientRing R>
class TwistedPoly {
 public:
  using Coeff = typename R::value_type;

  TwistedPoly(R ring, std::uint64_t q, std::vector<Coeff> coeffs = {})
      : ring_(std::move(ring)), q_(q), c_(std::move(coeffs)) {
    trim();
  }

  const R& ring() const { return ring_; }
  std::uint64_t q() const { return q_; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ring_.zero(); }

  friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
    std::vector<Coeff> r(std::max(a.c_.size(), b.c_.size()), a.ring_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.ring_.add(a.coeff(i), b.coeff(i));
    return TwistedPoly(a.ring_, a.q_, std::move(r));
  }

  /// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^{q^i} tau^{i+j}.
  friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return TwistedPoly(a.ring_, a.q_);
    std::vector<Coeff> r(a.c_.size() + b.c_.size() - 1, a.ring_.zero());
    std::uint64_t Q = 1;
    for (std::size_t i = 0; i < a.c_.size(); ++i, Q *= a.q_) {
      if (a.ring_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.ring_.is_zero(b.c_[j])) continue;
        r[i + j] = a.ring_.add(r[i + j], a.ring_.mul(a.c_[i], a.ring_.frobenius(b.c_[j], Q)));
      }
    }
    return TwistedPoly(a.ring_, a.q_, std::move(r));
  }

  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.ring_.equal(a.c_[i], b.c_[i])) return false;
    }
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && ring_.is_zero(c_.back())) c_.pop_back();
  }
  R ring_;
  std::uint64_t q_;
  std::vector<Coeff> c_;
};

using TwistedA = TwistedPoly<PolyRing>;

/// The image of a under theta -> tau + theta.
TwistedA carlitz_action(const Poly& a);

/// a with theta replaced by the variable vars[i].
template <CoefficientRing R>
mv::MultiPoly<R> chi(const Poly& a, const R& ring, const std::vector<std::string>& vars, std::size_t i) {
  mv::MultiPoly<R> r(ring, vars);
  mv::Exponents e(vars.size(), 0);
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    if (a.coeff(k) == 0) continue;
    e.at(i) = static_cast<std::uint32_t>(k);
    r.add_term(e, ring.constant(a.coeff(k)));
  }
  return r;
}

/// Coefficient-wise q^i-th power; monomials unchanged.
template <CoefficientRing R>
mv::MultiPoly<R> twist(unsigned i, const mv::MultiPoly<R>& f, std::uint64_t q) {
  std::uint64_t Q = 1;
  for (unsigned k = 0; k < i; ++k) Q *= q;
  return f.map_coefficients([&](const auto& c) { return f.ring().frobenius(c, Q); });
}

/// b_d(t_i) as an element of K[vars].
mv::PolyK b_in(CarlitzCache& cc, unsigned d, const std::vector<std::string>& vars, std::size_t i);
/// E_d(var_i) as an element of K[vars].
mv::PolyK E_in(CarlitzCache& cc, unsigned d, const std::vector<std::string>& vars, std::size_t i);
mv::PolyK to_K(const mv::PolyA& f);

Poly carlitz_factorial(FieldPtr field, std::uint64_t n);
/// Pi(n) / prod Pi(k_i) by exact division. Throws PreconditionError when
/// the parts do not sum to n and InvariantError if the quotient is not in A.
Poly bracket_multinomial(FieldPtr field, std::uint64_t n, const std::vector<std::uint64_t>& parts);
/// Same value, assembled from powers of the brackets:
/// Pi(n) = prod_j [j]^{floor(n/q^j)}.
Poly bracket_multinomial_fast(FieldPtr field, std::uint64_t n, const std::vector<std::uint64_t>& parts);

/// E_d(z)^q == E_d(z) + [d+1] E_{d+1}(z).
IdentityReport verify_ed_recursion(FieldPtr field, unsigned d);

}  // namespace ffz
