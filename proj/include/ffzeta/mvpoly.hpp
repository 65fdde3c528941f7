#pragma once

// Sparse multivariate polynomials over a pluggable coefficient ring.
//
// Terms live in a map keyed by exponent vectors, ordered graded-lex with the
// declared variable order (so the last declared variable, conventionally z,
// is the least significant). Zero coefficients are never stored.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffzeta/errors.hpp"
#include "ffzeta/rings.hpp"

namespace ffz::mv {

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t s = 0;
  for (auto x : e) s += x;
  return s;
}

struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Degree of the zero polynomial was requested.
class UndefinedDegree : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

template <CoefficientRing R>
class MultiPoly {
 public:
  using Coeff = typename R::value_type;
  using TermMap = std::map<Exponents, Coeff, GradedLex>;

  MultiPoly() = default;
  MultiPoly(R ring, std::vector<std::string> vars) : ring_(std::move(ring)), vars_(std::move(vars)) {}

  static MultiPoly constant(R ring, std::vector<std::string> vars, const Coeff& c) {
    MultiPoly p(std::move(ring), std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }
  /// The polynomial consisting of the single variable `index`.
  static MultiPoly variable(R ring, std::vector<std::string> vars, std::size_t index) {
    MultiPoly p(std::move(ring), std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e.at(index) = 1;
    p.add_term(e, p.ring_.one());
    return p;
  }

  const R& ring() const { return ring_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::size_t var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw PreconditionError("unknown variable " + name);
    return static_cast<std::size_t>(it - vars_.begin());
  }

  Coeff coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  /// Adds c * x^e in place.
  void add_term(const Exponents& e, const Coeff& c) {
    if (e.size() != vars_.size()) throw MismatchError("exponent arity mismatch");
    if (ring_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(ring_, vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, ring_.neg(c));
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, ring_.neg(c));
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.ring_, a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, a.ring_.mul(ca, cb));
      }
    }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !a.ring_.equal(ia->second, ib->second)) return false;
    }
    return true;
  }

  MultiPoly scalar_mul(const Coeff& c) const {
    MultiPoly r(ring_, vars_);
    if (ring_.is_zero(c)) return r;
    for (const auto& [e, x] : terms_) r.add_term(e, ring_.mul(x, c));
    return r;
  }

  MultiPoly pow(std::uint64_t n) const {
    MultiPoly result = constant(ring_, vars_, ring_.one());
    MultiPoly base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  /// Multiply by x_var^k.
  MultiPoly shift(std::size_t var, std::uint32_t k) const {
    MultiPoly r(ring_, vars_);
    for (const auto& [key, c] : terms_) {
      Exponents e = key;
      e[var] += k;
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  /// Apply fn to every coefficient (dropping results that become zero).
  template <class Fn>
  MultiPoly map_coefficients(Fn&& fn) const {
    MultiPoly r(ring_, vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  /// Exact degree in one variable. Throws UndefinedDegree for zero.
  std::uint64_t degree(std::size_t var) const {
    if (is_zero()) throw UndefinedDegree("degree of the zero polynomial");
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max<std::uint64_t>(d, e.at(var));
    return d;
  }
  std::uint64_t degree(const std::string& var) const { return degree(var_index(var)); }
  std::uint64_t total_degree() const {
    if (is_zero()) throw UndefinedDegree("degree of the zero polynomial");
    return mv::total_degree(terms_.rbegin()->first);
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mv::total_degree(terms_.begin()->first) == 0);
  }
  Coeff constant_value() const {
    if (!is_constant()) throw PreconditionError("polynomial is not constant");
    return terms_.empty() ? ring_.zero() : terms_.begin()->second;
  }

  /// Coefficient of x_var^k as a polynomial in the remaining variables
  /// (the variable slot is kept, with exponent 0).
  MultiPoly coefficient_in(std::size_t var, std::uint32_t k) const {
    MultiPoly r(ring_, vars_);
    for (const auto& [key, c] : terms_) {
      if (key[var] != k) continue;
      Exponents e = key;
      e[var] = 0;
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  /// Simultaneous substitution x_i := bindings[i]. Unbound variables stay.
  MultiPoly substitute(const std::map<std::size_t, MultiPoly>& bindings) const {
    for (const auto& [i, b] : bindings) {
      if (i >= vars_.size()) throw PreconditionError("binding for a variable not in the list");
      check_compatible(b);
    }
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    auto power_of = [&](std::size_t i, std::uint32_t k) -> const MultiPoly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(ring_, vars_, ring_.one()));
      while (cache.size() <= k) cache.push_back(cache.back() * bindings.at(i));
      return cache[k];
    };
    MultiPoly r(ring_, vars_);
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      MultiPoly term = constant(ring_, vars_, c);
      for (const auto& [i, b] : bindings) {
        if (e[i] == 0) continue;
        rest[i] = 0;
        term = term * power_of(i, e[i]);
      }
      r += term.shift_all(rest);
    }
    return r;
  }
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const {
    return substitute(std::map<std::size_t, MultiPoly>{{var, value}});
  }
  MultiPoly substitute_value(std::size_t var, const Coeff& value) const {
    return substitute(var, constant(ring_, vars_, value));
  }

  /// f = g * quotient, dividing in the variable `var`. g's leading
  /// coefficient in var must be a unit constant. Throws InvariantError on a
  /// nonzero remainder.
  friend MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    f.check_compatible(g);
    if (g.is_zero()) throw PreconditionError("division by the zero polynomial");
    const auto dg = static_cast<std::uint32_t>(g.degree(var));
    MultiPoly lead = g.coefficient_in(var, dg);
    if (!lead.is_constant()) throw PreconditionError("divisor leading coefficient is not constant");
    auto inv = g.ring_.invert_if_unit(lead.constant_value());
    if (!inv) throw PreconditionError("divisor leading coefficient is not a unit");
    MultiPoly rest = f;
    MultiPoly quotient(f.ring_, f.vars_);
    while (!rest.is_zero()) {
      const auto dr = static_cast<std::uint32_t>(rest.degree(var));
      if (dr < dg) break;
      MultiPoly top = rest.coefficient_in(var, dr).scalar_mul(*inv).shift(var, dr - dg);
      quotient += top;
      rest -= top * g;
    }
    if (!rest.is_zero()) throw InvariantError("exact_divide left a nonzero remainder");
    return quotient;
  }

  /// First monomial (graded-lex order) where a and b differ.
  friend std::optional<Exponents> first_difference(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly d = a - b;
    if (d.is_zero()) return std::nullopt;
    return d.terms_.begin()->first;
  }

  template <class CoeffToString>
  std::string to_string(CoeffToString&& fmt) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << fmt(it->second) << ")";
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << vars_[i];
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw MismatchError("variable lists differ");
    if (!(ring_ == o.ring_)) throw MismatchError("coefficient rings differ");
  }

  MultiPoly shift_all(const Exponents& by) const {
    MultiPoly r(ring_, vars_);
    for (const auto& [key, c] : terms_) {
      Exponents e = key;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += by[i];
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  R ring_{};
  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Frequently used instantiations.
using PolyA = MultiPoly<PolyRing>;
using PolyK = MultiPoly<FractionField>;

/// Variable names t1..ts followed optionally by z.
std::vector<std::string> t_vars(std::size_t s, bool with_z);

}  // namespace ffz::mv
