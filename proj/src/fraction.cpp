#include "ffzeta/fraction.hpp"

#include <ostream>

#include "ffzeta/errors.hpp"

namespace ffz {

Fraction::Fraction(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}

Fraction::Fraction(Poly num, Poly den) {
  if (den.is_zero()) throw PreconditionError("fraction with zero denominator");
  if (num.is_zero()) {
    num_ = Poly(den.field());
    den_ = Poly::one(den.field());
    return;
  }
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = divide_exact(num, g);
      den = divide_exact(den, g);
    }
  }
  const Elem lead = den.leading();
  if (lead != 1) {
    const Elem inv = den.field()->inv(lead);
    num = num.scale(inv);
    den = den.scale(inv);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

long Fraction::degree() const {
  if (is_zero()) throw PreconditionError("degree of zero fraction");
  return num_.degree() - den_.degree();
}

Fraction Fraction::operator-() const {
  Fraction r(*this);
  r.num_ = -r.num_;
  return r;
}

namespace {

// a/b + c/d with the usual gcd(b, d) split so the final reduction only has
// to look at the common part of the denominators.
Fraction add_impl(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
  if (b == d) {
    return Fraction(a + c, b);
  }
  if (b.is_one()) return Fraction(a * d + c, d);
  if (d.is_one()) return Fraction(a + c * b, b);
  Poly g = gcd(b, d);
  if (g.is_one()) return Fraction(a * d + c * b, b * d);
  Poly b1 = divide_exact(b, g);
  Poly d1 = divide_exact(d, g);
  return Fraction(a * d1 + c * b1, b1 * d);
}

}  // namespace

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return add_impl(a.num_, a.den_, b.num_, b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }

Fraction operator*(const Fraction& a, const Fraction& b) {
  if (a.is_zero() || b.is_zero()) return Fraction(a.field());
  if (a.is_polynomial() && b.is_polynomial()) return Fraction(a.num_ * b.num_);
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Poly n1 = g1.is_one() ? a.num_ : divide_exact(a.num_, g1);
  Poly d2 = g1.is_one() ? b.den_ : divide_exact(b.den_, g1);
  Poly n2 = g2.is_one() ? b.num_ : divide_exact(b.num_, g2);
  Poly d1 = g2.is_one() ? a.den_ : divide_exact(a.den_, g2);
  Fraction r(a.field());
  r.num_ = n1 * n2;
  r.den_ = d1 * d2;  // already coprime and monic
  return r;
}

Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inverse(); }

Fraction Fraction::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero fraction");
  return Fraction(den_, num_);
}

Fraction Fraction::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Fraction r(num_.pow(static_cast<std::uint64_t>(e)));
  r.den_ = den_.pow(static_cast<std::uint64_t>(e));
  return r;
}

Fraction Fraction::frobenius_power(std::uint64_t Q) const {
  Fraction r(num_.frobenius_power(Q));
  r.den_ = den_.frobenius_power(Q);
  return r;
}

Fraction Fraction::embed(const FieldEmbedding& e) const {
  Fraction r(num_.embed(e));
  r.den_ = den_.embed(e);
  return r;
}

std::string Fraction::to_string(const std::string& var) const {
  if (den_.is_one()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.to_string(); }

}  // namespace ffz
