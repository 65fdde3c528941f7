#include "ffzeta/carlitz.hpp"

#include <map>
#include <memory>

#include "ffzeta/errors.hpp"

namespace ffz {

Poly eval_tpoly(const TPoly& f, const Poly& x) {
  Poly r(x.field());
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

TPoly derivative_tpoly(const TPoly& f) {
  TPoly r;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const auto* F = f[i].field();
    r.push_back(f[i].scale(F->from_int(static_cast<std::int64_t>(i))));
  }
  return r;
}

std::uint64_t BaseQ::length() const {
  std::uint64_t l = 0;
  for (auto d : digits) l += d;
  return l;
}

BaseQ base_q(std::uint64_t n, std::uint64_t q) {
  if (q < 2) throw PreconditionError("base must be at least 2");
  BaseQ b{n, q, {}};
  while (n > 0) {
    b.digits.push_back(static_cast<std::uint32_t>(n % q));
    n /= q;
  }
  return b;
}

CarlitzCache::CarlitzCache(FieldPtr field) : field_(field), q_(field->order()) {
  D_.push_back(Poly::one(field));
  ell_.push_back(Poly::one(field));
  b_.push_back(TPoly{Poly::one(field)});
  bracket_.push_back(Poly(field));  // unused slot for d = 0
}

const Poly& CarlitzCache::bracket(unsigned d) {
  if (d == 0) throw PreconditionError("[d] needs d >= 1");
  std::lock_guard lock(mu_);
  while (bracket_.size() <= d) {
    std::uint64_t Q = 1;
    for (std::size_t k = 0; k < bracket_.size(); ++k) Q *= q_;
    bracket_.push_back(Poly::monomial(field_, Q) - Poly::monomial(field_, 1));
  }
  return bracket_[d];
}

const Poly& CarlitzCache::D(unsigned j) {
  if (j > 0) bracket(j);
  std::lock_guard lock(mu_);
  while (D_.size() <= j) {
    const std::size_t k = D_.size();
    D_.push_back(bracket_[k] * D_.back().frobenius_power(q_));
  }
  return D_[j];
}

const Poly& CarlitzCache::ell(unsigned e) {
  std::lock_guard lock(mu_);
  while (ell_.size() <= e) {
    const std::size_t k = ell_.size();
    std::uint64_t Q = 1;
    for (std::size_t i = 0; i < k; ++i) Q *= q_;
    ell_.push_back(ell_.back() * (Poly::monomial(field_, 1) - Poly::monomial(field_, Q)));
  }
  return ell_[e];
}

const TPoly& CarlitzCache::b_tpoly(unsigned d) {
  std::lock_guard lock(mu_);
  while (b_.size() <= d) {
    const std::size_t k = b_.size() - 1;  // multiply b_k by (t - theta^{q^k})
    std::uint64_t Q = 1;
    for (std::size_t i = 0; i < k; ++i) Q *= q_;
    const Poly root = Poly::monomial(field_, Q);
    const TPoly& prev = b_.back();
    TPoly next(prev.size() + 1, Poly(field_));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] += prev[i];
      next[i] -= prev[i] * root;
    }
    b_.push_back(std::move(next));
  }
  return b_[d];
}

const std::vector<Fraction>& CarlitzCache::E_coeffs(unsigned d) {
  {
    std::lock_guard lock(mu_);
    if (E_.size() > d) return E_[d];
  }
  // Build the dependencies outside the lock; they take it themselves.
  for (unsigned i = 0; i <= d; ++i) {
    D(i);
    ell(i);
  }
  std::lock_guard lock(mu_);
  while (E_.size() <= d) {
    const unsigned k = static_cast<unsigned>(E_.size());
    std::vector<Fraction> c;
    std::uint64_t Q = 1;
    for (unsigned i = 0; i <= k; ++i, Q *= q_) {
      const Poly den = D_[i] * ell_[k - i].frobenius_power(Q);
      c.push_back(Fraction(Poly::one(field_), den));
    }
    E_.push_back(std::move(c));
  }
  return E_[d];
}

mv::PolyA CarlitzCache::b(unsigned d) {
  const TPoly& f = b_tpoly(d);
  mv::PolyA r(PolyRing{field_}, {"t"});
  for (std::size_t i = 0; i < f.size(); ++i) r.add_term({static_cast<std::uint32_t>(i)}, f[i]);
  return r;
}

mv::PolyK CarlitzCache::E(unsigned d) { return E_in(*this, d, {"z"}, 0); }

Poly CarlitzCache::E_at(unsigned d, const Poly& x) {
  const auto& c = E_coeffs(d);
  Fraction acc(field_);
  Poly xp = x;
  for (unsigned i = 0; i <= d; ++i) {
    acc += c[i] * Fraction(xp);
    xp = xp.frobenius_power(q_);
  }
  if (!acc.is_polynomial()) throw InvariantError("E_d(a) is not in A");
  return acc.num();
}

CarlitzCache& carlitz_cache(FieldPtr field) {
  static std::mutex mu;
  static std::map<FieldPtr, std::unique_ptr<CarlitzCache>> caches;
  std::lock_guard lock(mu);
  auto& slot = caches[field];
  if (!slot) slot = std::make_unique<CarlitzCache>(field);
  return *slot;
}

TwistedA carlitz_action(const Poly& a) {
  const FieldPtr F = a.field();
  const std::uint64_t q = F->order();
  PolyRing ring{F};
  const TwistedA c_theta(ring, q, {Poly::monomial(F, 1), Poly::one(F)});
  TwistedA acc(ring, q);
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    acc = acc * c_theta + TwistedA(ring, q, {Poly::constant(F, a.coeff(i))});
  }
  return acc;
}

mv::PolyK to_K(const mv::PolyA& f) {
  FractionField K{f.ring().field};
  mv::PolyK r(K, f.vars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, Fraction(c));
  return r;
}

mv::PolyK b_in(CarlitzCache& cc, unsigned d, const std::vector<std::string>& vars, std::size_t i) {
  const TPoly& f = cc.b_tpoly(d);
  mv::PolyK r(FractionField{cc.field()}, vars);
  mv::Exponents e(vars.size(), 0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    e.at(i) = static_cast<std::uint32_t>(k);
    r.add_term(e, Fraction(f[k]));
  }
  return r;
}

mv::PolyK E_in(CarlitzCache& cc, unsigned d, const std::vector<std::string>& vars, std::size_t i) {
  const auto& c = cc.E_coeffs(d);
  mv::PolyK r(FractionField{cc.field()}, vars);
  mv::Exponents e(vars.size(), 0);
  std::uint64_t Q = 1;
  for (unsigned k = 0; k <= d; ++k, Q *= cc.q()) {
    e.at(i) = static_cast<std::uint32_t>(Q);
    r.add_term(e, c[k]);
  }
  return r;
}

Poly carlitz_factorial(FieldPtr field, std::uint64_t n) {
  CarlitzCache& cc = carlitz_cache(field);
  const BaseQ b = base_q(n, cc.q());
  Poly r = Poly::one(field);
  for (std::size_t i = 0; i < b.digits.size(); ++i) {
    if (b.digits[i] != 0) r = r * cc.D(static_cast<unsigned>(i)).pow(b.digits[i]);
  }
  return r;
}

namespace {

void check_parts(std::uint64_t n, const std::vector<std::uint64_t>& parts) {
  std::uint64_t s = 0;
  for (auto k : parts) s += k;
  if (s != n) throw PreconditionError("multinomial parts do not sum to n");
}

// Binomial coefficient mod p via Lucas.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t a = n % p;
    const std::uint64_t b = k % p;
    if (b > a) return 0;
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < b; ++i) {
      num = num * ((a - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    // den is invertible mod p since b < p.
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = r * num % p * inv % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

// [j]^e = sum_k C(e,k) (-1)^{e-k} theta^{e + k(q^j - 1)}.
Poly bracket_power(FieldPtr F, std::uint64_t qj, std::uint64_t e) {
  const std::uint32_t p = F->characteristic();
  std::vector<Elem> c(e + e * (qj - 1) + 1, 0);
  for (std::uint64_t k = 0; k <= e; ++k) {
    std::uint32_t b = binom_mod_p(e, k, p);
    if (b == 0) continue;
    if ((e - k) % 2 == 1) b = (p - b) % p;
    c[e + k * (qj - 1)] = b;
  }
  return Poly(F, std::move(c));
}

}  // namespace

Poly bracket_multinomial(FieldPtr field, std::uint64_t n, const std::vector<std::uint64_t>& parts) {
  check_parts(n, parts);
  Poly den = Poly::one(field);
  for (auto k : parts) den = den * carlitz_factorial(field, k);
  return divide_exact(carlitz_factorial(field, n), den);
}

Poly bracket_multinomial_fast(FieldPtr field, std::uint64_t n, const std::vector<std::uint64_t>& parts) {
  check_parts(n, parts);
  const std::uint64_t q = field->order();
  Poly r = Poly::one(field);
  std::uint64_t qj = q;
  for (unsigned j = 1; qj <= n; ++j, qj *= q) {
    std::uint64_t e = n / qj;
    std::uint64_t sub = 0;
    for (auto k : parts) sub += k / qj;
    if (sub > e) throw InvariantError("negative bracket exponent in a multinomial");
    e -= sub;
    if (e > 0) r = r * bracket_power(field, qj, e);
  }
  return r;
}

IdentityReport verify_ed_recursion(FieldPtr field, unsigned d) {
  Stopwatch sw;
  IdentityReport rep;
  rep.identity = "ed-recursion";
  rep.params = {{"q", field->order()}, {"d", d}};
  CarlitzCache& cc = carlitz_cache(field);
  const mv::PolyK Ed = cc.E(d);
  const mv::PolyK lhs = Ed.pow(cc.q());
  const mv::PolyK rhs = Ed + cc.E(d + 1).scalar_mul(Fraction(cc.bracket(d + 1)));
  compare_exact(rep, lhs, rhs);
  rep.millis = sw.millis();
  return rep;
}

}  // namespace ffz
