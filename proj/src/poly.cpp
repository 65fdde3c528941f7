#include "ffzeta/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "ffzeta/errors.hpp"

namespace ffz {

namespace {

void require_same(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw MismatchError("polynomials over different fields");
}

}  // namespace

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (auto c : c_) {
    if (!field_->contains(c)) throw PreconditionError("coefficient outside " + field_->label());
  }
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr f, Elem c) {
  Poly r(f);
  if (c != 0) r.c_.push_back(c);
  return r;
}

Poly Poly::monomial(FieldPtr f, std::uint64_t k, Elem c) {
  Poly r(f);
  if (c != 0) {
    r.c_.assign(k + 1, 0);
    r.c_[k] = c;
  }
  return r;
}

Poly Poly::linear(FieldPtr f, Elem c) {
  Poly r(f);
  r.c_ = {f->neg(c), 1};
  return r;
}

std::size_t Poly::low_degree() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return i;
  }
  return 0;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same(a, b);
  Poly r(a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  const auto* F = a.field_;
  const std::size_t n = a.c_.size();
  const std::size_t m = b.c_.size();
  if (F->is_prime()) {
    // Accumulate in 64 bits and reduce periodically.
    const std::uint64_t p = F->characteristic();
    const std::uint64_t pp = (p - 1) * (p - 1);
    const std::uint64_t flush = pp == 0 ? ~0ull : (~0ull / 2) / pp;
    std::vector<std::uint64_t> acc(n + m - 1, 0);
    const auto& small = n <= m ? a.c_ : b.c_;
    const auto& big = n <= m ? b.c_ : a.c_;
    std::uint64_t rows = 0;
    for (std::size_t i = 0; i < small.size(); ++i) {
      const std::uint64_t ai = small[i];
      if (ai == 0) continue;
      std::uint64_t* out = acc.data() + i;
      for (std::size_t j = 0; j < big.size(); ++j) out[j] += ai * big[j];
      if (++rows == flush) {
        for (auto& x : acc) x %= p;
        rows = 0;
      }
    }
    r.c_.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<Elem>(acc[i] % p);
  } else {
    r.c_.assign(n + m - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (b.c_[j] == 0) continue;
        r.c_[i + j] = F->add(r.c_[i + j], F->mul(a.c_[i], b.c_[j]));
      }
    }
  }
  r.trim();
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.field_ == b.field_ && a.c_ == b.c_;
}

Poly Poly::scale(Elem c) const {
  Poly r(field_);
  if (c == 0) return r;
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->mul(c_[i], c);
  return r;
}

Poly Poly::shift(std::uint64_t k) const {
  Poly r(field_);
  if (is_zero()) return r;
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scale(field_->inv(leading()));
}

Poly Poly::derivative() const {
  Poly r(field_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<std::int64_t>(i % field_->characteristic())));
  r.trim();
  return r;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly result = one(field_);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::frobenius_power(std::uint64_t Q) const {
  Poly r(field_);
  if (is_zero()) return r;
  r.c_.assign((c_.size() - 1) * Q + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * Q] = field_->pow(c_[i], Q);
  return r;
}

Elem Poly::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::compose(const Poly& g) const {
  require_same(*this, g);
  Poly acc(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(field_, c_[i]);
  return acc;
}

Poly Poly::embed(const FieldEmbedding& e) const {
  if (e.from() != field_) throw MismatchError("embedding source does not match polynomial field");
  std::vector<Elem> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = e(c_[i]);
  return Poly(e.to(), std::move(c));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c_[i] == 1;
    if (!unit || i == 0) os << FieldElement{field_, c_[i]};
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
  const auto* F = a.field();
  if (a.degree() < b.degree()) return {Poly(F), a};
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Elem inv_lead = F->inv(bc.back());
  std::vector<Elem> q(r.size() - db, 0);
  if (F->is_prime()) {
    const std::uint64_t p = F->characteristic();
    for (std::size_t k = q.size(); k-- > 0;) {
      const Elem t = F->mul(r[k + db], inv_lead);
      q[k] = t;
      if (t == 0) continue;
      const std::uint64_t nt = p - t;
      for (std::size_t i = 0; i < db; ++i) {
        r[k + i] = static_cast<Elem>((r[k + i] + nt * bc[i]) % p);
      }
      r[k + db] = 0;
    }
  } else {
    for (std::size_t k = q.size(); k-- > 0;) {
      const Elem t = F->mul(r[k + db], inv_lead);
      q[k] = t;
      if (t == 0) continue;
      for (std::size_t i = 0; i < db; ++i) r[k + i] = F->sub(r[k + i], F->mul(t, bc[i]));
      r[k + db] = 0;
    }
  }
  r.resize(db);
  return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly divide_exact(const Poly& a, const Poly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw InvariantError("inexact polynomial division");
  return q;
}

Poly gcd(const Poly& a, const Poly& b) {
  require_same(a, b);
  Poly x = a;
  Poly y = b;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly result = rem(Poly::one(base.field()), m);
  Poly b = rem(base, m);
  while (e > 0) {
    if (e & 1) result = rem(result * b, m);
    e >>= 1;
    if (e > 0) b = rem(b * b, m);
  }
  return result;
}

std::uint64_t valuation(const Poly& f, const Poly& v) {
  if (f.is_zero()) throw PreconditionError("valuation of the zero polynomial is infinite");
  if (v.degree() < 1) throw PreconditionError("valuation with respect to a constant");
  std::uint64_t k = 0;
  Poly g = f;
  for (;;) {
    auto [q, r] = divrem(g, v);
    if (!r.is_zero()) return k;
    g = std::move(q);
    ++k;
  }
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  const auto* F = f.field();
  const Poly x = Poly::monomial(F, 1);
  const std::uint64_t Q = F->order();
  Poly xq = rem(x, f);
  for (long k = 1; 2 * k <= f.degree(); ++k) {
    xq = powmod(xq, Q, f);
    if (gcd(f, xq - x).degree() > 0) return false;
  }
  return true;
}

std::vector<Poly> enumerate_polys(FieldPtr f, unsigned d, EnumMode mode) {
  const std::uint64_t Q = f->order();
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= Q;
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> c(mode == EnumMode::ExactDegree ? d + 1 : d, 0);
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < d; ++i) {
      c[i] = static_cast<Elem>(rest % Q);
      rest /= Q;
    }
    if (mode == EnumMode::ExactDegree) c[d] = 1;
    out.emplace_back(f, std::move(c));
  }
  return out;
}

std::vector<Poly> enumerate_monic(FieldPtr f, unsigned d) {
  return enumerate_polys(f, d, EnumMode::ExactDegree);
}

std::vector<Poly> enumerate_irreducibles(FieldPtr f, unsigned d) {
  if (d == 0) throw PreconditionError("irreducibles have positive degree");
  std::vector<Poly> out;
  for (auto& g : enumerate_monic(f, d)) {
    if (is_irreducible(g)) out.push_back(std::move(g));
  }
  return out;
}

Poly product_of_irreducibles(FieldPtr f, unsigned d) {
  Poly acc = Poly::one(f);
  for (const auto& v : enumerate_irreducibles(f, d)) acc = acc * v;
  return acc;
}

ExtensionRoots roots_in_extension(const Poly& v) {
  if (!v.is_monic() || !is_irreducible(v)) {
    throw PreconditionError("roots_in_extension needs a monic irreducible, got " + v.to_string());
  }
  const auto* F = v.field();
  const auto d = static_cast<std::uint32_t>(v.degree());
  FieldPtr big = make_field(F->characteristic(), F->degree() * d);
  FieldEmbedding emb(F, big);
  const Poly vb = v.embed(emb);
  ExtensionRoots out{big, emb, {}};
  for (Elem x = 0; x < big->order(); ++x) {
    if (vb.eval(x) == 0) {
      Elem r = x;
      for (std::uint32_t i = 0; i < d; ++i) {
        out.roots.push_back(r);
        r = big->pow(r, F->order());
      }
      if (r != x) throw InvariantError("Frobenius orbit of a root did not close");
      break;
    }
  }
  if (out.roots.size() != d) throw InvariantError("root search failed for " + v.to_string());
  return out;
}

}  // namespace ffz
