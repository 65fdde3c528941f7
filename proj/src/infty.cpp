#include "ffzeta/infty.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ffzeta/carlitz.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/serialize.hpp"

namespace ffz {

long sat_add(long a, long b) {
  if (a >= kExact || b >= kExact) return kExact;
  return std::min(a + b, kExact);
}

long sat_mul(long k, long a) {
  if (a >= kExact) return kExact;
  if (a > 0 && k > 0 && a > kExact / k) return kExact;
  return std::min(k * a, kExact);
}

long floor_div(long a, long b) {
  long d = a / b;
  if ((a % b != 0) && (a < 0)) --d;
  return d;
}

namespace {

long ceil_div(long a, long b) { return -floor_div(-a, b); }

void check_same(FieldPtr a, FieldPtr b) {
  if (a != b) throw MismatchError("elements over different coefficient fields");
}

}  // namespace

// ---------------------------------------------------------------- Laurent

Laurent::Laurent(FieldPtr field, long precision) : field_(field), prec_(std::min(precision, kExact)) {}

Laurent::Laurent(FieldPtr field, long start, std::vector<Elem> coeffs, long precision)
    : field_(field), start_(start), c_(std::move(coeffs)), prec_(std::min(precision, kExact)) {
  normalize();
}

void Laurent::normalize() {
  if (prec_ < kExact) {
    const long keep = std::max(0L, prec_ - start_);
    if (static_cast<long>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    start_ += static_cast<long>(lead);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.empty()) start_ = 0;
}

Laurent Laurent::monomial(FieldPtr field, long i, Elem c, long precision) {
  return Laurent(field, i, {c}, precision);
}

Laurent Laurent::from_poly(const Poly& p) {
  if (p.is_zero()) return Laurent(p.field());
  std::vector<Elem> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Laurent(p.field(), -p.degree(), std::move(c));
}

Laurent Laurent::from_fraction(const Fraction& x, long precision) {
  const Laurent num = from_poly(x.num());
  if (x.is_zero()) return Laurent(x.field());
  const Laurent den = from_poly(x.den());
  if (den.is_monomial()) return num * den.inverse();
  return (num * den.inverse(sat_add(precision, x.num().degree()))).truncated(precision);
}

Elem Laurent::coeff(long i) const {
  if (i < start_ || i >= start_ + static_cast<long>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i - start_)];
}

Laurent Laurent::truncated(long precision) const {
  Laurent r = *this;
  r.prec_ = std::min(prec_, precision);
  r.normalize();
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  check_same(a.field_, b.field_);
  const long prec = std::min(a.prec_, b.prec_);
  if (a.c_.empty() && b.c_.empty()) return Laurent(a.field_, prec);
  long lo = kExact, hi = -kExact;
  for (const Laurent* x : {&a, &b}) {
    if (x->c_.empty()) continue;
    lo = std::min(lo, x->start_);
    hi = std::max(hi, x->start_ + static_cast<long>(x->c_.size()));
  }
  hi = std::min(hi, prec);
  if (hi <= lo) return Laurent(a.field_, prec);
  std::vector<Elem> r(static_cast<std::size_t>(hi - lo), 0);
  for (const Laurent* x : {&a, &b}) {
    for (std::size_t k = 0; k < x->c_.size(); ++k) {
      const long i = x->start_ + static_cast<long>(k);
      if (i >= hi) break;
      auto& slot = r[static_cast<std::size_t>(i - lo)];
      slot = a.field_->add(slot, x->c_[k]);
    }
  }
  return Laurent(a.field_, lo, std::move(r), prec);
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

Laurent operator*(const Laurent& a, const Laurent& b) {
  check_same(a.field_, b.field_);
  const long prec = std::min(sat_add(a.prec_, b.valuation()), sat_add(b.prec_, a.valuation()));
  if (a.c_.empty() || b.c_.empty()) return Laurent(a.field_, prec);
  const long start = a.start_ + b.start_;
  long len = static_cast<long>(a.c_.size() + b.c_.size() - 1);
  if (prec < kExact) len = std::min(len, std::max(0L, prec - start));
  if (len <= 0) return Laurent(a.field_, prec);
  const FieldPtr F = a.field_;
  std::vector<Elem> r(static_cast<std::size_t>(len), 0);
  const long na = static_cast<long>(a.c_.size());
  const long nb = static_cast<long>(b.c_.size());
  if (F->is_prime() && F->characteristic() < 256) {
    const std::uint64_t p = F->characteristic();
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(len), 0);
    for (long i = 0; i < na && i < len; ++i) {
      const std::uint64_t x = a.c_[static_cast<std::size_t>(i)];
      if (x == 0) continue;
      const long jmax = std::min(nb, len - i);
      for (long j = 0; j < jmax; ++j) acc[static_cast<std::size_t>(i + j)] += x * b.c_[static_cast<std::size_t>(j)];
    }
    for (long k = 0; k < len; ++k) r[static_cast<std::size_t>(k)] = static_cast<Elem>(acc[static_cast<std::size_t>(k)] % p);
  } else {
    for (long i = 0; i < na && i < len; ++i) {
      const Elem x = a.c_[static_cast<std::size_t>(i)];
      if (x == 0) continue;
      const long jmax = std::min(nb, len - i);
      for (long j = 0; j < jmax; ++j) {
        auto& slot = r[static_cast<std::size_t>(i + j)];
        slot = F->add(slot, F->mul(x, b.c_[static_cast<std::size_t>(j)]));
      }
    }
  }
  return Laurent(F, start, std::move(r), prec);
}

Laurent Laurent::scale(Elem c) const {
  Laurent r = *this;
  for (auto& x : r.c_) x = field_->mul(x, c);
  r.normalize();
  return r;
}

Laurent Laurent::shift(long k) const {
  Laurent r = *this;
  if (!r.c_.empty()) r.start_ += k;
  r.prec_ = sat_add(prec_, k);
  return r;
}

Laurent Laurent::inverse(long cap) const {
  if (c_.empty()) throw PreconditionError("inverse of an element that is zero modulo its precision");
  const long v = start_;
  const long prec = std::min(sat_add(prec_, -2 * v), cap);
  if (prec >= kExact) {
    if (!is_monomial()) throw PreconditionError("inverse of an exact series needs a finite precision cap");
    return monomial(field_, -v, field_->inv(c_[0]));
  }
  const long len = prec + v;
  if (len <= 0) return Laurent(field_, prec);
  const Elem inv0 = field_->inv(c_[0]);
  std::vector<Elem> b(static_cast<std::size_t>(len), 0);
  b[0] = inv0;
  const long n = static_cast<long>(c_.size());
  for (long k = 1; k < len; ++k) {
    Elem s = 0;
    const long imax = std::min(k, n - 1);
    for (long i = 1; i <= imax; ++i) {
      const Elem ci = c_[static_cast<std::size_t>(i)];
      if (ci != 0) s = field_->add(s, field_->mul(ci, b[static_cast<std::size_t>(k - i)]));
    }
    b[static_cast<std::size_t>(k)] = field_->neg(field_->mul(inv0, s));
  }
  return Laurent(field_, -v, std::move(b), prec);
}

Laurent Laurent::frobenius(std::uint64_t Q) const {
  if (Q == 1) return *this;
  Laurent r(field_, sat_mul(static_cast<long>(Q), prec_));
  if (c_.empty()) return r;
  std::vector<Elem> c((c_.size() - 1) * Q + 1, 0);
  for (std::size_t k = 0; k < c_.size(); ++k) c[k * Q] = field_->pow(c_[k], Q);
  return Laurent(field_, start_ * static_cast<long>(Q), std::move(c), r.prec_);
}

Laurent Laurent::pow(std::uint64_t n) const {
  Laurent result = one(field_);
  Laurent base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Laurent Laurent::embed(const FieldEmbedding& e) const {
  if (e.from() != field_) throw MismatchError("embedding source is not the coefficient field");
  std::vector<Elem> c;
  c.reserve(c_.size());
  for (Elem x : c_) c.push_back(e(x));
  return Laurent(e.to(), start_, std::move(c), prec_);
}

nlohmann::json Laurent::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (Elem c : c_) coeffs.push_back(elem_to_json(field_, c));
  return {{"valuation", valuation()},
          {"coefficients", coeffs},
          {"precision", is_exact() ? nlohmann::json(nullptr) : nlohmann::json(prec_)}};
}

std::string Laurent::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k] << "*u^" << start_ + static_cast<long>(k);
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(u^" << prec_ << ")";
  return os.str();
}

// ---------------------------------------------------------------- Ramified

Ramified::Ramified(FieldPtr field, std::uint32_t q, long scaled_precision) : field_(field), q_(q) {
  if (q < 2) throw PreconditionError("ramified elements need q >= 2");
  const long g = q - 1;
  for (long r = 0; r < g; ++r) {
    const long n = scaled_precision >= kExact ? kExact : ceil_div(scaled_precision + r, g);
    comps_.emplace_back(field, n);
  }
}

Ramified Ramified::from_laurent(std::uint32_t q, const Laurent& x) { return homogeneous(q, 0, x); }

Ramified Ramified::homogeneous(std::uint32_t q, std::uint32_t r, const Laurent& x) {
  Ramified y(x.field(), q);
  y.comps_.at(r) = x;
  return y;
}

Ramified Ramified::iota_power(FieldPtr field, std::uint32_t q, long k) {
  const long g = q - 1;
  const long m = floor_div(k, g);
  const long r = k - m * g;
  const Elem sign = (m % 2 == 0) ? 1 : field->neg(1);
  return homogeneous(q, static_cast<std::uint32_t>(r), Laurent::monomial(field, -m, sign));
}

long Ramified::valuation() const {
  const long g = q_ - 1;
  long v = kExact;
  bool any = false;
  for (long r = 0; r < g; ++r) {
    const Laurent& x = comps_[static_cast<std::size_t>(r)];
    if (x.is_zero()) continue;
    any = true;
    v = std::min(v, g * x.valuation() - r);
  }
  return any ? v : precision();
}

long Ramified::precision() const {
  const long g = q_ - 1;
  long p = kExact;
  for (long r = 0; r < g; ++r) {
    const Laurent& x = comps_[static_cast<std::size_t>(r)];
    if (x.is_exact()) continue;
    p = std::min(p, g * x.precision() - r);
  }
  return p;
}

bool Ramified::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Laurent& x) { return x.is_zero(); });
}

bool Ramified::is_exact() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Laurent& x) { return x.is_exact(); });
}

std::optional<std::uint32_t> Ramified::grade() const {
  std::optional<std::uint32_t> g;
  for (std::uint32_t r = 0; r < comps_.size(); ++r) {
    if (comps_[r].is_zero()) continue;
    if (g) return std::nullopt;
    g = r;
  }
  return g ? g : std::optional<std::uint32_t>(0);
}

Ramified Ramified::truncated(long scaled_precision) const {
  if (scaled_precision >= kExact) return *this;
  Ramified r = *this;
  const long g = q_ - 1;
  for (long k = 0; k < g; ++k) {
    auto& x = r.comps_[static_cast<std::size_t>(k)];
    x = x.truncated(ceil_div(scaled_precision + k, g));
  }
  return r;
}

Ramified Ramified::operator-() const {
  Ramified r = *this;
  for (auto& x : r.comps_) x = -x;
  return r;
}

namespace {

void check_same(const Ramified& a, const Ramified& b) {
  if (a.field() != b.field() || a.q() != b.q()) throw MismatchError("ramified elements over different fields");
}

}  // namespace

Ramified operator+(const Ramified& a, const Ramified& b) {
  check_same(a, b);
  Ramified r = a;
  for (std::size_t k = 0; k < r.comps_.size(); ++k) r.comps_[k] += b.comps_[k];
  return r;
}

Ramified operator-(const Ramified& a, const Ramified& b) {
  check_same(a, b);
  Ramified r = a;
  for (std::size_t k = 0; k < r.comps_.size(); ++k) r.comps_[k] -= b.comps_[k];
  return r;
}

Ramified operator*(const Ramified& a, const Ramified& b) {
  check_same(a, b);
  const std::size_t g = a.q_ - 1;
  Ramified r(a.field_, a.q_);
  for (std::size_t i = 0; i < g; ++i) {
    const Laurent& x = a.comps_[i];
    if (x.is_zero() && x.is_exact()) continue;
    for (std::size_t j = 0; j < g; ++j) {
      const Laurent& y = b.comps_[j];
      if (y.is_zero() && y.is_exact()) continue;
      Laurent t = x * y;
      std::size_t k = i + j;
      if (k >= g) {
        k -= g;
        t = -t.shift(-1);  // iota^{q-1} = -theta = -u^{-1}
      }
      r.comps_[k] += t;
    }
  }
  return r;
}

Ramified Ramified::scale(Elem c) const {
  Ramified r = *this;
  for (auto& x : r.comps_) x = x.scale(c);
  return r;
}

Ramified Ramified::mul(const Laurent& y) const {
  Ramified r = *this;
  for (auto& x : r.comps_) x = x * y;
  return r;
}

Ramified Ramified::inverse(long cap) const {
  if (is_zero()) throw PreconditionError("inverse of an element that is zero modulo its precision");
  const long g = q_ - 1;
  const long v = valuation();
  const long target = std::min(sat_add(precision(), -2 * v), cap);
  if (auto r = grade()) {
    const Laurent& y = comps_[*r];
    if (*r == 0) {
      return from_laurent(q_, y.inverse(target >= kExact ? kExact : ceil_div(target, g)));
    }
    // iota^{-r} = iota^{g-r} (-theta)^{-1} = iota^{g-r} (-u).
    const Laurent yinv = y.inverse(target >= kExact ? kExact : ceil_div(target + g, g));
    return homogeneous(q_, static_cast<std::uint32_t>(g - *r), -yinv.shift(1));
  }
  if (target >= kExact) throw PreconditionError("inverse of an exact mixed-grade element needs a precision cap");
  // x = L (1 + e) with L the leading monomial and v(e) > 0.
  std::uint32_t lead_r = 0;
  for (std::uint32_t r = 0; r < comps_.size(); ++r) {
    if (!comps_[r].is_zero() && g * comps_[r].valuation() - static_cast<long>(r) == v) lead_r = r;
  }
  const Laurent& lx = comps_[lead_r];
  const Ramified linv =
      iota_power(field_, q_, -static_cast<long>(lead_r))
          .mul(Laurent::monomial(field_, -lx.valuation(), field_->inv(lx.coeff(lx.valuation()))));
  const long need = target + v;  // precision required of 1/(1+e)
  const Ramified e = (*this * linv) - one(field_, q_);
  const long ve = e.valuation();
  Ramified sum = one(field_, q_);
  if (!e.is_zero()) {
    Ramified term = one(field_, q_);
    const Ramified minus_e = (-e).truncated(need);
    for (long k = 1; k * ve < need; ++k) {
      term = (term * minus_e).truncated(need);
      sum += term;
    }
  }
  return (sum.truncated(need) * linv).truncated(target);
}

Ramified Ramified::frobenius(std::uint64_t Q) const {
  const long g = q_ - 1;
  if ((Q - 1) % static_cast<std::uint64_t>(g) != 0) throw PreconditionError("Frobenius exponent must be a power of q");
  Ramified r(field_, q_);
  for (long k = 0; k < g; ++k) {
    // iota^{kQ} = iota^k (-theta)^{k(Q-1)/(q-1)}.
    const long m = static_cast<long>(static_cast<std::uint64_t>(k) * (Q - 1) / static_cast<std::uint64_t>(g));
    Laurent x = comps_[static_cast<std::size_t>(k)].frobenius(Q).shift(-m);
    if (m % 2 == 1) x = -x;
    r.comps_[static_cast<std::size_t>(k)] = x;
  }
  return r;
}

Ramified Ramified::pow(std::uint64_t n) const {
  Ramified result = one(field_, q_);
  Ramified base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Ramified Ramified::embed(const FieldEmbedding& e) const {
  Ramified r(e.to(), q_);
  for (std::size_t k = 0; k < comps_.size(); ++k) r.comps_[k] = comps_[k].embed(e);
  return r;
}

nlohmann::json Ramified::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : comps_) j.push_back(x.to_json());
  return j;
}

std::string Ramified::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < comps_.size(); ++r) {
    if (r > 0) os << " + ";
    os << "iota^" << r << "*(" << comps_[r].to_string() << ")";
  }
  return os.str();
}

std::optional<Ramified> RamifiedRing::invert_if_unit(const Ramified& a) const {
  if (a.is_zero()) return std::nullopt;
  try {
    return a.inverse();
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- Tate

Tate::Tate(FieldPtr field, std::uint32_t q, std::vector<std::string> vars, std::uint32_t cap, long scaled_precision)
    : field_(field), q_(q), cap_(cap), prec_(std::min(scaled_precision, kExact)),
      series_(RamifiedRing{field, q}, std::move(vars)) {}

Tate Tate::constant(std::vector<std::string> vars, std::uint32_t cap, const Ramified& c) {
  Tate t(c.field(), c.q(), std::move(vars), cap);
  t.add_term(mv::Exponents(t.vars().size(), 0), c);
  return t;
}

Tate Tate::variable(FieldPtr field, std::uint32_t q, std::vector<std::string> vars, std::uint32_t cap,
                    std::size_t i) {
  Tate t(field, q, std::move(vars), cap);
  mv::Exponents e(t.vars().size(), 0);
  e.at(i) = 1;
  t.add_term(e, Ramified::one(field, q));
  return t;
}

Ramified Tate::coeff(const mv::Exponents& e) const {
  auto it = series_.terms().find(e);
  if (it == series_.terms().end()) return Ramified(field_, q_, prec_);
  return it->second;
}

void Tate::add_term(const mv::Exponents& e, const Ramified& c) {
  for (auto k : e) {
    if (k > cap_) return;
  }
  prec_ = std::min(prec_, c.precision());
  series_.add_term(e, c);
}

long Tate::gauss_valuation() const {
  long v = prec_;
  for (const auto& [e, c] : series_.terms()) v = std::min(v, c.valuation());
  return v;
}

Tate Tate::truncated(long scaled_precision) const {
  Tate r(field_, q_, vars(), cap_, std::min(prec_, scaled_precision));
  for (const auto& [e, c] : series_.terms()) r.add_term(e, c.truncated(r.prec_));
  return r;
}

namespace {

void check_same(const Tate& a, const Tate& b) {
  if (a.field() != b.field() || a.q() != b.q()) throw MismatchError("Tate truncations over different fields");
  if (a.vars() != b.vars()) throw MismatchError("Tate truncations in different variables");
  if (a.cap() != b.cap()) throw PreconditionError("Tate truncations with different degree caps");
}

}  // namespace

Tate Tate::operator-() const {
  Tate r = *this;
  r.series_ = -series_;
  return r;
}

Tate operator+(const Tate& a, const Tate& b) {
  check_same(a, b);
  Tate r = a;
  r.prec_ = std::min(a.prec_, b.prec_);
  for (const auto& [e, c] : b.series_.terms()) r.add_term(e, c);
  return r.truncated(r.prec_);
}

Tate operator-(const Tate& a, const Tate& b) { return a + (-b); }

Tate operator*(const Tate& a, const Tate& b) {
  check_same(a, b);
  const long va = a.gauss_valuation();
  const long vb = b.gauss_valuation();
  const long prec = std::min(sat_add(a.prec_, vb), sat_add(b.prec_, va));
  Tate r(a.field_, a.q_, a.vars(), a.cap_, prec);
  if (a.series_.is_zero() || b.series_.is_zero()) return r;
  std::vector<std::pair<mv::Exponents, Ramified>> ta, tb;
  for (const auto& [e, c] : a.series_.terms()) ta.emplace_back(e, c.truncated(sat_add(prec, -vb)));
  for (const auto& [e, c] : b.series_.terms()) tb.emplace_back(e, c.truncated(sat_add(prec, -va)));
  std::map<mv::Exponents, Ramified> acc;
  mv::Exponents e(a.vars().size());
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) {
      bool inside = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (e[i] > a.cap_) inside = false;
      }
      if (!inside) continue;
      auto it = acc.find(e);
      if (it == acc.end()) {
        acc.emplace(e, ca * cb);
      } else {
        it->second += ca * cb;
      }
    }
  }
  for (const auto& [k, c] : acc) r.add_term(k, c.truncated(prec));
  return r;
}

Tate Tate::scale(const Ramified& c) const { return *this * constant(vars(), cap_, c); }

Tate Tate::pow(std::uint64_t n) const {
  Tate result = constant(vars(), cap_, Ramified::one(field_, q_));
  Tate base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Tate Tate::inverse() const {
  const mv::Exponents zero(vars().size(), 0);
  const Ramified c0 = coeff(zero);
  if (c0.is_zero()) throw PreconditionError("formal inverse needs a nonzero constant term");
  long cap = kExact;
  if (prec_ < kExact) cap = sat_add(prec_, -2 * c0.valuation());
  const Ramified c0inv = c0.inverse(cap);
  Tate rest = *this;
  rest.series_ = series_;
  rest.series_.add_term(zero, -c0);
  // 1/f = c0^{-1} sum_k h^k with h = -(f - c0)/c0, nilpotent under the cap.
  const Tate h = -(rest.scale(c0inv));
  const Tate one = constant(vars(), cap_, Ramified::one(field_, q_));
  Tate acc = one;
  const std::size_t steps = static_cast<std::size_t>(cap_) * vars().size();
  for (std::size_t k = 0; k < steps; ++k) acc = one + h * acc;
  return acc.scale(c0inv);
}

Tate Tate::twist(unsigned k) const {
  std::uint64_t Q = 1;
  for (unsigned i = 0; i < k; ++i) Q *= q_;
  Tate r(field_, q_, vars(), cap_, sat_mul(static_cast<long>(Q), prec_));
  for (const auto& [e, c] : series_.terms()) r.add_term(e, c.frobenius(Q));
  return r;
}

Tate Tate::substitute_power(std::size_t var, std::uint32_t k) const {
  Tate r(field_, q_, vars(), cap_, prec_);
  for (const auto& [e0, c] : series_.terms()) {
    mv::Exponents e = e0;
    e.at(var) *= k;
    r.add_term(e, c);
  }
  return r;
}

Tate Tate::evaluate(std::size_t var, const Ramified& value, long tail_valuation) const {
  if (value.field() != field_ || value.q() != q_) throw MismatchError("evaluation point over a different field");
  if (value.valuation() < 0) throw PreconditionError("evaluation needs |value| <= 1");
  Tate r(field_, q_, vars(), cap_, std::min(prec_, tail_valuation));
  std::vector<Ramified> powers{Ramified::one(field_, q_)};
  for (const auto& [e0, c] : series_.terms()) {
    mv::Exponents e = e0;
    const std::uint32_t m = e.at(var);
    while (powers.size() <= m) powers.push_back((powers.back() * value).truncated(r.prec_));
    e[var] = 0;
    r.add_term(e, (c * powers[m]).truncated(r.prec_));
  }
  return r.truncated(r.prec_);
}

Tate Tate::embed(const FieldEmbedding& e) const {
  Tate r(e.to(), q_, vars(), cap_, prec_);
  for (const auto& [k, c] : series_.terms()) r.add_term(k, c.embed(e));
  return r;
}

nlohmann::json Tate::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : series_.terms()) terms.push_back({{"exponents", e}, {"coefficient", c.to_json()}});
  return {{"vars", vars()},
          {"cap", cap_},
          {"precision", prec_ >= kExact ? nlohmann::json(nullptr) : nlohmann::json(prec_)},
          {"terms", terms}};
}

TateComparison tate_equal(const Tate& a, const Tate& b) {
  check_same(a, b);
  TateComparison out;
  out.q = a.q();
  out.certified = std::min(a.precision(), b.precision());
  const Tate d = a - b;
  out.margin = out.certified;
  for (const auto& [e, c] : d.series().terms()) {
    const long v = c.valuation();
    if (v < out.margin) {
      out.margin = v;
      out.witness = e;
    }
  }
  out.equal = out.margin >= out.certified;
  if (out.equal) out.witness.reset();
  return out;
}

// ---------------------------------------------------------------- analytic objects

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// D_j over the coefficient field of x (which may extend F_q).
Laurent D_laurent(FieldPtr field, std::uint32_t q, unsigned j) {
  const std::uint32_t p = field->characteristic();
  std::uint32_t m = 0;
  for (std::uint32_t Q = 1; Q < q; Q *= p) ++m;
  const FieldPtr base = make_field(p, m);
  const Poly& D = carlitz_cache(base).D(j);
  if (base == field) return Laurent::from_poly(D);
  return Laurent::from_poly(D.embed(FieldEmbedding(base, field)));
}

}  // namespace

Ramified pi_bar(FieldPtr field, long N) {
  const std::uint32_t q = field->order();
  const long NK = N + 2;
  Laurent prod = Laurent::one(field).truncated(NK);
  for (std::uint64_t Q = q; static_cast<long>(Q) - 1 < NK; Q *= q) {
    std::vector<Elem> c(Q, 0);
    c[0] = 1;
    c[Q - 1] = field->neg(1);
    prod = prod * Laurent(field, 0, std::move(c)).inverse(NK);
  }
  return Ramified::iota_power(field, q, 1) * Ramified::from_laurent(q, prod.shift(-1));
}

std::vector<Ramified> omega_coeffs(FieldPtr field, long N, std::uint32_t M) {
  const std::uint32_t q = field->order();
  const long NK = N + 1;
  std::vector<Laurent> h(M + 1, Laurent(field));
  h[0] = Laurent::one(field);
  for (std::uint64_t Q = 1; static_cast<long>(Q) < NK; Q *= q) {
    // multiply by 1/(1 - t u^Q) = sum_k t^k u^{kQ}
    std::vector<Laurent> next(M + 1, Laurent(field));
    for (std::uint32_t m = 0; m <= M; ++m) {
      for (std::uint32_t k = 0; k <= m; ++k) next[m] += h[m - k].shift(static_cast<long>(k * Q)).truncated(NK);
    }
    h = std::move(next);
  }
  const Ramified iota = Ramified::iota_power(field, q, 1);
  std::vector<Ramified> out;
  for (auto& x : h) out.push_back(iota * Ramified::from_laurent(q, x.truncated(NK)));
  return out;
}

Tate omega(FieldPtr field, long N, std::uint32_t M, const std::vector<std::string>& vars, std::size_t i) {
  const std::uint32_t q = field->order();
  const auto c = omega_coeffs(field, N, M);
  Tate t(field, q, vars, M, c.back().precision());
  mv::Exponents e(vars.size(), 0);
  for (std::uint32_t m = 0; m <= M; ++m) {
    e.at(i) = m;
    t.add_term(e, c[m]);
  }
  return t;
}

Ramified carlitz_exp(const Ramified& x, long N) {
  const std::uint32_t q = x.q();
  const long g = q - 1;
  const long P = g * N;
  Ramified sum(x.field(), q, P);
  if (x.is_zero() && x.is_exact()) return Ramified(x.field(), q);
  const long v = x.valuation();
  Ramified xq = x;
  for (unsigned j = 0;; ++j) {
    const long Q = static_cast<long>(upow(q, j));
    if (j > 0) xq = xq.frobenius(q);
    const long tv = sat_add(sat_mul(Q, v), sat_mul(g * j, Q));
    if (tv >= P && v + g * static_cast<long>(j) >= 0) break;
    const long nd = ceil_div(P - sat_mul(Q, v), g);
    sum += xq.mul(D_laurent(x.field(), q, j).inverse(nd)).truncated(P);
  }
  return sum.truncated(P);
}

Laurent carlitz_exp(const Laurent& x, long N) {
  const std::uint32_t q = x.field()->order();
  return carlitz_exp(Ramified::from_laurent(q, x), N).component(0);
}

Tate agf(const Ramified& x, long N, std::uint32_t M, const std::vector<std::string>& vars, std::size_t i) {
  const std::uint32_t q = x.q();
  const long g = q - 1;
  const long P = g * N;
  Tate t(x.field(), q, vars, M, P);
  if (x.is_zero() && x.is_exact()) return t;
  const long v = x.valuation();
  Ramified xq = x;
  mv::Exponents e(vars.size(), 0);
  for (unsigned j = 0;; ++j) {
    const long Q = static_cast<long>(upow(q, j));
    if (j > 0) xq = xq.frobenius(q);
    const long tv = sat_add(sat_mul(Q, v), sat_mul(g * (j + 1), Q));
    if (tv >= P && v + g * static_cast<long>(j + 1) >= 0) break;
    const long nd = ceil_div(P - sat_mul(Q, v), g);
    const Ramified base = xq.mul(D_laurent(x.field(), q, j).inverse(nd));
    for (std::uint32_t m = 0; m <= M; ++m) {
      e.at(i) = m;
      t.add_term(e, base.mul(Laurent::monomial(x.field(), Q * (m + 1))).truncated(P));
    }
  }
  return t.truncated(P);
}

Tate tate_from(const mv::PolyA& f, std::uint32_t cap) {
  const FieldPtr F = f.ring().field;
  Tate t(F, F->order(), f.vars(), cap);
  for (const auto& [e, c] : f.terms()) t.add_term(e, Ramified::from_poly(F->order(), c));
  return t;
}

Tate tate_from(const mv::PolyK& f, std::uint32_t cap, long N) {
  const FieldPtr F = f.ring().field;
  const std::uint32_t q = F->order();
  Tate t(F, q, f.vars(), cap, static_cast<long>(q - 1) * N);
  for (const auto& [e, c] : f.terms()) t.add_term(e, Ramified::from_laurent(q, Laurent::from_fraction(c, N)));
  return t;
}

}  // namespace ffz
