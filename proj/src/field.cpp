#include "ffzeta/field.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "ffzeta/errors.hpp"

namespace ffz {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Remainder of a modulo a monic b over F_p (both ascending).
Coeffs rem_mod_p(Coeffs a, const Coeffs& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * std::uint64_t{b[i]}) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Coeffs monic_from_index(std::uint64_t index, std::uint32_t deg, std::uint32_t p) {
  Coeffs c(deg + 1, 0);
  for (std::uint32_t i = 0; i < deg; ++i) {
    c[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  c[deg] = 1;
  return c;
}

// Trial division by every monic polynomial of degree <= deg/2.
bool irreducible_mod_p(const Coeffs& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (rem_mod_p(f, monic_from_index(idx, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) order *= p;
  order_ = static_cast<std::uint32_t>(order);

  frob_.resize(order_);
  if (m_ == 1) {
    for (Elem a = 0; a < order_; ++a) frob_[a] = a;  // Fermat
    return;
  }

  neg_table_.resize(order_);
  for (Elem a = 0; a < order_; ++a) {
    auto c = coordinates(a);
    for (auto& x : c) x = (p_ - x) % p_;
    neg_table_[a] = from_coordinates(c);
  }
  if (order_ <= 1024) {
    // add_slow reads the table once it is non-empty, so fill a local copy.
    std::vector<std::uint16_t> table(std::size_t{order_} * order_);
    for (Elem a = 0; a < order_; ++a) {
      for (Elem b = 0; b < order_; ++b) {
        table[std::size_t{a} * order_ + b] = static_cast<std::uint16_t>(add_slow(a, b));
      }
    }
    add_table_ = std::move(table);
  }

  // Smallest generator of the multiplicative group.
  const Elem group = order_ - 1;
  Elem gen = 0;
  for (Elem g = 2; g < order_ && gen == 0; ++g) {
    Elem x = 1;
    Elem k = 0;
    do {
      x = mul_coordinates(x, g);
      ++k;
    } while (x != 1 && k <= group);
    if (k == group) gen = g;
  }
  if (gen == 0) throw InvariantError("no primitive element found in " + label());
  log_.assign(order_, 0);
  exp_.assign(2 * std::size_t{group}, 0);
  Elem x = 1;
  for (Elem k = 0; k < group; ++k) {
    exp_[k] = x;
    exp_[k + group] = x;
    log_[x] = k;
    x = mul_coordinates(x, gen);
  }
  for (Elem a = 0; a < order_; ++a) frob_[a] = pow(a, p_);
}

std::string FiniteField::label() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (m_ > 1) os << "^" << m_;
  return os.str();
}

Elem FiniteField::add_slow(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[std::size_t{a} * order_ + b];
  Elem r = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem FiniteField::mul_coordinates(Elem a, Elem b) const {
  auto ca = coordinates(a);
  auto cb = coordinates(b);
  Coeffs prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_);
    }
  }
  auto r = rem_mod_p(prod, modulus_, p_);
  r.resize(m_, 0);
  return from_coordinates(r);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0 || a >= order_) throw PreconditionError("inverse of zero in " + label());
  if (m_ == 1) return pow(a, p_ - 2);
  const Elem group = order_ - 1;
  return exp_[(group - log_[a]) % group];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (m_ > 1) {
    const std::uint64_t group = order_ - 1;
    return exp_[static_cast<std::size_t>((std::uint64_t{log_[a]} * (e % group)) % group)];
  }
  std::uint64_t result = 1;
  std::uint64_t base = a;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Elem>(result);
}

Elem FiniteField::from_int(std::int64_t v) const {
  const std::int64_t p = p_;
  return static_cast<Elem>(((v % p) + p) % p);
}

std::vector<std::uint32_t> FiniteField::coordinates(Elem a) const {
  std::vector<std::uint32_t> c(m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem FiniteField::from_coordinates(const std::vector<std::uint32_t>& coords) const {
  if (coords.size() > m_) throw PreconditionError("too many coordinates for " + label());
  Elem r = 0;
  Elem scale = 1;
  for (auto c : coords) {
    if (c >= p_) throw PreconditionError("coordinate out of range for " + label());
    r += c * scale;
    scale *= p_;
  }
  return r;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (m == 0) throw PreconditionError("extension degree must be positive");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    order *= p;
    if (order > (1u << 16)) throw PreconditionError("field order above 2^16 is not supported");
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FiniteField>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{p, m}];
  if (!slot) {
    Coeffs modulus;
    if (m > 1) {
      const std::uint64_t count = order;  // p^m monic candidates
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        auto f = monic_from_index(idx, m, p);
        if (irreducible_mod_p(f, p)) {
          modulus = std::move(f);
          break;
        }
      }
      if (modulus.empty()) throw InvariantError("no irreducible modulus found");
    }
    slot.reset(new FiniteField(p, m, std::move(modulus)));
  }
  return slot.get();
}

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(from), to_(to) {
  if (from->characteristic() != to->characteristic() || to->degree() % from->degree() != 0) {
    throw MismatchError("no embedding " + from->label() + " -> " + to->label());
  }
  image_.resize(from->order());
  if (from->is_prime()) {
    for (Elem a = 0; a < from->order(); ++a) image_[a] = a;
    return;
  }
  const auto& mod = from->modulus();
  Elem root = 0;
  bool found = false;
  for (Elem r = 0; r < to->order() && !found; ++r) {
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = to->add(to->mul(acc, r), mod[i]);
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw InvariantError("modulus of " + from->label() + " has no root in " + to->label());
  for (Elem a = 0; a < from->order(); ++a) {
    auto c = from->coordinates(a);
    Elem acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = to->add(to->mul(acc, root), c[i]);
    image_[a] = acc;
  }
}

Elem FieldEmbedding::preimage(Elem b) const {
  for (Elem a = 0; a < image_.size(); ++a) {
    if (image_[a] == b) return a;
  }
  throw PreconditionError("element is not in the image of " + from_->label());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (field != o.field) throw MismatchError("field mismatch");
  return {field, field->add(value, o.value)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  if (field != o.field) throw MismatchError("field mismatch");
  return {field, field->sub(value, o.value)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (field != o.field) throw MismatchError("field mismatch");
  return {field, field->mul(value, o.value)};
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
  if (a.field->is_prime()) return os << a.value;
  os << "[";
  auto c = a.field->coordinates(a.value);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os << "]";
}

}  // namespace ffz
