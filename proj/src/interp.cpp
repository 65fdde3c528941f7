#include "ffzeta/interp.hpp"

#include <map>

#include "ffzeta/errors.hpp"

namespace ffz {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Power sums S_e(m) = sum_a f_e(a) a^m, m < q^d, keyed by the t-monomial e.
using PowerSums = std::map<mv::Exponents, std::vector<Fraction>>;

// (E_d(z) - E_d(a))/(z - a) = sum_i c_i sum_{k < q^i} z^k a^{q^i-1-k}, so
// N^{(d)}(f) has z^k-coefficient ell_d sum_{q^i > k} c_i S(q^i - 1 - k).
mv::PolyK assemble(CarlitzCache& cc, unsigned d, const std::vector<std::string>& vars, std::size_t z_index,
                   const PowerSums& S) {
  const auto& c = cc.E_coeffs(d);
  const Fraction ell(cc.ell(d));
  std::vector<Fraction> w;
  std::vector<std::uint64_t> qi;
  for (unsigned i = 0; i <= d; ++i) {
    w.push_back(ell * c[i]);
    qi.push_back(ipow(cc.q(), i));
  }
  mv::PolyK r(FractionField{cc.field()}, vars);
  const std::uint64_t size = ipow(cc.q(), d);
  for (const auto& [e, sums] : S) {
    mv::Exponents mono = e;
    for (std::uint64_t k = 0; k < size; ++k) {
      Fraction acc(cc.field());
      for (unsigned i = 0; i <= d; ++i) {
        if (qi[i] <= k) continue;
        const Fraction& s = sums[qi[i] - 1 - k];
        if (!s.is_zero()) acc += w[i] * s;
      }
      mono[z_index] = static_cast<std::uint32_t>(k);
      r.add_term(mono, acc);
    }
  }
  return r;
}

}  // namespace

mv::PolyK newton_interp(FieldPtr F, std::size_t s, const std::vector<std::size_t>& chars, unsigned d) {
  if (d == 0) throw PreconditionError("interpolation needs d >= 1");
  for (auto i : chars) {
    if (i >= s) throw PreconditionError("character index out of range");
  }
  CarlitzCache& cc = carlitz_cache(F);
  const auto vars = mv::t_vars(s, true);
  const std::uint64_t size = ipow(cc.q(), d);
  std::map<mv::Exponents, std::vector<Poly>> S;
  for (const Poly& a : enumerate_polys(F, d, EnumMode::DegreeBelow)) {
    // Coefficients of prod_i chi_i(a); each factor is sum_k a_k t_i^k.
    std::map<mv::Exponents, Elem> f{{mv::Exponents(vars.size(), 0), 1}};
    for (auto i : chars) {
      std::map<mv::Exponents, Elem> g;
      for (const auto& [e, x] : f) {
        for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
          if (a.coeff(k) == 0) continue;
          mv::Exponents e2 = e;
          e2[i] += static_cast<std::uint32_t>(k);
          Elem& slot = g[e2];
          slot = F->add(slot, F->mul(x, a.coeff(k)));
        }
      }
      std::erase_if(g, [](const auto& kv) { return kv.second == 0; });
      f = std::move(g);
    }
    Poly am = Poly::one(F);
    std::vector<Poly> powers;
    powers.reserve(size);
    for (std::uint64_t m = 0; m < size; ++m) {
      powers.push_back(am);
      am = am * a;
    }
    for (const auto& [e, x] : f) {
      auto& row = S[e];
      if (row.empty()) row.assign(size, Poly(F));
      for (std::uint64_t m = 0; m < size; ++m) row[m] += powers[m].scale(x);
    }
  }
  PowerSums SF;
  for (auto& [e, row] : S) {
    auto& out = SF[e];
    for (auto& p : row) out.emplace_back(std::move(p));
  }
  return assemble(cc, d, vars, s, SF);
}

mv::PolyK interpolate_values(FieldPtr F, const std::vector<std::string>& vars, std::size_t z_index,
                             const std::vector<mv::PolyK>& values, unsigned d) {
  if (d == 0) throw PreconditionError("interpolation needs d >= 1");
  CarlitzCache& cc = carlitz_cache(F);
  const auto points = enumerate_polys(F, d, EnumMode::DegreeBelow);
  if (values.size() != points.size()) throw PreconditionError("one value per element of A(d) expected");
  const std::uint64_t size = points.size();
  PowerSums S;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (values[k].vars() != vars) throw MismatchError("value has a different variable list");
    std::vector<Fraction> powers;
    Fraction am = Fraction::one(F);
    const Fraction a(points[k]);
    for (std::uint64_t m = 0; m < size; ++m) {
      powers.push_back(am);
      am = am * a;
    }
    for (const auto& [e, x] : values[k].terms()) {
      if (e[z_index] != 0) throw PreconditionError("interpolated values may not involve z");
      auto& row = S[e];
      if (row.empty()) row.assign(size, Fraction(F));
      for (std::uint64_t m = 0; m < size; ++m) row[m] += powers[m] * x;
    }
  }
  return assemble(cc, d, vars, z_index, S);
}

mv::PolyK wagner_partial(FieldPtr F, unsigned d, const std::vector<std::string>& vars, std::size_t t_index,
                         std::size_t z_index) {
  if (d == 0) throw PreconditionError("Xi^{(d)} needs d >= 1");
  CarlitzCache& cc = carlitz_cache(F);
  mv::PolyK r(FractionField{F}, vars);
  for (unsigned j = 0; j < d; ++j) r += b_in(cc, j, vars, t_index) * E_in(cc, j, vars, z_index);
  return r;
}

mv::PolyK wagner_partial(FieldPtr F, unsigned d) { return wagner_partial(F, d, {"t", "z"}, 0, 1); }

std::vector<std::vector<int>> binary_masks(std::size_t s, std::size_t l) {
  std::vector<std::vector<int>> out;
  if (l > s) return out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s); ++m) {
    if (static_cast<std::size_t>(__builtin_popcountll(m)) != l) continue;
    std::vector<int> a(s);
    for (std::size_t i = 0; i < s; ++i) a[i] = static_cast<int>((m >> i) & 1);
    out.push_back(std::move(a));
  }
  return out;
}

IdentityReport verify_interp_identity(FieldPtr F, unsigned d) {
  Stopwatch sw;
  IdentityReport rep;
  rep.identity = "interp";
  rep.params = {{"q", F->order()}, {"d", d}};
  const mv::PolyK lhs = newton_interp(F, 1, {0}, d);
  const mv::PolyK rhs = wagner_partial(F, d, lhs.vars(), 0, 1);
  compare_exact(rep, lhs, rhs);
  rep.millis = sw.millis();
  return rep;
}

namespace {

// Shared pieces for the product identities: N^{(d)}_i, b^{(d)}_i, E_d.
struct Pieces {
  std::vector<std::string> vars;
  std::size_t z;
  std::vector<mv::PolyK> N;  // N^{(d)}_i
  std::vector<mv::PolyK> b;  // b_d(t_i)
};

Pieces pieces(FieldPtr F, std::size_t s, unsigned d) {
  CarlitzCache& cc = carlitz_cache(F);
  Pieces p{mv::t_vars(s, true), s, {}, {}};
  for (std::size_t i = 0; i < s; ++i) {
    p.N.push_back(newton_interp(F, s, {i}, d));
    p.b.push_back(b_in(cc, d, p.vars, i));
  }
  return p;
}

mv::PolyK one(FieldPtr F, const std::vector<std::string>& vars) {
  return mv::PolyK::constant(FractionField{F}, vars, Fraction::one(F));
}

// prod_i X_i^{1-alpha_i} Y_i^{alpha_i}.
mv::PolyK mixed_product(const std::vector<mv::PolyK>& X, const std::vector<mv::PolyK>& Y,
                        const std::vector<int>& alpha) {
  mv::PolyK r = one(X.front().ring().field, X.front().vars());
  for (std::size_t i = 0; i < alpha.size(); ++i) r = r * (alpha[i] ? Y[i] : X[i]);
  return r;
}

}  // namespace

IdentityReport verify_product_identity(FieldPtr F, std::size_t s, unsigned d) {
  Stopwatch sw;
  const std::uint64_t q = F->order();
  if (s < 1 || s > 2 * (q - 1)) throw PreconditionError("s must lie in [1, 2(q-1)]");
  if (d < 1) throw PreconditionError("d must be positive");
  IdentityReport rep;
  rep.identity = "interp-product";
  rep.params = {{"q", q}, {"s", s}, {"d", d}};
  CarlitzCache& cc = carlitz_cache(F);

  std::vector<std::size_t> all(s);
  for (std::size_t i = 0; i < s; ++i) all[i] = i;
  const mv::PolyK lhs = newton_interp(F, s, all, d + 1);

  const Pieces lo = pieces(F, s, d);
  mv::PolyK rhs = one(F, lo.vars);
  for (std::size_t i = 0; i < s; ++i) rhs = rhs * newton_interp(F, s, {i}, d + 1);

  mv::PolyK correction(FractionField{F}, lo.vars);
  const mv::PolyK Ed = E_in(cc, d, lo.vars, lo.z);
  for (std::size_t l = q; l <= s; ++l) {
    mv::PolyK inner(FractionField{F}, lo.vars);
    for (const auto& alpha : binary_masks(s, l)) inner += mixed_product(lo.N, lo.b, alpha);
    correction += Ed.pow(l - q) * inner;
  }
  const mv::PolyK scale = E_in(cc, d + 1, lo.vars, lo.z).scalar_mul(Fraction(cc.bracket(d + 1)));
  rhs -= scale * correction;
  rep.details["correction_terms"] = correction.size();
  compare_exact(rep, lhs, rhs);
  rep.millis = sw.millis();
  return rep;
}

IdentityReport verify_obstruction_identity(FieldPtr F, unsigned d) {
  Stopwatch sw;
  if (d < 1) throw PreconditionError("the expansion involves b_{d-1}; d must be positive");
  const std::uint64_t q = F->order();
  const std::size_t s = 2 * q - 1;
  IdentityReport rep;
  rep.identity = "obstruction";
  rep.params = {{"q", q}, {"s", s}, {"d", d}};
  CarlitzCache& cc = carlitz_cache(F);

  std::vector<std::size_t> all(s);
  for (std::size_t i = 0; i < s; ++i) all[i] = i;
  const mv::PolyK lhs = newton_interp(F, s, all, d + 1);
  rep.details["lhs_deg_z"] = lhs.degree(s);

  const Pieces lo = pieces(F, s, d);
  std::vector<mv::PolyK> b_prev;
  for (std::size_t i = 0; i < s; ++i) b_prev.push_back(b_in(cc, d - 1, lo.vars, i));

  const mv::PolyK Ed = E_in(cc, d, lo.vars, lo.z);
  const mv::PolyK E_next =
      E_in(cc, d + 1, lo.vars, lo.z).scalar_mul(Fraction(cc.bracket(d + 1)));  // [d+1] E_{d+1}

  mv::PolyK rhs = one(F, lo.vars);
  for (std::size_t i = 0; i < s; ++i) rhs = rhs * newton_interp(F, s, {i}, d + 1);

  mv::PolyK t2(FractionField{F}, lo.vars);
  for (const auto& alpha : binary_masks(s, q - 1)) t2 += mixed_product(b_prev, lo.b, alpha);
  rhs -= t2 * E_next.scalar_mul(Fraction(cc.bracket(d)));

  const std::vector<int> ones(s, 1);
  rhs -= mixed_product(lo.N, lo.b, ones) * (one(F, lo.vars) + Ed.pow(q - 1)) * E_next;

  mv::PolyK t4(FractionField{F}, lo.vars);
  for (std::size_t k = q; k <= 2 * (q - 1); ++k) {
    mv::PolyK inner(FractionField{F}, lo.vars);
    for (const auto& alpha : binary_masks(s, k)) inner += mixed_product(lo.N, lo.b, alpha);
    t4 += Ed.pow(k - q) * inner;
  }
  rhs -= t4 * E_next;

  compare_exact(rep, lhs, rhs);
  rep.millis = sw.millis();
  return rep;
}

}  // namespace ffz
