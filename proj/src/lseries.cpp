#include "ffzeta/lseries.hpp"

#include <algorithm>
#include <functional>

#include "ffzeta/errors.hpp"
#include "ffzeta/interp.hpp"
#include "ffzeta/serialize.hpp"

namespace ffz {

namespace {

std::uint64_t ipow(std::uint64_t q, std::uint64_t k) {
  std::uint64_t r = 1;
  while (k-- > 0) r *= q;
  return r;
}

long ceil_div_pos(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Extra working precision (units of v(1/theta)) on top of the target.
constexpr long kGuard = 8;

Ramified grade0(std::uint32_t q, const Laurent& x) { return Ramified::from_laurent(q, x); }

Ramified theta_r(FieldPtr F) { return Ramified::from_poly(F->order(), Poly::monomial(F, 1)); }

Tate constant_tate(const std::vector<std::string>& vars, std::uint32_t M, const Ramified& c) {
  return Tate::constant(vars, M, c);
}

// sum over the given a of w(a) prod_i chi_i(a), with characters cut at
// t-degree M. Terms are grouped by a mod theta^{M+1}, which is all the
// characters see below the cap.
Tate character_sum(FieldPtr F, std::size_t s, std::uint32_t M, const std::vector<Poly>& as,
                   const std::function<Laurent(const Poly&)>& w, long scaled_prec) {
  const std::uint32_t q = F->order();
  std::map<std::uint64_t, Laurent> blocks;
  for (const Poly& a : as) {
    std::uint64_t idx = 0;
    for (std::uint32_t i = M + 1; i-- > 0;) idx = idx * q + a.coeff(i);
    auto it = blocks.find(idx);
    if (it == blocks.end()) {
      blocks.emplace(idx, w(a));
    } else {
      it->second += w(a);
    }
  }
  const auto vars = t_vars(s);
  std::map<mv::Exponents, Laurent> acc;
  std::vector<Elem> digits(M + 1);
  for (const auto& [idx0, val] : blocks) {
    if (val.is_zero()) continue;
    std::uint64_t idx = idx0;
    for (std::uint32_t i = 0; i <= M; ++i) {
      digits[i] = static_cast<Elem>(idx % q);
      idx /= q;
    }
    // Enumerate exponent vectors e with every digits[e_i] nonzero.
    mv::Exponents e(s, 0);
    std::function<void(std::size_t, Elem)> rec = [&](std::size_t i, Elem c) {
      if (i == s) {
        auto it = acc.find(e);
        if (it == acc.end()) {
          acc.emplace(e, val.scale(c));
        } else {
          it->second += val.scale(c);
        }
        return;
      }
      for (std::uint32_t k = 0; k <= M; ++k) {
        if (digits[k] == 0) continue;
        e[i] = k;
        rec(i + 1, F->mul(c, digits[k]));
      }
    };
    rec(0, 1);
  }
  Tate out(F, q, vars, M, scaled_prec);
  for (const auto& [e, c] : acc) out.add_term(e, grade0(q, c.truncated(ceil_div_pos(scaled_prec, q - 1))));
  return out.truncated(scaled_prec);
}

std::vector<Poly> monic_below(FieldPtr F, unsigned D) {
  std::vector<Poly> out;
  for (unsigned d = 0; d < D; ++d) {
    auto m = enumerate_polys(F, d, EnumMode::ExactDegree);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

void record_tate(IdentityReport& rep, const TateComparison& c, const std::string& label) {
  rep.details[label] = {{"equal", c.equal}, {"certified_exponent", c.certified_exponent()},
                        {"margin_exponent", floor_div(c.margin, c.q - 1)}};
  const long ce = c.certified_exponent();
  if (!rep.certified_precision_exponent || ce < *rep.certified_precision_exponent) {
    rep.certified_precision_exponent = ce;
  }
  if (!c.equal) {
    std::string where;
    if (c.witness) {
      for (auto x : *c.witness) where += (where.empty() ? "" : ",") + std::to_string(x);
    }
    rep.fail(label + ": difference of valuation " + std::to_string(c.margin) + " (scaled) below certified " +
             std::to_string(c.certified) + " at exponent (" + where + ")");
  }
}

// Compares two ramified constants, recording the certified exponent.
void record_ramified(IdentityReport& rep, const Ramified& a, const Ramified& b, const std::string& label) {
  const Ramified d = a - b;
  const long g = a.q() - 1;
  const long prec = d.precision();
  rep.details[label] = {{"equal", d.is_zero()}, {"certified_exponent", floor_div(prec, g)},
                        {"margin_exponent", floor_div(d.valuation(), g)}};
  const long ce = floor_div(prec, g);
  if (!rep.certified_precision_exponent || ce < *rep.certified_precision_exponent) {
    rep.certified_precision_exponent = ce;
  }
  if (!d.is_zero()) rep.fail(label + ": difference " + d.to_string());
}

}  // namespace

long block_tail_exponent(std::uint64_t q, long n, unsigned D, long M) {
  const long base = n * static_cast<long>(D);
  if (static_cast<long>(D) <= M + 1) return base;
  const long c = static_cast<long>(D) - M - 1;
  if (c >= 30) return kExact;
  const long extra = static_cast<long>(ipow(q, static_cast<std::uint64_t>(c))) - 1;
  return std::min(kExact, base + extra);
}

unsigned auto_degree(std::uint64_t q, long n, long N, long M) {
  if (n < 1) throw PreconditionError("n must be positive");
  unsigned D = 1;
  while (block_tail_exponent(q, n, D, M) < N) ++D;
  return D;
}

std::vector<std::string> t_vars(std::size_t s) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= s; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

ZetaTruncation zeta_trunc(FieldPtr field, long n, unsigned D, long N) {
  if (n < 1) throw PreconditionError("zeta(n) needs n >= 1");
  ZetaTruncation z;
  z.n = n;
  z.D = D;
  z.tail_bound_exponent = block_tail_exponent(field->order(), n, D, -1);
  const long P = std::min(N, z.tail_bound_exponent);
  Laurent acc = Laurent(field).truncated(P);
  for (const Poly& a : monic_below(field, D)) {
    acc += Laurent::from_poly(a.pow(static_cast<std::uint64_t>(n))).inverse(P);
  }
  z.value = acc.truncated(P);
  return z;
}

LSeriesTruncation pellarin_trunc(FieldPtr field, std::size_t s, long n, unsigned D, long N, std::uint32_t M) {
  if (n < 1) throw PreconditionError("L(chi, n) needs n >= 1");
  const std::uint32_t q = field->order();
  LSeriesTruncation L;
  L.s = s;
  L.n = n;
  L.D = D;
  L.cap = M;
  L.tail_bound_exponent = block_tail_exponent(q, n, D, M);
  const long P = std::min(N, L.tail_bound_exponent);
  L.value = character_sum(
      field, s, M, monic_below(field, D),
      [&](const Poly& a) { return Laurent::from_poly(a.pow(static_cast<std::uint64_t>(n))).inverse(P); },
      static_cast<long>(q - 1) * P);
  return L;
}

// ---- explicit right-hand side -------------------------------------------

std::map<std::vector<int>, Fraction> ExplicitRHS::canonical() const {
  std::map<std::vector<int>, Fraction> out;
  auto add = [&](const SimpleFraction& f) {
    auto it = out.find(f.pole);
    if (it == out.end()) {
      out.emplace(f.pole, f.coeff);
    } else {
      it->second += f.coeff;
    }
  };
  for (const auto& f : first) add(f);
  for (const auto& f : second) add(f);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Tate ExplicitRHS::to_tate(FieldPtr field, long N, std::uint32_t M) const {
  const std::uint32_t q = field->order();
  const auto vars = t_vars(s);
  const long P = static_cast<long>(q - 1) * N;
  Tate out(field, q, vars, M, P);
  auto expand = [&](const SimpleFraction& f) {
    Tate term = constant_tate(vars, M, grade0(q, Laurent::from_fraction(f.coeff, N + kGuard)));
    for (std::size_t i = 0; i < s; ++i) {
      if (f.pole[i] < 0) continue;
      const std::uint64_t Q = ipow(q, static_cast<std::uint64_t>(f.pole[i]));
      Tate g(field, q, vars, M);
      mv::Exponents e(s, 0);
      for (std::uint32_t m = 0; m <= M; ++m) {
        e[i] = m;
        g.add_term(e, grade0(q, Laurent::monomial(field, static_cast<long>(Q * (m + 1)))));
      }
      term = (term * g).truncated(P);
    }
    out += term;
  };
  for (const auto& f : first) expand(f);
  for (const auto& f : second) expand(f);
  return out.truncated(P);
}

nlohmann::json ExplicitRHS::to_json() const {
  auto dump = [](const std::vector<SimpleFraction>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& f : v) a.push_back({{"coefficient", fraction_to_json(f.coeff)}, {"pole", f.pole}});
    return a;
  };
  return {{"s", s}, {"k", k}, {"first", dump(first)}, {"second", dump(second)}};
}

ExplicitRHS explicit_rhs(FieldPtr field, std::size_t s, long k) {
  const std::uint64_t q = field->order();
  if (s < 1 || s > 2 * (q - 1)) throw PreconditionError("s must lie in [1, 2(q-1)]");
  if (k < 1) throw PreconditionError("k must be positive");
  if ((static_cast<long>(s) - k) % static_cast<long>(q - 1) != 0) {
    throw PreconditionError("k must be congruent to s modulo q-1");
  }
  CarlitzCache& cc = carlitz_cache(field);
  ExplicitRHS r;
  r.s = s;
  r.k = k;
  const auto K = static_cast<std::uint64_t>(k);

  // First sum: beta in N^s with |q^beta| <= k.
  std::vector<int> beta(s, 0);
  std::function<void(std::size_t, std::uint64_t)> first = [&](std::size_t i, std::uint64_t used) {
    if (i == s) {
      const std::uint64_t m = K - used;
      Fraction c = bc(field, m).value / Fraction(carlitz_factorial(field, m));
      for (int b : beta) c = c / Fraction(cc.D(static_cast<unsigned>(b)));
      r.first.push_back({c, beta});
      return;
    }
    for (int b = 0;; ++b) {
      const std::uint64_t Q = ipow(q, static_cast<std::uint64_t>(b));
      if (used + Q + (s - i - 1) > K) break;
      beta[i] = b;
      first(i + 1, used + Q);
    }
  };
  first(0, 0);

  // Second sum: masks with |alpha| = s - q, beta supported on alpha with
  // <alpha, q^beta> = k - 1.
  if (s >= q) {
    for (const auto& mask : binary_masks(s, s - q)) {
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < s; ++i) {
        if (mask[i]) active.push_back(i);
      }
      std::vector<int> pole(s, -1);
      std::function<void(std::size_t, std::uint64_t)> second = [&](std::size_t j, std::uint64_t used) {
        if (j == active.size()) {
          if (used != K - 1) return;
          Fraction c = -Fraction::one(field);
          for (std::size_t i : active) c = c / Fraction(cc.D(static_cast<unsigned>(pole[i])));
          r.second.push_back({c, pole});
          return;
        }
        for (int b = 0;; ++b) {
          const std::uint64_t Q = ipow(q, static_cast<std::uint64_t>(b));
          if (used + Q > K - 1) break;
          pole[active[j]] = b;
          second(j + 1, used + Q);
        }
        pole[active[j]] = -1;
      };
      second(0, 0);
    }
  }
  return r;
}

IdentityReport verify_explicit(FieldPtr field, std::size_t s, long k, unsigned D, long N, std::uint32_t M) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  IdentityReport rep;
  rep.identity = "explicit-L";
  const ExplicitRHS rhs = explicit_rhs(field, s, k);
  const long NW = N + kGuard + k;
  if (D == 0) D = auto_degree(q, k, NW, M);
  rep.params = {{"q", q}, {"s", s}, {"k", k}, {"D", D}, {"N", N}, {"M", M}};
  const auto vars = t_vars(s);
  const LSeriesTruncation L = pellarin_trunc(field, s, k, D, NW, M);
  rep.tail_bound_exponent = L.tail_bound_exponent;

  Tate lhs = L.value;
  for (std::size_t i = 0; i < s; ++i) lhs = lhs * omega(field, NW, M, vars, i);
  const Ramified pik = pi_bar(field, NW + k).pow(static_cast<std::uint64_t>(k)).inverse(g * NW);
  lhs = lhs.scale(pik);

  bool pure = true;
  for (const auto& [e, c] : lhs.series().terms()) {
    const auto gr = c.grade();
    if (!c.is_zero() && (!gr || *gr != 0)) pure = false;
  }
  rep.details["grade_zero"] = pure;
  rep.details["rhs"] = rhs.to_json();
  const Tate rt = rhs.to_tate(field, NW, M);
  record_tate(rep, tate_equal(lhs, rt), "L_times_omega");
  if (rep.witness == std::nullopt) rep.pass = true;
  if (!pure) rep.fail("pi~^{-k} L omega has a coefficient outside grade 0");
  rep.millis = sw.millis();
  return rep;
}

IdentityReport verify_main_theorem(FieldPtr field, std::size_t s, const Fraction& z, unsigned D, long N,
                                   std::uint32_t M) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  if (s < 1 || s > 2 * (q - 1)) throw PreconditionError("s must lie in [1, 2(q-1)]");
  if (z.is_zero() || z.degree() >= 0) throw PreconditionError("the main theorem needs 0 < |z| < 1");
  IdentityReport rep;
  rep.identity = "main-theorem";
  const long NW = N + kGuard;
  if (D == 0) D = auto_degree(q, 1, NW, M);
  rep.params = {{"q", q}, {"s", s}, {"z", fraction_to_json(z)}, {"D", D}, {"N", N}, {"M", M}};
  const auto vars = t_vars(s);
  rep.tail_bound_exponent = block_tail_exponent(q, 1, D, M);
  const long P = std::min(NW, *rep.tail_bound_exponent);
  const long vz = -z.degree();
  const Laurent zl = Laurent::from_fraction(z, P + 2 * vz + 2);
  const Tate lhs = character_sum(
      field, s, M, enumerate_polys(field, D, EnumMode::DegreeBelow),
      [&](const Poly& a) { return (zl - Laurent::from_poly(a)).inverse(P); }, g * P);

  const long NR = NW + 2 * static_cast<long>(s) + 4;
  const Ramified pi = pi_bar(field, NR + 4);
  const Ramified x = pi * grade0(q, zl);
  const Ramified ex = carlitz_exp(x, NR);
  const Ramified lead = pi * ex.inverse(g * NR);
  std::vector<Tate> f, winv;
  for (std::size_t i = 0; i < s; ++i) {
    f.push_back(agf(x, NR, M, vars, i));
    winv.push_back(omega(field, NR, M, vars, i).inverse());
  }
  Tate first = constant_tate(vars, M, lead);
  for (std::size_t i = 0; i < s; ++i) first = first * f[i] * winv[i];
  Tate rhs = first;
  if (s >= q) {
    for (const auto& mask : binary_masks(s, s - q)) {
      Tate term = constant_tate(vars, M, pi);
      for (std::size_t i = 0; i < s; ++i) {
        if (mask[i]) term = term * f[i];
        term = term * winv[i];
      }
      rhs -= term;
    }
  }
  record_tate(rep, tate_equal(lhs, rhs), "sum_over_A");
  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

IdentityReport verify_pellarin_formula(FieldPtr field, unsigned D, long N, std::uint32_t M) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  IdentityReport rep;
  rep.identity = "pellarin-formula";
  const long NW = N + kGuard;
  if (D == 0) D = auto_degree(q, 1, NW, M);
  rep.params = {{"q", q}, {"D", D}, {"N", N}, {"M", M}};
  const LSeriesTruncation L = pellarin_trunc(field, 1, 1, D, NW, M);
  rep.tail_bound_exponent = L.tail_bound_exponent;
  const std::vector<std::string> vars{"t1"};

  // prod_{i>=1} (1 - theta^{1-q^i})^{-1} prod_{j>=1} (1 - t theta^{-q^j})
  Laurent euler = Laurent::one(field).truncated(NW);
  for (std::uint64_t Q = q; static_cast<long>(Q) - 1 < NW; Q *= q) {
    euler = euler * (Laurent::one(field) - Laurent::monomial(field, static_cast<long>(Q) - 1)).inverse(NW);
  }
  Tate rhs = constant_tate(vars, M, grade0(q, euler));
  const Tate t = Tate::variable(field, q, vars, M, 0);
  for (std::uint64_t Q = q; static_cast<long>(Q) < NW; Q *= q) {
    const Tate factor =
        constant_tate(vars, M, Ramified::one(field, q)) - t.scale(grade0(q, Laurent::monomial(field, static_cast<long>(Q))));
    rhs = rhs * factor;
  }
  rhs = rhs.truncated(g * NW);
  record_tate(rep, tate_equal(L.value, rhs), "product_formula");

  // The same function is pi~ / ((theta - t) omega(t)).
  const Tate w = omega(field, NW + 2, M, vars, 0);
  const Tate theta_minus_t = constant_tate(vars, M, theta_r(field)) - t;
  const Tate alt = (theta_minus_t * w).inverse().scale(pi_bar(field, NW + 2));
  record_tate(rep, tate_equal(L.value, alt), "pi_over_omega");

  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

IdentityReport verify_carlitz_genfun(FieldPtr field, const Fraction& z, unsigned D, long N) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  if (z.is_zero() || z.degree() >= 0) throw PreconditionError("the generating function needs 0 < |z| < 1");
  IdentityReport rep;
  rep.identity = "carlitz-genfun";
  const long NW = N + kGuard;
  if (D == 0) D = auto_degree(q, 1, NW, -1);
  rep.params = {{"q", q}, {"z", fraction_to_json(z)}, {"D", D}, {"N", N}};
  rep.tail_bound_exponent = block_tail_exponent(q, 1, D, -1);
  const long P = std::min(NW, *rep.tail_bound_exponent);
  const long vz = -z.degree();
  const Laurent zl = Laurent::from_fraction(z, P + 2 * vz + 2);
  Laurent lhs = Laurent(field).truncated(P);
  for (const Poly& a : enumerate_polys(field, D, EnumMode::DegreeBelow)) {
    lhs += (zl - Laurent::from_poly(a)).inverse(P);
  }
  const long NR = NW + 4;
  const Ramified pi = pi_bar(field, NR + 4);
  const Ramified rhs = pi * carlitz_exp(pi * grade0(q, zl), NR).inverse(g * NR);
  record_ramified(rep, grade0(q, lhs).truncated(g * P), rhs.truncated(g * P), "sum_over_A");

  // Power-series coefficients: zeta(n) = BC(n)/Pi(n) pi~^n for (q-1) | n.
  for (long n = g; n <= 2 * g; n += g) {
    const ZetaTruncation zt = zeta_trunc(field, n, auto_degree(q, n, NW, -1), NW);
    const Fraction c = bc(field, static_cast<std::uint64_t>(n)).value /
                       Fraction(carlitz_factorial(field, static_cast<std::uint64_t>(n)));
    const Ramified expect =
        grade0(q, Laurent::from_fraction(c, NW + 4 * n)) * pi_bar(field, NW + 4 * n).pow(static_cast<std::uint64_t>(n));
    record_ramified(rep, grade0(q, zt.value), expect.truncated(g * NW), "zeta_" + std::to_string(n));
  }
  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

// ---- limits -------------------------------------------------------------

LimitKind parse_limit_kind(const std::string& name) {
  for (auto k : all_limit_kinds()) {
    if (limit_kind_name(k) == name) return k;
  }
  throw PreconditionError("unknown limit " + name);
}

std::string limit_kind_name(LimitKind kind) {
  switch (kind) {
    case LimitKind::BOverEll1: return "b-over-ell-1";
    case LimitKind::BOverEll2: return "b-over-ell-2";
    case LimitKind::BOverEll3: return "b-over-ell-3";
    case LimitKind::EdToExp: return "ed-to-exp";
    case LimitKind::WagnerAgf: return "wagner-agf";
  }
  return "?";
}

std::vector<LimitKind> all_limit_kinds() {
  return {LimitKind::BOverEll1, LimitKind::BOverEll2, LimitKind::BOverEll3, LimitKind::EdToExp,
          LimitKind::WagnerAgf};
}

namespace {

Tate b_tate(FieldPtr F, unsigned e, const std::vector<std::string>& vars, std::size_t i, std::uint32_t M) {
  const TPoly& b = carlitz_cache(F).b_tpoly(e);
  Tate t(F, F->order(), vars, M);
  mv::Exponents x(vars.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    x[i] = static_cast<std::uint32_t>(k);
    t.add_term(x, Ramified::from_poly(F->order(), b[k]));
  }
  return t;
}

Fraction E_value(FieldPtr F, unsigned d, const Fraction& z) {
  const auto& c = carlitz_cache(F).E_coeffs(d);
  Fraction acc(F);
  Fraction zq = z;
  for (unsigned i = 0; i <= d; ++i) {
    acc += c[i] * zq;
    zq = zq.frobenius_power(F->order());
  }
  return acc;
}

}  // namespace

IdentityReport verify_limits(FieldPtr field, LimitKind kind, long N, std::uint32_t M) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  IdentityReport rep;
  rep.identity = "limits";
  rep.params = {{"q", q}, {"kind", limit_kind_name(kind)}, {"N", N}, {"M", M}};
  const long NW = N + kGuard;
  const long P = g * NW;
  CarlitzCache& cc = carlitz_cache(field);
  const Fraction z(Poly::one(field), Poly::monomial(field, 1));
  const Ramified pi = pi_bar(field, NW + 8);

  // b_e(t)^q has the size of ell_e, so 1/ell_e needs deg ell_e extra digits.
  auto ell_inverse = [&](unsigned e) {
    const Poly& l = cc.ell(e);
    return Laurent::from_poly(l).inverse(NW + 8 + static_cast<long>(l.degree()));
  };
  unsigned first = 1;
  std::function<TateComparison(unsigned)> distance;
  const std::vector<std::string> one{"t"};
  switch (kind) {
    case LimitKind::BOverEll1: {
      first = 0;
      const Tate target = omega(field, NW + 4, M, one, 0).inverse().scale(-pi).truncated(P);
      distance = [&, target](unsigned e) {
        const Laurent inv = ell_inverse(e);
        return tate_equal(b_tate(field, e + 1, one, 0, M).scale(grade0(q, inv)).truncated(P), target);
      };
      break;
    }
    case LimitKind::BOverEll2: {
      first = 1;
      const auto vars = t_vars(q);
      Tate prod = constant_tate(vars, M, -pi);
      for (std::size_t i = 0; i < q; ++i) prod = prod * omega(field, NW + 4, M, vars, i).inverse();
      const Tate target = prod.truncated(P);
      distance = [&, target, vars](unsigned e) {
        Tate lhs = constant_tate(vars, M, grade0(q, ell_inverse(e)));
        for (std::size_t i = 0; i < q; ++i) lhs = lhs * b_tate(field, e, vars, i, M);
        return tate_equal(lhs.truncated(P), target);
      };
      break;
    }
    case LimitKind::BOverEll3: {
      first = 1;
      distance = [&](unsigned e) {
        const Laurent inv = ell_inverse(e);
        return tate_equal(b_tate(field, e, one, 0, M).scale(grade0(q, inv)).truncated(P), Tate(field, q, one, M, P));
      };
      break;
    }
    case LimitKind::EdToExp: {
      first = 1;
      const Ramified zl = grade0(q, Laurent::from_fraction(z, NW));
      const Ramified target = (pi.inverse(P) * carlitz_exp(pi * zl, NW + 4)).truncated(P);
      distance = [&, target](unsigned d) {
        const Fraction v = Fraction(cc.ell(d)) * E_value(field, d, z);
        const Ramified lhs = grade0(q, Laurent::from_fraction(v, NW + 4)).truncated(P);
        return tate_equal(constant_tate(one, 0, lhs), constant_tate(one, 0, target));
      };
      break;
    }
    case LimitKind::WagnerAgf: {
      first = 1;
      const Ramified zl = grade0(q, Laurent::from_fraction(z, NW));
      const Tate target = agf(pi * zl, NW + 4, M, one, 0).truncated(P);
      const Tate w = omega(field, NW + 4, M, one, 0);
      distance = [&, target, w](unsigned d) {
        Tate xi(field, q, one, M);
        for (unsigned j = 0; j < d; ++j) {
          xi += b_tate(field, j, one, 0, M).scale(grade0(q, Laurent::from_fraction(E_value(field, j, z), NW + 4)));
        }
        return tate_equal((xi * w).truncated(P), target);
      };
      break;
    }
  }
  // Walk the stages until the distance passes N/2 (at least three stages,
  // at most kMaxStages), then judge the last three.
  constexpr unsigned kMaxStages = 8;
  std::vector<long> margins;
  nlohmann::json rows = nlohmann::json::array();
  for (unsigned st = first; st < first + kMaxStages; ++st) {
    const TateComparison c = distance(st);
    margins.push_back(c.margin);
    rows.push_back({{"stage", st}, {"distance_exponent", floor_div(c.margin, g)}, {"at_precision", c.equal}});
    if (margins.size() >= 3 && c.margin > g * (N / 2)) break;
  }
  margins.erase(margins.begin(), margins.end() - 3);
  rows.erase(rows.begin(), rows.end() - 3);
  rep.details["stages"] = rows;
  bool decreasing = true;
  for (std::size_t i = 1; i < margins.size(); ++i) decreasing = decreasing && margins[i] > margins[i - 1];
  const long final_exp = floor_div(margins.back(), g);
  rep.certified_precision_exponent = final_exp;
  rep.pass = true;
  if (!decreasing) rep.fail("distances are not strictly decreasing");
  if (!(margins.back() > g * (N / 2))) rep.fail("final distance exponent " + std::to_string(final_exp) + " not beyond N/2");
  rep.millis = sw.millis();
  return rep;
}

// ---- specializations ----------------------------------------------------

IdentityReport character_sum_check(FieldPtr field, const Poly& v, long n, unsigned D, long N) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  IdentityReport rep;
  rep.identity = "char-sum";
  if (n < 1) throw PreconditionError("n must be positive");
  const ExtensionRoots ext = roots_in_extension(v);
  const auto d = static_cast<std::uint64_t>(v.degree());
  if (D == 0) D = static_cast<unsigned>((N + n - 1) / n);
  rep.params = {{"q", q}, {"v", poly_to_json(v)}, {"n", n}, {"D", D}, {"N", N}};
  rep.tail_bound_exponent = n * static_cast<long>(D);
  const long P = std::min(N, *rep.tail_bound_exponent);
  const Elem lam = ext.roots[0];
  const std::uint64_t e = ipow(q, d) - 1;
  Laurent lhs = Laurent(field).truncated(P);
  for (const Poly& a : monic_below(field, D)) {
    const Elem val = ext.big->pow(a.embed(ext.embedding).eval(lam), e);
    const Elem c = ext.embedding.preimage(val);
    if (c == 0) continue;
    lhs += Laurent::from_poly(a.pow(static_cast<std::uint64_t>(n))).inverse(P).scale(c);
  }
  const ZetaTruncation z = zeta_trunc(field, n, auto_degree(q, n, N + kGuard, -1), N + kGuard);
  const Laurent vinv = Laurent::from_poly(v.pow(static_cast<std::uint64_t>(n))).inverse(N + kGuard);
  const Laurent rhs = ((Laurent::one(field) - vinv) * z.value).truncated(P);
  record_ramified(rep, grade0(q, lhs), grade0(q, rhs), "euler_factor");
  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

IdentityReport omega_root_product(FieldPtr field, const Poly& v, long N) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  IdentityReport rep;
  rep.identity = "omega-root-product";
  const auto d = static_cast<std::size_t>(v.degree());
  rep.params = {{"q", q}, {"v", poly_to_json(v)}, {"N", N}};
  const ExtensionRoots ext = roots_in_extension(v);
  const long NW = N + kGuard;
  const auto M = static_cast<std::uint32_t>(NW);
  const Tate w = omega(field, NW, M).embed(ext.embedding);
  // |omega_m| <= |iota| q^{-m}, so the dropped tail has scaled valuation
  // at least -1 + (q-1)(M+1).
  const long tail = -1 + g * (static_cast<long>(M) + 1);
  rep.tail_bound_exponent = floor_div(tail, g);
  Ramified prod = Ramified::one(ext.big, q);
  for (std::size_t i = 1; i <= d; ++i) {
    const Elem root = ext.roots[i % d];
    const Ramified at = Ramified::from_laurent(q, Laurent::monomial(ext.big, 0, root));
    const Tate val = w.evaluate(0, at, tail);
    prod = prod * val.coeff({0}).pow(q - 1);
  }
  Poly target = v.embed(ext.embedding);
  if (d % 2 == 1) target = -target;
  record_ramified(rep, prod, Ramified::from_poly(q, target), "root_product");
  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

IdentityReport verify_omega_eigen(FieldPtr field, long N, std::uint32_t M) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  const long g = q - 1;
  IdentityReport rep;
  rep.identity = "omega-eigen";
  rep.params = {{"q", q}, {"N", N}, {"M", M}};
  const long NW = N + kGuard;
  const std::vector<std::string> vars{"t"};
  const Tate w = omega(field, NW, M);
  const Tate t = Tate::variable(field, q, vars, M, 0);
  const Tate th = constant_tate(vars, M, theta_r(field));
  record_tate(rep, tate_equal(w.twist(), (t - th) * w), "tau_omega");
  record_tate(rep, tate_equal(w.scale(theta_r(field)) + w.twist(), t * w), "carlitz_theta_omega");
  const Ramified pi = pi_bar(field, NW + 4);
  record_tate(rep, tate_equal(agf(pi, NW, M), w), "agf_at_pi");

  // (theta - t) omega(t) at t = theta. Coefficient m has valuation about
  // (q-1) m in units of v(1/theta) after multiplying by theta^m.
  const auto M2 = static_cast<std::uint32_t>(NW / g + 3);
  const auto c = omega_coeffs(field, 2 * NW + 4, M2 + 1);
  Ramified sum(field, q, g * NW);
  const Ramified theta = theta_r(field);
  Ramified thpow = Ramified::one(field, q);
  for (std::uint32_t m = 0; m <= M2; ++m) {
    Ramified cm = theta * c[m];
    if (m > 0) cm -= c[m - 1];
    sum += cm * thpow;
    thpow = thpow * theta;
  }
  record_ramified(rep, sum.truncated(g * NW), pi.truncated(g * NW), "residue_at_theta");
  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

IdentityReport verify_exp_functional_equation(FieldPtr field, const Fraction& z, long N) {
  Stopwatch sw;
  const std::uint32_t q = field->order();
  IdentityReport rep;
  rep.identity = "exp-functional-equation";
  rep.params = {{"q", q}, {"z", fraction_to_json(z)}, {"N", N}};
  const long NW = N + kGuard;
  const Ramified pi = pi_bar(field, NW + 8);
  const Ramified x = pi * grade0(q, Laurent::from_fraction(z, NW + 8));
  const Ramified theta = theta_r(field);
  const Ramified ex = carlitz_exp(x, NW);
  const Ramified lhs = carlitz_exp(theta * x, NW);
  const Ramified rhs = ex.frobenius(q) + theta * ex;
  const long P = static_cast<long>(q - 1) * N;
  record_ramified(rep, lhs.truncated(P), rhs.truncated(P), "e_theta_x");
  if (!rep.witness) rep.pass = true;
  rep.millis = sw.millis();
  return rep;
}

}  // namespace ffz
