#include "property_laws.hpp"

#include <algorithm>
#include <random>

#include "ffzeta/carlitz.hpp"
#include "ffzeta/infty.hpp"
#include "ffzeta/interp.hpp"

namespace ffz::laws {

namespace {

struct Gen {
  std::mt19937_64 rng;
  FieldPtr F;
  Gen(FieldPtr f, std::uint64_t seed) : rng(seed), F(f) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }
  Elem elem() { return static_cast<Elem>(below(F->order())); }
  Elem nonzero() { return 1 + static_cast<Elem>(below(F->order() - 1)); }
  Poly poly(unsigned max_deg) {
    std::vector<Elem> c(below(max_deg + 1) + 1);
    for (auto& x : c) x = elem();
    return Poly(F, c);
  }
  Poly nonzero_poly(unsigned max_deg) {
    Poly p = poly(max_deg);
    return p.is_zero() ? Poly::constant(F, nonzero()) : p;
  }
  Laurent laurent(long lo, long hi) {
    const long start = lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    std::vector<Elem> c(1 + below(6));
    for (auto& x : c) x = elem();
    c[0] = nonzero();
    return Laurent(F, start, c);
  }
  Ramified ramified() {
    const std::uint32_t q = F->order();
    Ramified r(F, q);
    for (std::uint32_t g = 0; g + 1 < q; ++g) {
      if (below(2)) r += Ramified::homogeneous(q, g, laurent(-3, 3));
    }
    return r.is_zero() ? Ramified::one(F, q) : r;
  }
  Tate tate(const std::vector<std::string>& vars, std::uint32_t cap, unsigned max_deg) {
    Tate t(F, F->order(), vars, cap);
    const int terms = 1 + static_cast<int>(below(4));
    for (int i = 0; i < terms; ++i) {
      mv::Exponents e(vars.size());
      for (auto& x : e) x = static_cast<std::uint32_t>(below(max_deg + 1));
      t.add_term(e, ramified());
    }
    return t;
  }
};

class Recorder {
 public:
  Recorder(std::string name, int cases) { r_.name = std::move(name), r_.cases = cases; }
  void check(bool ok, int i, const std::string& what) {
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = "case " + std::to_string(i) + ": " + what;
  }
  LawResult result() const { return r_; }

 private:
  LawResult r_;
};

}  // namespace

LawResult ultrametric(std::uint64_t seed, int cases) {
  Gen g(make_field(3, 1), seed);
  Recorder rec("ultrametric", cases);
  for (int i = 0; i < cases; ++i) {
    const Laurent a = g.laurent(-5, 5), b = g.laurent(-5, 5);
    const Laurent s = a + b;
    const long m = std::min(a.valuation(), b.valuation());
    if (!s.is_zero()) {
      rec.check(s.valuation() >= m, i, "v(a+b) < min(v(a), v(b))");
      if (a.valuation() != b.valuation()) rec.check(s.valuation() == m, i, "strict case not equal");
    }
    const Ramified x = g.ramified(), y = g.ramified();
    const Ramified z = x + y;
    if (!z.is_zero()) {
      rec.check(z.valuation() >= std::min(x.valuation(), y.valuation()), i, "ramified v(x+y) too small");
    }
  }
  return rec.result();
}

LawResult gauss_norm_multiplicative(std::uint64_t seed, int cases) {
  Gen g(make_field(3, 1), seed);
  Recorder rec("gauss-norm-multiplicative", cases);
  const std::vector<std::string> vars{"t1", "t2"};
  for (int i = 0; i < cases; ++i) {
    // Degrees stay below half the cap, so nothing is dropped.
    const Tate f = g.tate(vars, 10, 4), h = g.tate(vars, 10, 4);
    if (f.series().is_zero() || h.series().is_zero()) continue;
    rec.check((f * h).gauss_valuation() == f.gauss_valuation() + h.gauss_valuation(), i, "|fg| != |f||g|");
  }
  return rec.result();
}

LawResult precision_soundness(std::uint64_t seed, int cases) {
  Gen g(make_field(5, 1), seed);
  Recorder rec("precision-soundness", cases);
  for (int i = 0; i < cases; ++i) {
    const Laurent a = g.laurent(-4, 4), b = g.laurent(-4, 4);
    const long P = static_cast<long>(g.below(20));
    const Laurent ap = a.truncated(P);
    // A product or inverse computed from truncated data agrees with the
    // exact value below the precision it reports.
    const Laurent prod = ap * b;
    rec.check((prod - a * b).valuation() >= prod.precision(), i, "product beyond its precision");
    const Laurent i1 = a.inverse(P + 5);
    const Laurent i2 = a.inverse(P + 40);
    rec.check((i1 - i2).valuation() >= i1.precision(), i, "inverse caps disagree");
    rec.check((i1 * a - Laurent::one(g.F)).valuation() >= (i1 * a).precision(), i, "a * a^-1 != 1");
    if (!ap.is_zero()) {
      const Laurent j = ap.inverse(60);
      rec.check((j - i2).valuation() >= std::min(j.precision(), i2.precision()), i, "truncated inverse wrong");
    }
  }
  return rec.result();
}

LawResult interpolation_uniqueness(std::uint64_t seed, int cases) {
  FieldPtr F = make_field(3, 1);
  Gen g(F, seed);
  Recorder rec("interpolation-uniqueness", cases);
  const std::vector<std::string> vars{"z"};
  FractionField K{F};
  for (int i = 0; i < cases; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(g.below(2));
    const auto points = enumerate_polys(F, d, EnumMode::DegreeBelow);
    // A polynomial of z-degree < q^d is the interpolant of its own values.
    mv::PolyK f(K, vars);
    for (std::uint32_t k = 0; k < points.size(); ++k) {
      if (g.below(3) == 0) f.add_term({k}, Fraction(g.poly(2), g.nonzero_poly(1).monic()));
    }
    std::vector<mv::PolyK> values;
    for (const Poly& a : points) {
      values.push_back(mv::PolyK::constant(K, vars, f.substitute_value(0, Fraction(a)).constant_value()));
    }
    rec.check(interpolate_values(F, vars, 0, values, d) == f, i, "interpolant differs from source");
  }
  return rec.result();
}

LawResult ring_homomorphisms(std::uint64_t seed, int cases) {
  FieldPtr F = make_field(3, 1);
  const FieldEmbedding e(F, make_field(3, 2));
  Gen g(F, seed);
  Recorder rec("ring-homomorphisms", cases);
  for (int i = 0; i < cases; ++i) {
    const Poly a = g.poly(4), b = g.poly(4);
    rec.check((a * b).frobenius_power(3) == a.frobenius_power(3) * b.frobenius_power(3), i, "Frobenius (*)");
    rec.check((a + b).frobenius_power(3) == a.frobenius_power(3) + b.frobenius_power(3), i, "Frobenius (+)");
    rec.check((a * b).embed(e) == a.embed(e) * b.embed(e), i, "embedding (*)");
    rec.check((a + b).embed(e) == a.embed(e) + b.embed(e), i, "embedding (+)");
    rec.check((Laurent::from_poly(a * b) - Laurent::from_poly(a) * Laurent::from_poly(b)).is_zero(), i,
              "A -> K_infinity (*)");
    if (i % 10 == 0) {
      const Poly c = g.poly(2), d = g.poly(2);
      rec.check(carlitz_action(c * d) == carlitz_action(c) * carlitz_action(d), i, "C_{ab} != C_a C_b");
      rec.check(carlitz_action(c + d) == carlitz_action(c) + carlitz_action(d), i, "C_{a+b} != C_a + C_b");
    }
  }
  return rec.result();
}

LawResult valuation_additivity(std::uint64_t seed, int cases) {
  FieldPtr F = make_field(3, 1);
  Gen g(F, seed);
  Recorder rec("valuation-additivity", cases);
  const auto irr = enumerate_irreducibles(F, 2);
  for (int i = 0; i < cases; ++i) {
    const Poly v = irr[g.below(irr.size())];
    const Poly f = g.nonzero_poly(3) * v.pow(g.below(3));
    const Poly h = g.nonzero_poly(3) * v.pow(g.below(3));
    rec.check(valuation(f * h, v) == valuation(f, v) + valuation(h, v), i, "v_P(fh) != v_P(f) + v_P(h)");
    const Laurent x = g.laurent(-6, 6), y = g.laurent(-6, 6);
    rec.check((x * y).valuation() == x.valuation() + y.valuation(), i, "Laurent valuation");
    const Ramified r = g.ramified(), s = g.ramified();
    rec.check((r * s).valuation() == r.valuation() + s.valuation(), i, "ramified valuation");
  }
  return rec.result();
}

std::vector<LawResult> all_laws(std::uint64_t seed, int cases) {
  return {ultrametric(seed, cases),          gauss_norm_multiplicative(seed, cases),
          precision_soundness(seed, cases),  interpolation_uniqueness(seed, cases),
          ring_homomorphisms(seed, cases),   valuation_additivity(seed, cases)};
}

}  // namespace ffz::laws
