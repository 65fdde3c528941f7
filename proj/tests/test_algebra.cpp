#include <gtest/gtest.h>

#include "ffzeta/errors.hpp"
#include "ffzeta/fraction.hpp"
#include "ffzeta/serialize.hpp"

using namespace ffz;

namespace {

// Number of monic irreducibles of degree d over F_q by Moebius inversion.
std::uint64_t necklace(std::uint64_t q, unsigned d) {
  auto mu = [](unsigned n) {
    int r = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
    return n > 1 ? -r : r;
  };
  long long s = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    long long qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= static_cast<long long>(q);
    s += mu(d / e) * qe;
  }
  return static_cast<std::uint64_t>(s / d);
}

TEST(Field, ExtensionAxioms) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {5, 2}, {3, 3}}) {
    FieldPtr F = make_field(p, m);
    const Elem q = F->order();
    for (Elem a = 0; a < q; ++a) {
      EXPECT_EQ(F->add(a, F->neg(a)), 0u);
      if (a != 0) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
      EXPECT_EQ(F->pow(a, q), a);
      Elem fa = a;
      for (std::uint32_t i = 0; i < m; ++i) fa = F->frobenius(fa);
      EXPECT_EQ(fa, a);
      for (Elem b = 0; b < q; ++b) {
        EXPECT_EQ(F->add(a, b), F->add(b, a));
        EXPECT_EQ(F->frobenius(F->add(a, b)), F->add(F->frobenius(a), F->frobenius(b)));
        const Elem c = (a * 7 + b * 3 + 1) % q;
        EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      }
    }
    // Addition is coordinate-wise mod p.
    for (Elem a = 0; a < q; ++a) {
      const auto ca = F->coordinates(a);
      const auto cb = F->coordinates(q - 1 - a);
      std::vector<std::uint32_t> cs(m);
      for (std::uint32_t i = 0; i < m; ++i) cs[i] = (ca[i] + cb[i]) % p;
      EXPECT_EQ(F->add(a, q - 1 - a), F->from_coordinates(cs));
    }
  }
  EXPECT_THROW(make_field(4, 1), PreconditionError);
  EXPECT_EQ(make_field(3, 2), make_field(3, 2));
}

TEST(Field, Embedding) {
  FieldPtr small = make_field(3, 1);
  FieldPtr big = make_field(3, 2);
  FieldEmbedding e(small, big);
  for (Elem a = 0; a < 3; ++a) {
    for (Elem b = 0; b < 3; ++b) {
      EXPECT_EQ(e(small->mul(a, b)), big->mul(e(a), e(b)));
      EXPECT_EQ(e(small->add(a, b)), big->add(e(a), e(b)));
    }
    EXPECT_EQ(e.preimage(e(a)), a);
  }
  Elem outside = 0;
  while (big->pow(outside, 3) == outside) ++outside;
  EXPECT_THROW(e.preimage(outside), PreconditionError);
}

TEST(Poly, DivisionAndGcd) {
  FieldPtr F = make_field(5, 1);
  const Poly a = parse_poly(F, "x^5 + 3*x^2 + 1");
  const Poly b = parse_poly(F, "2*x^2 + x + 4");
  auto [qt, r] = divrem(a, b);
  EXPECT_EQ(qt * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
  const Poly g = parse_poly(F, "x + 2");
  EXPECT_EQ(gcd(a * g, b * g), g);
  EXPECT_EQ(divide_exact(a * b, b), a);
  EXPECT_THROW(divide_exact(a, b), InvariantError);
  EXPECT_THROW(divrem(a, Poly(F)), PreconditionError);
  EXPECT_EQ(valuation(g.pow(3) * a, g), 3u);
  EXPECT_EQ(Poly::monomial(F, 1).frobenius_power(5), Poly::monomial(F, 5));
  EXPECT_EQ((a + b).frobenius_power(5), a.frobenius_power(5) + b.frobenius_power(5));
}

TEST(Poly, IrreducibleCounts) {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FieldPtr F = make_field(q, 1);
    for (unsigned d = 1; d <= (q == 5 ? 3u : 4u); ++d) {
      const auto irr = enumerate_irreducibles(F, d);
      EXPECT_EQ(irr.size(), necklace(q, d)) << q << " " << d;
      for (const Poly& v : irr) EXPECT_TRUE(is_irreducible(v));
    }
    // theta^{q^d} - theta is the product of the P_e with e | d.
    for (unsigned d = 1; d <= 3; ++d) {
      std::uint64_t Q = 1;
      for (unsigned i = 0; i < d; ++i) Q *= q;
      Poly prod = Poly::one(F);
      for (unsigned e = 1; e <= d; ++e) {
        if (d % e == 0) prod *= product_of_irreducibles(F, e);
      }
      EXPECT_EQ(prod, Poly::monomial(F, Q) - Poly::monomial(F, 1));
    }
  }
  FieldPtr F = make_field(3, 1);
  EXPECT_FALSE(is_irreducible(parse_poly(F, "x^2 + 2*x + 1")));
  EXPECT_EQ(enumerate_polys(F, 2, EnumMode::DegreeBelow).size(), 9u);
  EXPECT_EQ(enumerate_polys(F, 2, EnumMode::ExactDegree).size(), 9u);
  ASSERT_EQ(enumerate_polys(F, 0, EnumMode::DegreeBelow).size(), 1u);
  EXPECT_TRUE(enumerate_polys(F, 0, EnumMode::DegreeBelow).front().is_zero());
}

TEST(Poly, RootsInExtension) {
  FieldPtr F = make_field(3, 1);
  for (unsigned d : {1u, 2u, 3u}) {
    for (const Poly& v : enumerate_irreducibles(F, d)) {
      const auto ext = roots_in_extension(v);
      ASSERT_EQ(ext.roots.size(), d);
      const Poly ve = v.embed(ext.embedding);
      for (std::size_t i = 0; i < d; ++i) {
        EXPECT_EQ(ve.eval(ext.roots[i]), 0u);
        EXPECT_EQ(ext.big->pow(ext.roots[i], 3), ext.roots[(i + 1) % d]);
      }
    }
  }
  EXPECT_THROW(roots_in_extension(parse_poly(F, "x^2 + 2*x + 1")), PreconditionError);
}

TEST(Fraction, LowestTerms) {
  FieldPtr F = make_field(3, 1);
  const Poly a = parse_poly(F, "x^2 + 1");
  const Poly b = parse_poly(F, "x + 1");
  const Fraction x(a * b, b.scale(2) * b);
  EXPECT_TRUE(x.den().is_monic());
  EXPECT_EQ(x, Fraction(a.scale(2), b));
  EXPECT_EQ(x * x.inverse(), Fraction::one(F));
  EXPECT_EQ(x - x, Fraction::zero(F));
  EXPECT_EQ(x.degree(), 1);
  EXPECT_EQ(x.pow(-2), x.inverse() * x.inverse());
  EXPECT_EQ(x.frobenius_power(3), x * x * x);
  EXPECT_THROW(Fraction(a, Poly(F)), PreconditionError);
  EXPECT_THROW(Fraction::zero(F).inverse(), PreconditionError);
}

TEST(Serialize, RoundTrips) {
  FieldPtr F = make_field(3, 1);
  const Poly p = parse_poly(F, "x^2 + 2");
  EXPECT_EQ(poly_to_json(p), nlohmann::json::parse("[2, 0, 1]"));
  EXPECT_EQ(poly_from_json(F, poly_to_json(p)), p);
  EXPECT_EQ(parse_poly(F, "[2,0,1]"), p);
  EXPECT_EQ(parse_poly(F, "x^2 - 1"), p);
  const Fraction z = parse_fraction(F, "1/x^2");
  EXPECT_EQ(z, Fraction(Poly::one(F), Poly::monomial(F, 2)));
  EXPECT_EQ(fraction_from_json(F, fraction_to_json(z)), z);
  EXPECT_THROW(poly_from_json(F, nlohmann::json::parse("[3]")), PreconditionError);
  EXPECT_THROW(parse_poly(F, "x^^2"), PreconditionError);

  FieldPtr F9 = make_field(3, 2);
  for (Elem a = 0; a < 9; ++a) EXPECT_EQ(elem_from_json(F9, elem_to_json(F9, a)), a);
  EXPECT_EQ(elem_to_json(F9, 5), nlohmann::json::parse("[2, 1]"));
}

}  // namespace
