#include <gtest/gtest.h>

#include <random>

#include "ffzeta/errors.hpp"
#include "ffzeta/carlitz.hpp"
#include "ffzeta/serialize.hpp"

using namespace ffz;

namespace {

// prod_{a in A(d)} (x - a).
Poly vanishing_product(FieldPtr F, unsigned d, const Poly& x) {
  Poly r = Poly::one(F);
  for (const Poly& a : enumerate_polys(F, d, EnumMode::DegreeBelow)) r *= x - a;
  return r;
}

TEST(Carlitz, DjIsProductOfMonics) {
  for (std::uint32_t q : {3u, 5u}) {
    FieldPtr F = make_field(q, 1);
    CarlitzCache& cc = carlitz_cache(F);
    for (unsigned d = 0; d <= (q == 3 ? 3u : 2u); ++d) {
      Poly prod = Poly::one(F);
      for (const Poly& a : enumerate_polys(F, d, EnumMode::ExactDegree)) prod *= a;
      EXPECT_EQ(cc.D(d), prod) << q << " " << d;
    }
  }
}

TEST(Carlitz, EdAgainstVanishingProduct) {
  for (std::uint32_t q : {3u, 5u}) {
    FieldPtr F = make_field(q, 1);
    CarlitzCache& cc = carlitz_cache(F);
    for (unsigned d = 0; d <= 2; ++d) {
      for (const Poly& x : enumerate_polys(F, d + 1, EnumMode::DegreeBelow)) {
        const Poly expect = divide_exact(vanishing_product(F, d, x), cc.D(d));
        EXPECT_EQ(cc.E_at(d, x), expect) << q << " d=" << d << " x=" << x;
      }
      EXPECT_EQ(cc.E_at(d, Poly::monomial(F, d)), Poly::one(F));
    }
  }
}

TEST(Carlitz, BdVanishesAtConjugates) {
  FieldPtr F = make_field(3, 1);
  CarlitzCache& cc = carlitz_cache(F);
  for (unsigned d = 1; d <= 4; ++d) {
    const TPoly& b = cc.b_tpoly(d);
    EXPECT_EQ(b.size(), d + 1u);
    EXPECT_TRUE(b.back().is_one());
    std::uint64_t Q = 1;
    for (unsigned j = 0; j < d; ++j, Q *= 3) EXPECT_TRUE(eval_tpoly(b, Poly::monomial(F, Q)).is_zero());
    EXPECT_FALSE(eval_tpoly(b, Poly::monomial(F, Q)).is_zero());
  }
}

TEST(Carlitz, EllIsSignedBracketProduct) {
  FieldPtr F = make_field(5, 1);
  CarlitzCache& cc = carlitz_cache(F);
  Poly L = Poly::one(F);
  for (unsigned e = 1; e <= 3; ++e) {
    L *= cc.bracket(e);
    EXPECT_EQ(cc.ell(e), e % 2 ? -L : L) << e;
  }
}

TEST(Carlitz, ActionIsRingHomomorphism) {
  FieldPtr F = make_field(3, 1);
  const Poly a = parse_poly(F, "x^2 + 2*x");
  const Poly b = parse_poly(F, "x + 1");
  EXPECT_EQ(carlitz_action(a * b), carlitz_action(a) * carlitz_action(b));
  EXPECT_EQ(carlitz_action(a + b), carlitz_action(a) + carlitz_action(b));
  const TwistedA ct = carlitz_action(Poly::monomial(F, 1));
  EXPECT_EQ(ct.degree(), 1);
  EXPECT_EQ(ct.coeff(0), Poly::monomial(F, 1));
  EXPECT_TRUE(ct.coeff(1).is_one());
}

TEST(Carlitz, EdRecursion) {
  for (std::uint32_t q : {3u, 5u}) {
    for (unsigned d = 0; d <= 2; ++d) {
      const auto r = verify_ed_recursion(make_field(q, 1), d);
      EXPECT_TRUE(r.pass) << q << " " << d << " " << r.witness.value_or("");
    }
  }
}

TEST(Carlitz, FactorialAndMultinomials) {
  FieldPtr F = make_field(3, 1);
  CarlitzCache& cc = carlitz_cache(F);
  // Pi(n) = prod D_i^{n_i} over the base-q digits of n.
  EXPECT_EQ(carlitz_factorial(F, 0), Poly::one(F));
  EXPECT_EQ(carlitz_factorial(F, 5), cc.D(1) * cc.D(0).pow(2));
  EXPECT_EQ(carlitz_factorial(F, 13), cc.D(2) * cc.D(1) * cc.D(0));

  // 200 random instances: exact division and the bracket-power form agree.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = rng() % 120;
    std::vector<std::uint64_t> parts;
    std::uint64_t left = n;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j + 1 < k; ++j) {
      const std::uint64_t x = left == 0 ? 0 : rng() % (left + 1);
      parts.push_back(x);
      left -= x;
    }
    parts.push_back(left);
    const Poly slow = bracket_multinomial(F, n, parts);
    EXPECT_EQ(bracket_multinomial_fast(F, n, parts), slow) << "n=" << n;
    Poly den = Poly::one(F);
    for (auto x : parts) den *= carlitz_factorial(F, x);
    EXPECT_EQ(slow * den, carlitz_factorial(F, n));
  }
  EXPECT_THROW(bracket_multinomial(F, 5, {2, 2}), PreconditionError);
}

TEST(Carlitz, BaseQ) {
  const BaseQ b = base_q(304, 3);
  EXPECT_EQ(b.digits, (std::vector<std::uint32_t>{1, 2, 0, 2, 0, 1}));
  EXPECT_EQ(b.length(), 6u);
  EXPECT_EQ(base_q(0, 5).length(), 0u);
  EXPECT_THROW(base_q(4, 1), PreconditionError);
}

}  // namespace
