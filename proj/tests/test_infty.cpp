#include <gtest/gtest.h>

#include "ffzeta/infty.hpp"

using namespace ffz;

namespace {

Tate t_minus_theta(FieldPtr F, std::uint32_t M) {
  const std::uint32_t q = F->order();
  Tate t = Tate::variable(F, q, {"t"}, M, 0);
  return t - Tate::constant({"t"}, M, Ramified::from_poly(q, Poly::monomial(F, 1)));
}

}  // namespace

TEST(Laurent, BasicArithmetic) {
  const FieldPtr F = make_field(3, 1);
  const Laurent u = Laurent::monomial(F, 1);
  const Laurent theta = Laurent::from_poly(Poly::monomial(F, 1));
  EXPECT_TRUE((u * theta - Laurent::one(F)).is_zero());
  EXPECT_TRUE((u * theta).is_exact());
  const Laurent g = (Laurent::one(F) - u).inverse(20);
  EXPECT_EQ(g.precision(), 20);
  for (long i = 0; i < 20; ++i) EXPECT_EQ(g.coeff(i), 1u);
}

TEST(Ramified, IotaRule) {
  for (std::uint32_t q : {3u, 5u}) {
    const FieldPtr F = make_field(q, 1);
    const Ramified iota = Ramified::iota_power(F, q, 1);
    const Ramified minus_theta = Ramified::from_poly(q, -Poly::monomial(F, 1));
    EXPECT_TRUE((iota.pow(q - 1) - minus_theta).is_zero());
    EXPECT_EQ(iota.valuation(), -1);
    const Ramified theta2 = Ramified::from_poly(q, Poly::monomial(F, 2));
    EXPECT_TRUE((iota.pow(2 * (q - 1)) - theta2).is_zero());
    EXPECT_TRUE((iota * iota.inverse() - Ramified::one(F, q)).is_zero());
  }
}

TEST(Infty, PiBarKernelAndTwist) {
  for (std::uint32_t q : {3u, 5u}) {
    const FieldPtr F = make_field(q, 1);
    const long N = 32;
    const Ramified pi = pi_bar(F, N + 4);
    EXPECT_EQ(pi.valuation(), -static_cast<long>(q));
    const Ramified e = carlitz_exp(pi, N);
    EXPECT_TRUE(e.is_zero()) << e.to_string();
    EXPECT_GE(e.precision(), (q - 1) * N);

    const std::uint32_t M = 4;
    const Tate w = omega(F, N, M);
    const auto cmp = tate_equal(w.twist(), t_minus_theta(F, M) * w);
    EXPECT_TRUE(cmp.equal);
    EXPECT_GE(cmp.certified_exponent(), 16);

    const auto cmp2 = tate_equal(agf(pi, N, M), w);
    EXPECT_TRUE(cmp2.equal) << cmp2.margin << " " << cmp2.certified;
    EXPECT_GE(cmp2.certified_exponent(), 16);

    const Ramified x = pi * Ramified::from_laurent(q, Laurent::monomial(F, 2));
    const Ramified theta = Ramified::from_poly(q, Poly::monomial(F, 1));
    const Ramified ex = carlitz_exp(x, N + 8);
    const Ramified lhs = carlitz_exp(theta * x, N + 8);
    const Ramified rhs = ex.frobenius(q) + theta * ex;
    EXPECT_TRUE((lhs - rhs).is_zero());
    EXPECT_GE((lhs - rhs).precision(), (q - 1) * N);
  }
}
