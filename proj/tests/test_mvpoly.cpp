#include <gtest/gtest.h>

#include "ffzeta/errors.hpp"
#include "ffzeta/mvpoly.hpp"
#include "ffzeta/serialize.hpp"

using namespace ffz;

namespace {

struct Fixture {
  FieldPtr F = make_field(3, 1);
  PolyRing A{F};
  std::vector<std::string> vars{"t", "z"};
  mv::PolyA t = mv::PolyA::variable(A, vars, 0);
  mv::PolyA z = mv::PolyA::variable(A, vars, 1);
  mv::PolyA c(const std::string& s) const { return mv::PolyA::constant(A, vars, parse_poly(F, s)); }
};

TEST(MultiPoly, ArithmeticAndDegrees) {
  Fixture f;
  const auto p = f.t * f.t + f.c("x") * f.z + f.c("1");
  EXPECT_EQ(p.degree("t"), 2u);
  EXPECT_EQ(p.degree("z"), 1u);
  EXPECT_EQ(p.total_degree(), 2u);
  EXPECT_EQ(p - p, mv::PolyA(f.A, f.vars));
  EXPECT_EQ((p * p).total_degree(), 4u);
  EXPECT_EQ(p.pow(3), p * p * p);
  EXPECT_EQ(p.coeff({1, 1}), Poly(f.F));
  EXPECT_EQ(p.coeff({0, 1}), parse_poly(f.F, "x"));
  EXPECT_THROW(mv::PolyA(f.A, f.vars).degree(0), mv::UndefinedDegree);
  // Characteristic 3: (t + z)^3 = t^3 + z^3.
  EXPECT_EQ((f.t + f.z).pow(3), f.t.pow(3) + f.z.pow(3));
}

TEST(MultiPoly, Substitution) {
  Fixture f;
  const auto p = f.t * f.z + f.z.pow(2);
  const auto at = p.substitute(0, f.z + f.c("1"));
  EXPECT_EQ(at, f.z * f.z.scalar_mul(parse_poly(f.F, "2")) + f.z);
  EXPECT_EQ(p.substitute_value(1, parse_poly(f.F, "x")), f.t.scalar_mul(parse_poly(f.F, "x")) + f.c("x^2"));
  EXPECT_EQ(p.coefficient_in(1, 1), f.t);
}

TEST(MultiPoly, ExactDivision) {
  Fixture f;
  const auto g = f.z - f.c("x");
  const auto h = f.t * f.z + f.c("x^2+1");
  EXPECT_EQ(exact_divide(g * h, g, 1), h);
  EXPECT_THROW(exact_divide(h + f.c("1"), g, 1), InvariantError);
}

TEST(MultiPoly, FirstDifferenceAndMismatch) {
  Fixture f;
  const auto a = f.t + f.z;
  const auto b = f.t + f.z.scalar_mul(parse_poly(f.F, "2"));
  const auto d = first_difference(a, b);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, (mv::Exponents{0, 1}));
  EXPECT_FALSE(first_difference(a, a).has_value());
  const auto other = mv::PolyA::variable(f.A, {"t"}, 0);
  EXPECT_THROW(a + other, MismatchError);
}

}  // namespace
