#include <gtest/gtest.h>

#include "ffzeta/bcnum.hpp"

using namespace ffz;

namespace {

using Tuple = std::vector<std::uint32_t>;

TEST(BCNum, SmallValuesAndSeriesOracle) {
  for (std::uint32_t p : {3u, 5u}) {
    FieldPtr F = make_field(p, 1);
    EXPECT_EQ(bc(F, 0).value, Fraction::one(F));
    const auto oracle = bc_series_oracle(F, 30);
    for (std::uint64_t n = 0; n <= 30; ++n) {
      if (n % (p - 1) != 0) {
        EXPECT_TRUE(oracle[n].is_zero()) << "p=" << p << " n=" << n;
        continue;
      }
      EXPECT_EQ(bc(F, n).value, oracle[n]) << "p=" << p << " n=" << n;
    }
  }
}

TEST(BCNum, Q3Denominators) {
  FieldPtr F = make_field(3, 1);
  const BCRecord b16 = bc(F, 16);
  EXPECT_EQ(b16.value.den(), product_of_irreducibles(F, 2));
  EXPECT_FALSE(b16.denominator.unit);
  EXPECT_EQ(b16.denominator.m, 2u);
  EXPECT_TRUE(bc(F, 70).value.is_polynomial());
  EXPECT_TRUE(bc(F, 70).denominator.unit);
  EXPECT_THROW(bc(F, 3), PreconditionError);
}

TEST(BCNum, VonStaudtShapeUpTo200) {
  FieldPtr F = make_field(3, 1);
  for (std::uint64_t n = 0; n <= 200; n += 2) EXPECT_NO_THROW(bc(F, n)) << n;
}

TEST(BCNum, DegreeOneRecurrence) {
  FieldPtr F = make_field(3, 1);
  for (std::uint64_t n : {2u, 16u, 304u}) {
    for (Elem lam = 0; lam < 3; ++lam) {
      auto r = verify_bc_recurrence_deg1(F, n, lam);
      EXPECT_TRUE(r.pass) << "n=" << n << " lambda=" << lam << " " << r.witness.value_or("");
    }
  }
  FieldPtr F5 = make_field(5, 1);
  for (std::uint64_t n : {4u, 24u, 28u}) {
    auto r = verify_bc_recurrence_deg1(F5, n, 2);
    EXPECT_TRUE(r.pass) << "q=5 n=" << n;
  }
}

TEST(BCNum, DegreeTwoRecurrence) {
  FieldPtr F = make_field(3, 1);
  for (const Poly& v : enumerate_irreducibles(F, 2)) {
    auto r = verify_bc_recurrence_deg2(F, 16, v);
    EXPECT_TRUE(r.pass) << v << " " << r.witness.value_or("");
  }
  auto r = verify_bc_recurrence_deg2(F, 304, enumerate_irreducibles(F, 2).front());
  EXPECT_TRUE(r.pass) << r.witness.value_or("");
  EXPECT_TRUE(r.details["integrality_asserted"].get<bool>());
}

TEST(Tuples, Norms) {
  auto a = norms({2, 2, 3, 5}, 3);
  EXPECT_TRUE(a.ordered);
  EXPECT_EQ(a.e, 2u);
  EXPECT_EQ(a.norm1, 288u);
  EXPECT_EQ(a.norm2, 288u);
  auto b = norms({1, 3, 3, 5}, 3);
  EXPECT_TRUE(b.ordered);
  EXPECT_EQ(b.e, 0u);
  EXPECT_EQ(b.norm1, 300u);
  EXPECT_EQ(b.norm2, 270u);
  EXPECT_EQ(norms({0, 0, 0, 0}, 3).norm1, 4u);
  EXPECT_FALSE(is_ordered({3, 2, 5, 5}));
  EXPECT_THROW(norm2({3, 2, 5, 5}, 3), PreconditionError);
}

TEST(Tuples, MaximalTuples) {
  EXPECT_EQ(max_tuple_norm1(304, 2, 3).beta, (Tuple{1, 3, 3, 5}));
  EXPECT_EQ(max_tuple_norm1(646, 2, 3).beta, (Tuple{4, 3, 5, 5}));
  const auto mu = max_tuple_norm2(304, 3);
  EXPECT_EQ(mu.beta, (Tuple{2, 2, 3, 5}));
  EXPECT_EQ(304 - *mu.norm2, 16u);
  const auto mu2 = max_tuple_norm2(646, 3);
  EXPECT_EQ(mu2.beta, (Tuple{4, 2, 5, 5}));
  EXPECT_EQ(646 - *mu2.norm2, 70u);
  EXPECT_EQ(max_tuple_norm1(8, 1, 3).norm1, max_norm1_exhaustive(8, 1, 3));
  EXPECT_FALSE(max_tuple_norm1(4, 2, 3).guarantee_applicable);
}

TEST(Tuples, ExhaustiveMaximality) {
  for (std::uint64_t n = 4; n <= 200; n += 2) {
    const auto m1 = max_tuple_norm1(n, 2, 3);
    if (n >= 4) EXPECT_EQ(m1.norm1, max_norm1_exhaustive(n, 2, 3)) << n;
    if (base_q(n, 3).length() >= 6) {
      const auto m2 = max_tuple_norm2(n, 3);
      EXPECT_EQ(*m2.norm2, max_norm2_exhaustive(n, 3)) << n;
      EXPECT_LE(*m2.norm2, m1.norm1);
      EXPECT_EQ(*m2.norm2 == m1.norm1, m1.e == 2) << n;
      for (auto x : m1.beta) EXPECT_NE(x, 0u) << n;
    }
  }
}

TEST(Divisibility, Q3Examples) {
  FieldPtr F = make_field(3, 1);
  const auto b304 = divisibility_bound_deg2(F, 304);
  EXPECT_EQ(b304.exponent, 14);
  EXPECT_TRUE(b304.denominator_branch);
  EXPECT_EQ(measure_valuation(F, 304, 2).minimum, 14u);
  const auto b1 = divisibility_bound_deg1(F, 304);
  EXPECT_LE(b1.exponent, static_cast<long>(*measure_valuation(F, 304, 1).minimum));
  EXPECT_GE(*measure_valuation(F, 70, 2).minimum, 5u);
  EXPECT_THROW(divisibility_bound_deg2(F, 2), PreconditionError);
}

TEST(Divisibility, Gamma) {
  EXPECT_EQ(gamma_sequence(3, 2, 1, 0).gamma, 80u);
  for (unsigned j = 0; j < 4; ++j) EXPECT_EQ((gamma_sequence(3, 2, 1, j).gamma - 2) % (1u << 0), 0u);
  for (unsigned j = 0; j < 4; ++j) {
    std::uint64_t qj = 1;
    for (unsigned i = 0; i < j; ++i) qj *= 3;
    EXPECT_EQ((gamma_sequence(3, 2, 1, j).gamma - 2) % qj, 0u);
  }
  EXPECT_THROW(gamma_sequence(3, 4, 1, 0), PreconditionError);
}

TEST(Scan, DegreeTwoTo100) {
  FieldPtr F = make_field(3, 1);
  const auto rows = conjecture_scan(F, 2, 1, 100);
  EXPECT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.n;
}

}  // namespace
