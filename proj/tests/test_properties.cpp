#include <gtest/gtest.h>

#include "property_laws.hpp"

using namespace ffz::laws;

namespace {

void expect_law(const LawResult& r) {
  EXPECT_EQ(r.cases, kCases);
  EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
}

TEST(Property, Ultrametric) { expect_law(ultrametric(kSeed, kCases)); }
TEST(Property, GaussNormMultiplicative) { expect_law(gauss_norm_multiplicative(kSeed, kCases)); }
TEST(Property, PrecisionSoundness) { expect_law(precision_soundness(kSeed, kCases)); }
TEST(Property, InterpolationUniqueness) { expect_law(interpolation_uniqueness(kSeed, kCases)); }
TEST(Property, RingHomomorphisms) { expect_law(ring_homomorphisms(kSeed, kCases)); }
TEST(Property, ValuationAdditivity) { expect_law(valuation_additivity(kSeed, kCases)); }

TEST(Property, SeedsAreReproducible) {
  const auto a = all_laws(11, 50);
  const auto b = all_laws(11, 50);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].failures, b[i].failures);
}

}  // namespace
