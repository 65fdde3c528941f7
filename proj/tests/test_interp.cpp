#include <gtest/gtest.h>

#include "ffzeta/interp.hpp"

using namespace ffz;

TEST(Interp, WagnerIdentity) {
  for (unsigned q : {3u, 5u}) {
    for (unsigned d = 1; d <= 3; ++d) {
      auto rep = verify_interp_identity(make_field(q, 1), d);
      EXPECT_TRUE(rep.pass) << q << " " << d << " " << rep.witness.value_or("");
    }
  }
}

TEST(Interp, ProductIdentity) {
  for (std::size_t s = 1; s <= 4; ++s) {
    for (unsigned d = 1; d <= 2; ++d) {
      auto rep = verify_product_identity(make_field(3, 1), s, d);
      EXPECT_TRUE(rep.pass) << s << " " << d << " " << rep.witness.value_or("");
    }
  }
}

TEST(Interp, Obstruction) {
  for (unsigned d = 1; d <= 2; ++d) {
    auto rep = verify_obstruction_identity(make_field(3, 1), d);
    EXPECT_TRUE(rep.pass) << d << " " << rep.witness.value_or("");
  }
}

TEST(Interp, ProductIdentityQ5) {
  for (std::size_t s = 1; s <= 8; ++s) {
    auto rep = verify_product_identity(make_field(5, 1), s, 1);
    EXPECT_TRUE(rep.pass) << s << " " << rep.witness.value_or("");
  }
}
