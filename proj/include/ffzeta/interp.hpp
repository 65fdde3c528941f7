#pragma once

// Interpolation polynomials N^{(d)}(f) on A(d), the Wagner partial sums
// Xi^{(d)}(z;t) = sum_{j<d} b_j(t) E_j(z), and exact checks of the product
// identities built from them.

#include <cstddef>
#include <vector>

#include "ffzeta/carlitz.hpp"
#include "ffzeta/report.hpp"

namespace ffz {

/// N^{(d)} of the character product prod_{i in chars} chi_i, as an element
/// of K[t_1..t_s, z]. Character indices are 0-based positions in t_1..t_s.
/// An empty set interpolates the constant 1.
mv::PolyK newton_interp(FieldPtr field, std::size_t s, const std::vector<std::size_t>& chars, unsigned d);

/// The interpolant of arbitrary values: values[k] is f(a_k) for the k-th
/// element of A(d) in enumerate_polys order. Values live in K[vars] and
/// must not involve the variable vars[z_index].
mv::PolyK interpolate_values(FieldPtr field, const std::vector<std::string>& vars, std::size_t z_index,
                             const std::vector<mv::PolyK>& values, unsigned d);

/// Xi^{(d)} with t at position t_index and z at z_index of vars.
mv::PolyK wagner_partial(FieldPtr field, unsigned d, const std::vector<std::string>& vars, std::size_t t_index,
                         std::size_t z_index);
/// Xi^{(d)} over the variables (t, z).
mv::PolyK wagner_partial(FieldPtr field, unsigned d);

/// sum_{a in A(d)} chi_t(a) ell_d E_d(z-a)/(z-a) == sum_{j<d} b_j(t) E_j(z).
IdentityReport verify_interp_identity(FieldPtr field, unsigned d);

/// The product identity for N^{(d+1)}(chi_1...chi_s), 1 <= s <= 2(q-1).
IdentityReport verify_product_identity(FieldPtr field, std::size_t s, unsigned d);

/// The four-term expansion of N^{(d+1)}(chi_1...chi_{2q-1}), d >= 1.
IdentityReport verify_obstruction_identity(FieldPtr field, unsigned d);

/// All alpha in {0,1}^s with |alpha| = l, as bit masks in increasing order.
std::vector<std::vector<int>> binary_masks(std::size_t s, std::size_t l);

}  // namespace ffz
