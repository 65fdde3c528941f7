#pragma once

// Truncated Carlitz zeta values and Pellarin L-series, the rational right-hand
// side of the explicit formula for pi~^{-k} L(chi_1...chi_s, k) omega(t_1)...
// omega(t_s), and the checks of the analytic identities built from them.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffzeta/bcnum.hpp"
#include "ffzeta/infty.hpp"
#include "ffzeta/report.hpp"

namespace ffz {

/// Lower bound, in units of v(1/theta), for the valuation of every dropped
/// block of sum_{deg a >= D} chi(a)/a^n when the characters are truncated at
/// t-degree M (M = -1 without characters): n D + q^{D-M-1} - 1 once D > M,
/// and n D otherwise.
long block_tail_exponent(std::uint64_t q, long n, unsigned D, long M);
/// Smallest D whose block tail reaches N.
unsigned auto_degree(std::uint64_t q, long n, long N, long M);

/// t_1..t_s.
std::vector<std::string> t_vars(std::size_t s);

struct ZetaTruncation {
  long n = 0;
  unsigned D = 0;
  Laurent value;
  long tail_bound_exponent = 0;
};

/// sum over monic a with deg a < D of a^{-n}; value precision min(N, tail).
ZetaTruncation zeta_trunc(FieldPtr field, long n, unsigned D, long N);

struct LSeriesTruncation {
  std::size_t s = 0;
  long n = 0;
  unsigned D = 0;
  std::uint32_t cap = 0;
  /// Coefficients are grade-0 (Laurent) ramified elements.
  Tate value;
  long tail_bound_exponent = 0;
};

/// sum over monic a with deg a < D of chi_1(a)...chi_s(a) a^{-n}, truncated
/// at t-degree M in each variable.
LSeriesTruncation pellarin_trunc(FieldPtr field, std::size_t s, long n, unsigned D, long N, std::uint32_t M);

/// One term c * prod_i 1/(theta^{q^{pole_i}} - t_i); pole_i = -1 means the
/// factor for t_i is absent.
struct SimpleFraction {
  Fraction coeff;
  std::vector<int> pole;
};

struct ExplicitRHS {
  std::size_t s = 0;
  long k = 0;
  std::vector<SimpleFraction> first;
  std::vector<SimpleFraction> second;

  /// Terms merged by pole vector, zeros dropped (both sums together).
  std::map<std::vector<int>, Fraction> canonical() const;
  /// Expansion with 1/(theta^Q - t) = sum_m t^m theta^{-Q(m+1)} under cap M.
  Tate to_tate(FieldPtr field, long N, std::uint32_t M) const;
  nlohmann::json to_json() const;
};

/// Requires 1 <= s <= 2(q-1), k >= 1 and k = s mod (q-1).
ExplicitRHS explicit_rhs(FieldPtr field, std::size_t s, long k);

/// D = 0 selects auto_degree.
IdentityReport verify_explicit(FieldPtr field, std::size_t s, long k, unsigned D, long N, std::uint32_t M);
/// Requires |z| < 1.
IdentityReport verify_main_theorem(FieldPtr field, std::size_t s, const Fraction& z, unsigned D, long N,
                                   std::uint32_t M);
IdentityReport verify_pellarin_formula(FieldPtr field, unsigned D, long N, std::uint32_t M);
IdentityReport verify_carlitz_genfun(FieldPtr field, const Fraction& z, unsigned D, long N);

enum class LimitKind { BOverEll1, BOverEll2, BOverEll3, EdToExp, WagnerAgf };
LimitKind parse_limit_kind(const std::string& name);
std::string limit_kind_name(LimitKind kind);
std::vector<LimitKind> all_limit_kinds();

/// Distances to the limit at consecutive stages, run until one is below
/// q^{-N/2} (at most eight). Passes when the last three strictly decrease and
/// the last is below q^{-N/2}.
IdentityReport verify_limits(FieldPtr field, LimitKind kind, long N, std::uint32_t M);

/// sum_{a monic, deg a < D} a(lambda)^{q^d-1}/a^n == (1 - v^{-n}) zeta(n).
IdentityReport character_sum_check(FieldPtr field, const Poly& v, long n, unsigned D, long N);
/// (-1)^d v == prod_{i=1}^d omega(lambda^{q^i})^{q-1}.
IdentityReport omega_root_product(FieldPtr field, const Poly& v, long N);
/// tau(omega) = (t - theta) omega, C_theta(omega) = t omega, f_C(pi~; t) = omega,
/// and (theta - t) omega at t = theta equals pi~.
IdentityReport verify_omega_eigen(FieldPtr field, long N, std::uint32_t M);
/// e_C(theta x) = theta e_C(x) + e_C(x)^q at x = pi~ z.
IdentityReport verify_exp_functional_equation(FieldPtr field, const Fraction& z, long N);

}  // namespace ffz
