#pragma once

// Bernoulli-Carlitz numbers BC(n), defined by z/e_C(z) = sum BC(n) z^n / Pi(n),
// with the recurrences, tuple norms and divisibility bounds built on them.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ffzeta/carlitz.hpp"
#include "ffzeta/fraction.hpp"
#include "ffzeta/report.hpp"

namespace ffz {

/// Denominator of BC(n): 1, or P_m (the product of all monic irreducibles of
/// degree m).
struct DenominatorClass {
  bool unit = true;
  unsigned m = 0;
  std::string to_string() const;
};

struct BCRecord {
  std::uint64_t n = 0;
  Fraction value;
  DenominatorClass denominator;
};

/// Memoized BC table over one coefficient field, filled bottom-up by
/// Carlitz's recursion. Not thread-safe per instance; bc_table() hands out
/// one instance per field guarded by a lock.
class BCTable {
 public:
  explicit BCTable(FieldPtr field);
  FieldPtr field() const { return field_; }
  std::uint64_t q() const { return q_; }

  /// BC(n); zero unless (q-1) | n.
  const Fraction& value(std::uint64_t n);
  BCRecord record(std::uint64_t n);
  /// Largest n computed so far.
  std::uint64_t computed_to() const { return (vals_.size() - 1) * (q_ - 1); }

 private:
  FieldPtr field_;
  std::uint64_t q_;
  Fraction zero_;
  std::vector<Fraction> vals_;  // vals_[i] = BC(i(q-1))
};

BCTable& bc_table(FieldPtr field);
/// Lock held while a caller uses the shared table.
std::mutex& bc_table_mutex(FieldPtr field);

/// BC(n) from the shared table. Throws PreconditionError unless (q-1) | n.
BCRecord bc(FieldPtr field, std::uint64_t n);

/// BC(0..max_n) read off the inverse of the power series e_C(z)/z.
std::vector<Fraction> bc_series_oracle(FieldPtr field, std::uint64_t max_n);

/// Classifies the denominator of a BC value. Throws InvariantError when it is
/// neither 1 nor some P_m.
DenominatorClass von_staudt_check(const Fraction& value);

/// (1 - (theta - lambda)^n) BC(n) against the sum over beta in N^{q-1}.
IdentityReport verify_bc_recurrence_deg1(FieldPtr field, std::uint64_t n, Elem lambda);

/// (v^n - 1) BC(n) against the sum over M_2(n), over F_{q^2}(theta) with
/// lambda a root of the monic irreducible quadratic v.
IdentityReport verify_bc_recurrence_deg2(FieldPtr field, std::uint64_t n, const Poly& v);

// ---- tuples ---------------------------------------------------------------

struct TupleRecord {
  std::vector<std::uint32_t> beta;
  std::uint64_t norm1 = 0;
  /// Only for ordered tuples of length 2(q-1).
  std::optional<std::uint64_t> norm2;
  bool ordered = false;
  /// Number of even entries.
  std::size_t e = 0;
  /// False when the length hypothesis of the maximal-tuple results fails.
  bool guarantee_applicable = true;
};

std::uint64_t norm1(const std::vector<std::uint32_t>& beta, std::uint64_t q);
/// Even entries first, non-increasing, then odd entries non-decreasing.
bool is_ordered(const std::vector<std::uint32_t>& beta);
std::vector<std::uint32_t> order_tuple(std::vector<std::uint32_t> beta);
/// Throws PreconditionError unless beta is ordered of length 2(q-1).
std::uint64_t norm2(const std::vector<std::uint32_t>& beta, std::uint64_t q);
TupleRecord norms(const std::vector<std::uint32_t>& beta, std::uint64_t q);

/// An ordered |.|_1-maximal tuple in M_s(n) (length s(q-1)).
TupleRecord max_tuple_norm1(std::uint64_t n, std::size_t s, std::uint64_t q);
/// The ordered |.|_2-maximal tuple in M_2(n); requires l(n) >= 3(q-1).
TupleRecord max_tuple_norm2(std::uint64_t n, std::uint64_t q);

/// Brute-force maxima over M_s(n), used as test oracles.
std::uint64_t max_norm1_exhaustive(std::uint64_t n, std::size_t s, std::uint64_t q);
std::uint64_t max_norm2_exhaustive(std::uint64_t n, std::uint64_t q);

// ---- divisibility ---------------------------------------------------------

struct DivisibilityBound {
  unsigned degree = 1;
  long exponent = 0;
  TupleRecord mu;
  /// n minus the norm used for the branch test.
  std::uint64_t reduced_index = 0;
  /// True when the denominator of BC(reduced_index) is P_degree.
  bool denominator_branch = false;
  Poly basis;
};

/// Exponent of theta^q - theta dividing the numerator of BC(n); requires
/// l(n) >= 2(q-1).
DivisibilityBound divisibility_bound_deg1(FieldPtr field, std::uint64_t n);
/// Exponent of P_2 dividing the numerator of BC(n); requires l(n) >= 3(q-1).
DivisibilityBound divisibility_bound_deg2(FieldPtr field, std::uint64_t n);

struct ValuationReport {
  unsigned degree = 1;
  std::vector<Poly> irreducibles;
  std::vector<std::uint64_t> valuations;
  /// Exact power of P_d; absent when BC(n) = 0.
  std::optional<std::uint64_t> minimum;
};

ValuationReport measure_valuation(FieldPtr field, std::uint64_t n, unsigned d);

struct GammaTerm {
  std::uint64_t gamma = 0;
  std::uint64_t bound_deg1 = 0;
  std::uint64_t bound_deg2 = 0;
};

/// gamma_j = (q-1) q^j (q^{l+2} + q^{l+1} + q^l) + n with the degree 1 and 2
/// exponents that go with it. Requires q^l > n.
GammaTerm gamma_sequence(std::uint64_t q, std::uint64_t n, unsigned l, unsigned j);

struct ScanRow {
  std::uint64_t n = 0;
  TupleRecord mu;
  long conjectured = 0;
  std::optional<std::uint64_t> measured;
  bool pass = false;
};

/// P_d^{n-2-|mu|_1} against the numerator of BC(n), for every n in [from, to]
/// with (q-1) | n and l(n) >= (d+1)(q-1).
std::vector<ScanRow> conjecture_scan(FieldPtr field, unsigned d, std::uint64_t from, std::uint64_t to);
std::string scan_csv(const std::vector<ScanRow>& rows, unsigned d);

/// One row of the BC table export.
struct TableRow {
  BCRecord record;
  std::optional<std::uint64_t> val_deg1, val_deg2;
  std::optional<long> bound_deg1, bound_deg2;
  std::optional<bool> pass_deg1, pass_deg2;
};
std::vector<TableRow> bc_table_rows(FieldPtr field, std::uint64_t max_n);
std::string table_csv(const std::vector<TableRow>& rows);
nlohmann::json table_json(const std::vector<TableRow>& rows);

std::string tuple_string(const std::vector<std::uint32_t>& beta);
nlohmann::json to_json(const TupleRecord& t);

}  // namespace ffz
