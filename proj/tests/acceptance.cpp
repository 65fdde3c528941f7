// Acceptance run: one PASS/FAIL line per criterion.
//
// --known-conflict N lets the exit status ignore a criterion whose FAIL is
// documented in the README as a conflict between the stated example and the
// formula it illustrates. The line itself still reads FAIL.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffzeta/bcnum.hpp"
#include "ffzeta/carlitz.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/interp.hpp"
#include "ffzeta/lseries.hpp"
#include "ffzeta/serialize.hpp"
#include "property_laws.hpp"

using namespace ffz;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
  /// Records an identity report; analytic ones must also certify min_exp.
  void report(const IdentityReport& r, const std::string& label, std::optional<long> min_exp = std::nullopt) {
    bool ok = r.pass;
    if (min_exp) ok = ok && r.certified_precision_exponent && *r.certified_precision_exponent >= *min_exp;
    if (!ok) {
      std::string why = r.witness.value_or("");
      if (r.certified_precision_exponent) why += " certified " + std::to_string(*r.certified_precision_exponent);
      require(false, label + ": " + why);
    }
  }
};

std::string str(const std::vector<std::uint32_t>& v) { return tuple_string(v); }

Outcome criterion_1() {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const auto val = measure_valuation(F, 304, 2);
  const auto bound = divisibility_bound_deg2(F, 304);
  o.require(val.minimum && *val.minimum == 14, "exact P_2 power of BC(304) is 14");
  o.require(bound.exponent == 14, "bound_deg2(304) is 14");
  o.note("measured " + (val.minimum ? std::to_string(*val.minimum) : std::string("none")) + ", bound " +
         std::to_string(bound.exponent));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const auto val = measure_valuation(F, 646, 2);
  const auto bound = divisibility_bound_deg2(F, 646);
  o.require(val.minimum && *val.minimum == 74, "exact P_2 power of BC(646) is 74");
  o.require(bound.exponent == 69, "bound_deg2(646) is 69");
  o.note("measured " + (val.minimum ? std::to_string(*val.minimum) : std::string("none")) + ", bound " +
         std::to_string(bound.exponent));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const BCRecord b16 = bc(F, 16);
  const BCRecord b70 = bc(F, 70);
  o.require(b16.value.den() == product_of_irreducibles(F, 2), "den BC(16) = P_2");
  o.require(!b16.denominator.unit && b16.denominator.m == 2, "BC(16) classified as P_2");
  o.require(b70.value.is_polynomial() && b70.denominator.unit, "BC(70) in A");
  o.note("den BC(16) = " + b16.value.den().to_string() + ", BC(70) " +
         (b70.value.is_polynomial() ? "in A" : "not in A"));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const auto b304 = divisibility_bound_deg2(F, 304);
  const auto b646 = divisibility_bound_deg2(F, 646);
  const auto beta_full = max_tuple_norm1(304, 2, 3);
  o.require(beta_full.beta == std::vector<std::uint32_t>{1, 3, 3, 5}, "beta(304) = (1,3,3,5)");
  o.require(b304.mu.beta == std::vector<std::uint32_t>{2, 2, 3, 5}, "mu(304) = (2,2,3,5)");
  o.require(b646.mu.beta == std::vector<std::uint32_t>{4, 2, 5, 5}, "mu(646) = (4,2,5,5)");
  o.require(b304.reduced_index == 16, "304 - |mu|_2 = 16");
  o.require(b646.reduced_index == 70, "646 - |mu|_2 = 70");
  o.note("beta " + str(beta_full.beta) + ", mu " + str(b304.mu.beta) + " / " + str(b646.mu.beta) +
         ", reduced " + std::to_string(b304.reduced_index) + " / " + std::to_string(b646.reduced_index));
  return o;
}

Outcome criterion_5() {
  Outcome o;
  int count = 0;
  auto run = [&](const IdentityReport& r, const std::string& label) {
    o.report(r, label);
    ++count;
  };
  for (std::uint32_t q : {3u, 5u}) {
    FieldPtr F = make_field(q, 1);
    for (unsigned d = 1; d <= 3; ++d) run(verify_interp_identity(F, d), "interp q=" + std::to_string(q));
    for (unsigned d = 0; d <= 2; ++d) run(verify_ed_recursion(F, d), "ed-recursion q=" + std::to_string(q));
  }
  FieldPtr F3 = make_field(3, 1), F5 = make_field(5, 1);
  for (std::size_t s = 1; s <= 4; ++s) {
    for (unsigned d : {1u, 2u}) run(verify_product_identity(F3, s, d), "product q=3 s=" + std::to_string(s));
  }
  for (std::size_t s = 1; s <= 8; ++s) run(verify_product_identity(F5, s, 1), "product q=5 s=" + std::to_string(s));
  for (unsigned d : {1u, 2u}) run(verify_obstruction_identity(F3, d), "obstruction d=" + std::to_string(d));

  std::mt19937_64 rng(7);
  int multinomial_bad = 0;
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
    const Poly m = bracket_multinomial(F3, n, parts);
    Poly den = Poly::one(F3);
    for (auto x : parts) den *= carlitz_factorial(F3, x);
    if (!(m * den == carlitz_factorial(F3, n)) || !(bracket_multinomial_fast(F3, n, parts) == m)) ++multinomial_bad;
  }
  o.require(multinomial_bad == 0, "bracket multinomials in A (" + std::to_string(multinomial_bad) + " bad)");
  count += 200;

  for (FieldPtr F : {F3, F5}) {
    const auto oracle = bc_series_oracle(F, 30);
    for (std::uint64_t n = 0; n <= 30; ++n) {
      const Fraction v = n % (F->order() - 1) == 0 ? bc(F, n).value : Fraction::zero(F);
      o.require(oracle[n] == v, "BC(" + std::to_string(n) + ") against series, q=" + std::to_string(F->order()));
      ++count;
    }
  }
  for (std::uint64_t n : {2u, 16u, 304u}) {
    for (Elem lambda = 0; lambda < 3; ++lambda) run(verify_bc_recurrence_deg1(F3, n, lambda), "bc-recur-1 n=" + std::to_string(n));
  }
  for (std::uint64_t n : {16u, 304u}) {
    for (const Poly& v : enumerate_irreducibles(F3, 2)) {
      run(verify_bc_recurrence_deg2(F3, n, v), "bc-recur-2 n=" + std::to_string(n) + " v=" + v.to_string());
    }
  }
  o.note(std::to_string(count) + " exact checks");
  return o;
}

Outcome criterion_6() {
  constexpr long N = 32, kMin = 16;
  constexpr std::uint32_t M = 4;
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const Fraction z1 = parse_fraction(F, "1/x"), z2 = parse_fraction(F, "1/x^2");
  long worst = std::numeric_limits<long>::max();
  auto run = [&](const IdentityReport& r, const std::string& label) {
    o.report(r, label, kMin);
    if (r.certified_precision_exponent) worst = std::min(worst, *r.certified_precision_exponent);
  };
  run(verify_pellarin_formula(F, 0, N, M), "pellarin");
  run(verify_carlitz_genfun(F, z1, 0, N), "genfun");
  for (std::size_t s = 1; s <= 4; ++s) {
    for (const Fraction& z : {z1, z2}) run(verify_main_theorem(F, s, z, 0, N, M), "main s=" + std::to_string(s));
  }
  for (auto [s, k] : std::vector<std::pair<std::size_t, long>>{{2, 2}, {3, 1}, {4, 2}, {1, 1}}) {
    run(verify_explicit(F, s, k, 0, N, M), "explicit (" + std::to_string(s) + "," + std::to_string(k) + ")");
  }
  run(verify_exp_functional_equation(F, z1, N), "exp functional equation");
  run(verify_omega_eigen(F, N, M), "omega eigen");
  for (unsigned d : {1u, 2u}) {
    for (const Poly& v : enumerate_irreducibles(F, d)) {
      run(character_sum_check(F, v, 4, 0, N), "char-sum v=" + v.to_string());
      run(omega_root_product(F, v, N), "omega-root-product v=" + v.to_string());
    }
  }
  o.note("min certified exponent " + std::to_string(worst) + " (need >= 16)");
  return o;
}

Outcome criterion_7() {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  std::ostringstream ss;
  for (LimitKind k : all_limit_kinds()) {
    const auto r = verify_limits(F, k, 24, 4);
    o.report(r, limit_kind_name(k), 13);
    ss << limit_kind_name(k) << " [";
    bool first = true;
    for (const auto& row : r.details["stages"]) {
      ss << (first ? "" : " ") << row["distance_exponent"].get<long>();
      first = false;
    }
    ss << "] ";
  }
  o.note("distance exponents " + ss.str() + "(final must exceed 12)");
  return o;
}

Outcome criterion_8() {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const std::uint32_t q = 3;
  using Canon = std::map<std::vector<int>, Fraction>;

  const Canon c1 = explicit_rhs(F, q, 1).canonical();
  o.require(c1 == Canon{{std::vector<int>(q, -1), Fraction::constant(F, F->neg(1))}}, "(q,1) gives -1");

  // The stated value for (q+1, 2): sum_i 1/(theta - t_i).
  Canon stated, negated;
  for (std::size_t i = 0; i <= q; ++i) {
    std::vector<int> pole(q + 1, -1);
    pole[i] = 0;
    stated[pole] = Fraction::one(F);
    negated[pole] = Fraction::constant(F, F->neg(1));
  }
  const ExplicitRHS r2 = explicit_rhs(F, q + 1, 2);
  o.require(r2.canonical() == stated, "(q+1,2) gives +sum 1/(theta - t_i)");
  if (r2.canonical() == negated) o.note("(q+1,2) evaluates to -sum 1/(theta - t_i)");
  const auto numeric = verify_explicit(F, q + 1, 2, 0, 32, 4);
  o.note(std::string("series comparison of the -sum form ") + (numeric.pass ? "passes" : "fails") + " at exponent " +
         std::to_string(numeric.certified_precision_exponent.value_or(0)));
  return o;
}

Outcome criterion_9(const std::string& csv_path) {
  Outcome o;
  FieldPtr F = make_field(3, 1);
  const auto rows2 = conjecture_scan(F, 2, 0, 100);
  std::size_t bad2 = 0;
  for (const auto& r : rows2) bad2 += r.pass ? 0 : 1;
  o.require(!rows2.empty() && bad2 == 0, "d=2 scan has no failures");
  const auto rows3 = conjecture_scan(F, 3, 0, 200);
  std::size_t bad3 = 0;
  for (const auto& r : rows3) bad3 += r.pass ? 0 : 1;
  o.require(!rows3.empty() && bad3 == 0, "d=3 scan has no measured < conjectured");
  std::ofstream out(csv_path);
  out << scan_csv(rows3, 3);
  o.require(static_cast<bool>(out), "write " + csv_path);
  o.note("d=2: " + std::to_string(rows2.size()) + " rows, " + std::to_string(bad2) + " failures; d=3: " +
         std::to_string(rows3.size()) + " rows, " + std::to_string(bad3) + " failures, CSV " + csv_path);
  return o;
}

Outcome criterion_10() {
  Outcome o;
  for (const auto& r : laws::all_laws()) {
    o.require(r.cases == laws::kCases && r.failures == 0, r.name + " " + r.first_failure);
    o.note(r.name + " " + std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  std::vector<int> only;
  std::string csv = "conjecture_scan_d3.csv";
  app.add_option("--known-conflict", known, "Criterion whose documented FAIL does not affect the exit status");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--csv", csv, "Output path for the d=3 scan CSV");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, [&] { return criterion_9(csv); }, criterion_10};
  const std::set<int> excused(known.begin(), known.end());
  const std::set<int> selected(only.begin(), only.end());

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    Stopwatch sw;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("criterion %2d %s: %s (%.0f ms)%s\n", id, o.pass ? "PASS" : "FAIL", detail.c_str(), sw.millis(),
                !o.pass && excused.count(id) ? " [known conflict, see README]" : "");
    std::fflush(stdout);
    if (!o.pass && !excused.count(id)) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
