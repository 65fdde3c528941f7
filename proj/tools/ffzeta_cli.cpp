// ffzeta: command-line front end for the library.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffzeta/bcnum.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/interp.hpp"
#include "ffzeta/lseries.hpp"
#include "ffzeta/serialize.hpp"

using namespace ffz;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint32_t p = 3;
  std::uint32_t m = 1;
  std::string out;
  std::string format;

  // bc-table
  std::uint64_t max_n = 70;

  // verify
  std::string identity;
  std::size_t s = 1;
  long k = 1;
  unsigned d = 1;
  long n = 0;
  std::string z = "1/x";
  std::string v;
  std::string kind;
  std::uint32_t lambda = 0;
  long N = 64;
  std::uint32_t M = 8;
  unsigned D = 0;

  // divisibility, scan, tuples
  unsigned degree = 2;
  std::uint64_t from = 1;
  std::uint64_t to = 100;
};

FieldPtr field_of(const RunConfig& c) {
  if (!is_prime(c.p)) throw UsageError("--p must be prime");
  if (c.m < 1) throw UsageError("--m must be at least 1");
  return make_field(c.p, c.m);
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void require_multiple(std::uint64_t n, std::uint64_t q) {
  if (n % (q - 1) != 0) throw UsageError("n must be a multiple of q-1 = " + std::to_string(q - 1));
}

void require_s(std::size_t s, std::uint64_t q) {
  if (s < 1 || s > 2 * (q - 1)) throw UsageError("--s must lie in [1, 2(q-1)]");
}

Poly monic_irreducible(FieldPtr F, const std::string& text, std::optional<unsigned> degree) {
  if (text.empty()) {
    if (!degree) throw UsageError("--v is required");
    return enumerate_irreducibles(F, *degree).front();
  }
  Poly v = parse_poly(F, text);
  if (v.is_zero() || v.coeff(static_cast<std::size_t>(v.degree())) != 1 || !is_irreducible(v)) {
    throw UsageError("--v must be a monic irreducible polynomial");
  }
  if (degree && v.degree() != static_cast<long>(*degree)) throw UsageError("--v has the wrong degree");
  return v;
}

Fraction small_point(FieldPtr F, const std::string& text) {
  const Fraction z = parse_fraction(F, text);
  if (z.is_zero() || z.degree() >= 0) throw UsageError("--z must satisfy 0 < |z| < 1, e.g. 1/x");
  return z;
}

// ---- commands -----------------------------------------------------------

int cmd_bc_table(const RunConfig& c) {
  FieldPtr F = field_of(c);
  const auto rows = bc_table_rows(F, c.max_n);
  emit(c, c.format == "json" ? table_json(rows).dump(2) : table_csv(rows));
  return kPass;
}

std::vector<IdentityReport> run_identity(const RunConfig& c) {
  FieldPtr F = field_of(c);
  const std::uint64_t q = F->order();
  const std::string& id = c.identity;
  if (c.N < 1) throw UsageError("--N must be positive");
  if (id == "interp") return {verify_interp_identity(F, c.d)};
  if (id == "interp-product") {
    require_s(c.s, q);
    return {verify_product_identity(F, c.s, c.d)};
  }
  if (id == "obstruction") {
    if (c.d < 1) throw UsageError("--d must be at least 1");
    return {verify_obstruction_identity(F, c.d)};
  }
  if (id == "ed-recursion") return {verify_ed_recursion(F, c.d)};
  if (id == "main-theorem") {
    require_s(c.s, q);
    return {verify_main_theorem(F, c.s, small_point(F, c.z), c.D, c.N, c.M)};
  }
  if (id == "pellarin-formula") return {verify_pellarin_formula(F, c.D, c.N, c.M)};
  if (id == "carlitz-genfun") return {verify_carlitz_genfun(F, small_point(F, c.z), c.D, c.N)};
  if (id == "explicit-L") {
    require_s(c.s, q);
    if (c.k < 1 || (static_cast<long>(c.s) - c.k) % static_cast<long>(q - 1) != 0) {
      throw UsageError("--k must be positive and congruent to s modulo q-1");
    }
    return {verify_explicit(F, c.s, c.k, c.D, c.N, c.M)};
  }
  if (id == "limits") {
    std::vector<IdentityReport> out;
    if (c.kind.empty() || c.kind == "all") {
      for (auto k : all_limit_kinds()) out.push_back(verify_limits(F, k, c.N, c.M));
    } else {
      LimitKind k;
      try {
        k = parse_limit_kind(c.kind);
      } catch (const PreconditionError&) {
        throw UsageError("unknown --kind " + c.kind);
      }
      out.push_back(verify_limits(F, k, c.N, c.M));
    }
    return out;
  }
  if (id == "omega-eigen") return {verify_omega_eigen(F, c.N, c.M)};
  if (id == "exp-functional-equation") return {verify_exp_functional_equation(F, small_point(F, c.z), c.N)};
  if (id == "char-sum") {
    const Poly v = monic_irreducible(F, c.v, std::nullopt);
    if (v.degree() > 2) throw UsageError("char-sum needs deg v in {1, 2}");
    const long n = c.n > 0 ? c.n : static_cast<long>(q - 1);
    return {character_sum_check(F, v, n, c.D, c.N)};
  }
  if (id == "omega-root-product") {
    const Poly v = monic_irreducible(F, c.v, std::nullopt);
    if (v.degree() > 2) throw UsageError("omega-root-product needs deg v in {1, 2}");
    return {omega_root_product(F, v, c.N)};
  }
  if (id == "bc-recur-1") {
    if (c.n < 0) throw UsageError("--n must be non-negative");
    require_multiple(static_cast<std::uint64_t>(c.n), q);
    if (c.lambda >= q) throw UsageError("--lambda must be a field element in [0, q)");
    return {verify_bc_recurrence_deg1(F, static_cast<std::uint64_t>(c.n), static_cast<Elem>(c.lambda))};
  }
  if (id == "bc-recur-2") {
    if (c.n < 0) throw UsageError("--n must be non-negative");
    require_multiple(static_cast<std::uint64_t>(c.n), q);
    return {verify_bc_recurrence_deg2(F, static_cast<std::uint64_t>(c.n), monic_irreducible(F, c.v, 2))};
  }
  throw UsageError("unknown identity " + id);
}

int cmd_verify(const RunConfig& c) {
  const auto reports = run_identity(c);
  bool pass = true;
  json out = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    out.push_back(to_json(r));
  }
  emit(c, (reports.size() == 1 ? out[0] : out).dump(2));
  return pass ? kPass : kFail;
}

int cmd_divisibility(const RunConfig& c) {
  FieldPtr F = field_of(c);
  const std::uint64_t q = F->order();
  if (c.n < 0) throw UsageError("--n must be non-negative");
  const auto n = static_cast<std::uint64_t>(c.n);
  require_multiple(n, q);
  if (c.degree < 1) throw UsageError("--degree must be positive");
  json out = {{"q", q}, {"n", n}, {"degree", c.degree}, {"warnings", json::array()}};
  std::optional<DivisibilityBound> bound;
  if (c.degree == 1 || c.degree == 2) {
    const std::uint64_t need = (c.degree + 1) * (q - 1);
    if (base_q(n, q).length() < need) {
      out["warnings"].push_back({{"kind", "hypothesis"},
                                 {"message", "l(n) = " + std::to_string(base_q(n, q).length()) + " < " +
                                                 std::to_string(need) + " = (degree+1)(q-1)"}});
    } else {
      bound = c.degree == 1 ? divisibility_bound_deg1(F, n) : divisibility_bound_deg2(F, n);
    }
  } else {
    out["warnings"].push_back({{"kind", "no-bound"}, {"message", "bounds exist for degree 1 and 2 only"}});
  }
  const ValuationReport val = measure_valuation(F, n, c.degree);
  out["measured"] = val.minimum ? json(*val.minimum) : json(nullptr);
  json per = json::array();
  for (std::size_t i = 0; i < val.irreducibles.size(); ++i) {
    per.push_back({{"v", poly_to_json(val.irreducibles[i])}, {"valuation", val.valuations[i]}});
  }
  out["per_irreducible"] = per;
  int code = kPass;
  if (bound) {
    out["bound"] = bound->exponent;
    out["branch"] = bound->denominator_branch ? "denominator" : "unit";
    out["reduced_index"] = bound->reduced_index;
    out["tuples"] = to_json(bound->mu);
    const bool holds = !val.minimum || static_cast<long>(*val.minimum) >= bound->exponent;
    out["pass"] = holds;
    if (!holds) code = kFail;
  } else {
    out["bound"] = nullptr;
  }
  emit(c, out.dump(2));
  return code;
}

int cmd_scan(const RunConfig& c) {
  FieldPtr F = field_of(c);
  if (c.degree < 1) throw UsageError("--degree must be positive");
  if (c.from > c.to) throw UsageError("--from exceeds --to");
  const auto rows = conjecture_scan(F, c.degree, c.from, c.to);
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.pass;
  if (c.format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"n", r.n},
                     {"mu", to_json(r.mu)},
                     {"conjectured", r.conjectured},
                     {"measured", r.measured ? json(*r.measured) : json(nullptr)},
                     {"pass", r.pass}});
    }
    emit(c, out.dump(2));
  } else {
    emit(c, scan_csv(rows, c.degree));
  }
  return pass ? kPass : kFail;
}

int cmd_tuples(const RunConfig& c) {
  const std::uint64_t q = static_cast<std::uint64_t>(field_of(c)->order());
  if (c.n < 0) throw UsageError("--n must be non-negative");
  const auto n = static_cast<std::uint64_t>(c.n);
  require_s(c.s, q);
  const BaseQ digits = base_q(n, q);
  json out = {{"q", q}, {"n", n}, {"s", c.s}, {"digits", digits.digits}, {"length", digits.length()}};
  try {
    out["norm1_maximal"] = to_json(max_tuple_norm1(n, c.s, q));
  } catch (const PreconditionError& e) {
    out["norm1_maximal"] = nullptr;
    out["norm1_note"] = e.what();
  }
  if (c.s == 2) {
    if (digits.length() >= 3 * (q - 1)) {
      out["norm2_maximal"] = to_json(max_tuple_norm2(n, q));
    } else {
      out["norm2_maximal"] = nullptr;
      out["norm2_note"] = "l(n) < 3(q-1): the maximal-tuple guarantees do not apply";
    }
  }
  emit(c, out.dump(2));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernoulli-Carlitz numbers, Pellarin L-series and identity checks over F_q[x]"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", c.p, "characteristic")->capture_default_str();
    sub->add_option("--m", c.m, "q = p^m")->capture_default_str();
    sub->add_option("--out", c.out, "write to this file instead of stdout");
  };
  auto analytic = [&](CLI::App* sub) {
    sub->add_option("--N", c.N, "target precision exponent")->capture_default_str();
    sub->add_option("--M", c.M, "t-degree cap per variable")->capture_default_str();
    sub->add_option("--D", c.D, "degree bound of the truncated sums (0 = auto)")->capture_default_str();
  };

  auto* table = app.add_subcommand("bc-table", "BC(n) with denominators, valuations and bounds");
  common(table);
  table->add_option("--max-n", c.max_n)->capture_default_str();
  table->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  auto* verify = app.add_subcommand("verify", "check one identity and print its report");
  common(verify);
  analytic(verify);
  verify->add_option("--identity", c.identity)->required();
  verify->add_option("--s", c.s)->capture_default_str();
  verify->add_option("--k", c.k)->capture_default_str();
  verify->add_option("--d", c.d)->capture_default_str();
  verify->add_option("--n", c.n);
  verify->add_option("--z", c.z)->capture_default_str();
  verify->add_option("--v", c.v, "monic irreducible, e.g. x^2+1");
  verify->add_option("--kind", c.kind, "limit: b-over-ell-1|2|3, ed-to-exp, wagner-agf (default all)");
  verify->add_option("--lambda", c.lambda)->capture_default_str();

  auto* div = app.add_subcommand("divisibility", "bound and exact power of P_degree in BC(n)");
  common(div);
  div->add_option("--n", c.n)->required();
  div->add_option("--degree", c.degree)->capture_default_str();

  auto* scan = app.add_subcommand("scan", "compare P_d^{n-2-|mu|_1} with the numerators of BC(n)");
  common(scan);
  scan->add_option("--degree", c.degree)->capture_default_str();
  scan->add_option("--from", c.from)->capture_default_str();
  scan->add_option("--to", c.to)->capture_default_str();
  scan->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  auto* tuples = app.add_subcommand("tuples", "maximal tuples in M_s(n)");
  common(tuples);
  tuples->add_option("--n", c.n)->required();
  tuples->add_option("--s", c.s)->default_val(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*table) return cmd_bc_table(c);
    if (*verify) return cmd_verify(c);
    if (*div) return cmd_divisibility(c);
    if (*scan) return cmd_scan(c);
    if (*tuples) return cmd_tuples(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
