#pragma once

// Verification reports shared by the identity checkers.

#include <chrono>
#include <optional>
#include <string>

#include <json.hpp>

#include "ffzeta/mvpoly.hpp"

namespace ffz {

struct IdentityReport {
  std::string identity;
  nlohmann::json params = nlohmann::json::object();
  bool pass = false;
  /// Present exactly when pass is false.
  std::optional<std::string> witness;
  /// Certified agreement q^{-k}, in units of the absolute value of 1/theta.
  std::optional<long> certified_precision_exponent;
  std::optional<long> tail_bound_exponent;
  double millis = 0.0;
  nlohmann::json details = nlohmann::json::object();

  void fail(std::string why) {
    pass = false;
    if (!witness) witness = std::move(why);
  }
};

nlohmann::json to_json(const IdentityReport& r);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Fills pass/witness from an exact comparison of two polynomials.
template <CoefficientRing R>
void compare_exact(IdentityReport& rep, const mv::MultiPoly<R>& lhs, const mv::MultiPoly<R>& rhs) {
  auto diff = first_difference(lhs, rhs);
  if (!diff) {
    rep.pass = true;
    rep.witness.reset();
    return;
  }
  std::string mono;
  for (std::size_t i = 0; i < diff->size(); ++i) {
    if ((*diff)[i] == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += lhs.vars()[i];
    if ((*diff)[i] > 1) mono += "^" + std::to_string((*diff)[i]);
  }
  if (mono.empty()) mono = "1";
  rep.fail("monomial " + mono + ": lhs " + lhs.ring().format(lhs.coeff(*diff)) + ", rhs " +
           rhs.ring().format(rhs.coeff(*diff)));
}

}  // namespace ffz
