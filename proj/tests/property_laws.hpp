#pragma once

// Randomized algebraic laws shared by the unit tests and the acceptance run.

#include <cstdint>
#include <string>
#include <vector>

namespace ffz::laws {

inline constexpr int kCases = 1000;
inline constexpr std::uint64_t kSeed = 0x5eed2026;

struct LawResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  /// Description of the first failing case.
  std::string first_failure;
};

LawResult ultrametric(std::uint64_t seed, int cases);
LawResult gauss_norm_multiplicative(std::uint64_t seed, int cases);
LawResult precision_soundness(std::uint64_t seed, int cases);
LawResult interpolation_uniqueness(std::uint64_t seed, int cases);
LawResult ring_homomorphisms(std::uint64_t seed, int cases);
LawResult valuation_additivity(std::uint64_t seed, int cases);

std::vector<LawResult> all_laws(std::uint64_t seed = kSeed, int cases = kCases);

}  // namespace ffz::laws
