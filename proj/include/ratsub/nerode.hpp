#pragma once

#include <functional>
#include <vector>

#include "ratsub/alphabet.hpp"

namespace ratsub {

using MembershipOracle = std::function<bool(const Word&)>;

// On success: k pairwise-inequivalent words plus, for every pair i != j, a
// suffix s with oracle(w_i s) != oracle(w_j s). The matrix is re-verified
// against the oracle before returning, so a successful result proves that
// any DFA for the oracle's language needs at least k states.
struct NerodeResult {
  bool success = false;
  std::vector<Word> witnesses;
  // separator[i][j], valid for i != j (symmetric)
  std::vector<std::vector<Word>> separator;
};

// BFS in shortlex order over candidate words; candidates indistinguishable
// from a known witness (within the radius) are merged and not extended.
// Separating suffixes are searched deterministically: previously successful
// suffixes first, then the formal inverses of the two words, then a bounded
// shortlex enumeration. Failure means the radius was exhausted; it is not a
// disproof.
NerodeResult nerode_witnesses(const MembershipOracle& oracle, const Alphabet& a,
                              int k, int search_radius);

}  // namespace ratsub
