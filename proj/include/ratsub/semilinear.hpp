#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ratsub/alphabet.hpp"
#include "ratsub/nfa.hpp"

namespace ratsub {

// An ultimately periodic subset of Z: an explicit window on [-T, T] plus one
// periodic tail in each direction. p = 0 encodes an empty tail. Equality of
// two values is semantic (membership agreement), never structural.
class SemilinearZ {
public:
  SemilinearZ() = default;  // empty set

  static SemilinearZ empty();
  static SemilinearZ finite(const std::set<long long>& values);
  static SemilinearZ whole_line();
  static SemilinearZ nonzero();  // Z \ {0}
  static SemilinearZ from_parts(long long threshold, std::set<long long> window,
                                long long pos_period, std::set<long long> pos_residues,
                                long long neg_period, std::set<long long> neg_residues);
  // Samples fn on [-threshold-2p, threshold+2p] and freezes the result,
  // verifying that fn really is periodic with the stated periods beyond the
  // threshold. Periods must be >= 1; empty tails are discovered, not stated.
  static SemilinearZ from_function(const std::function<bool(long long)>& fn,
                                   long long threshold, long long pos_period,
                                   long long neg_period);

  bool contains(long long v) const;
  bool same_set(const SemilinearZ& o) const;
  bool is_empty_set() const;
  bool is_finite() const { return pos_period_ == 0 && neg_period_ == 0; }
  std::set<long long> finite_values() const;  // requires is_finite()

  SemilinearZ shifted(long long k) const;
  // {v : m·v ∈ this}; use with all_multiples_of to keep the quotient faithful.
  SemilinearZ divided(long long m) const;
  bool all_multiples_of(long long m) const;

  // Equivalent value with the smallest consistent periods and threshold.
  SemilinearZ minimized() const;

  long long threshold() const { return threshold_; }
  long long pos_period() const { return pos_period_; }
  long long neg_period() const { return neg_period_; }
  const std::set<long long>& window() const { return window_; }
  const std::set<long long>& pos_residues() const { return pos_residues_; }
  const std::set<long long>& neg_residues() const { return neg_residues_; }

  // window={...} pos=(T,p,residues) neg=(T,p,residues)
  std::string to_string() const;

  // An NFA over a rank-1 alphabet whose path weights (= image in Z) equal
  // this set; every member is witnessed by its canonical word t^v.
  Nfa to_nfa(const Alphabet& rank1) const;

private:
  long long threshold_ = 0;
  std::set<long long> window_;
  long long pos_period_ = 0;
  std::set<long long> pos_residues_;
  long long neg_period_ = 0;
  std::set<long long> neg_residues_;
};

struct WeightedEdge {
  int from = 0;
  long long weight = 0;
  int to = 0;
};

// Finite automaton with integer edge weights; its image is the set of total
// weights of accepting paths.
struct ZWeightedNfa {
  int state_count = 0;
  std::vector<WeightedEdge> edges;
  std::set<int> starts;
  std::set<int> accepts;
};

// Exact image of a weighted automaton as a semilinear set. The period is the
// lcm of the per-SCC cycle-weight gcds, the threshold grows quadratically in
// the automaton size, and the result is verified against bounded weight
// reachability before being returned (InconsistencyError otherwise).
SemilinearZ weighted_image(const ZWeightedNfa& a);

}  // namespace ratsub
