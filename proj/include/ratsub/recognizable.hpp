#pragma once

#include <set>
#include <utility>
#include <vector>

#include "ratsub/group.hpp"
#include "ratsub/nfa.hpp"
#include "ratsub/stallings.hpp"

namespace ratsub {

// A transitive right action of the group on finitely many cosets, given by
// one permutation per positive letter; inverse letters act by the inverse
// permutation, so the action respects the involution by construction. For
// backends with relations (finite, virtually cyclic) the constructor checks
// that the action factors through the group.
class CosetAction {
public:
  CosetAction(Group backend, int coset_count, int base,
              std::vector<std::vector<int>> positive_action);

  const Group& group() const { return group_; }
  int coset_count() const { return count_; }
  int base() const { return base_; }

  int act(int coset, Letter a) const;
  int act_word(int coset, const Word& w) const;

  bool operator==(const CosetAction& o) const;

private:
  Group group_;
  int count_ = 1;
  int base_ = 0;
  std::vector<std::vector<int>> pos_;  // [positive letter][coset]
  std::vector<std::vector<int>> neg_;
};

// A recognizable (Reg-forall) subset in finite-quotient form: a coset action
// plus the set of accepted cosets.
struct RecognizableSubset {
  CosetAction action;
  std::set<int> accepted;

  // Is the element represented by this word in the subset?
  bool contains_word(const Word& w) const {
    return accepted.contains(action.act_word(action.base(), w));
  }
};

// The subset {(z,i) : (z mod m, i) ∈ accepted} of a virtually cyclic group,
// realized on the m·n cosets of the normal subgroup mZ = <t^m>.
RecognizableSubset from_modulus(const Group& vc_backend, long long m,
                                const std::set<std::pair<long long, int>>& accepted);

// Action on the vertices of a complete Stallings graph (= right cosets).
CosetAction coset_action(const StallingsGraph& g);
// The subgroup itself as a recognizable subset of its free group.
RecognizableSubset subgroup_subset(const StallingsGraph& g);

RecognizableSubset whole_group_subset(const Group& g);
RecognizableSubset empty_recognizable(const Group& g);

RecognizableSubset rec_union(const RecognizableSubset& r, const RecognizableSubset& s);
RecognizableSubset rec_intersect(const RecognizableSubset& r, const RecognizableSubset& s);
RecognizableSubset rec_complement(const RecognizableSubset& r);

// DFA over the backend alphabet accepting exactly the full preimage of the
// subset: states = cosets, start = base, accepts = accepted.
Dfa preimage_dfa(const RecognizableSubset& r);
// All words evaluating into one fixed coset.
Dfa coset_language(const RecognizableSubset& r, int target_coset);

}  // namespace ratsub
