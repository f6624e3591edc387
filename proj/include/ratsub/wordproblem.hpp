#pragma once

#include <optional>
#include <vector>

#include "ratsub/group.hpp"
#include "ratsub/machines.hpp"
#include "ratsub/nfa.hpp"
#include "ratsub/rational.hpp"
#include "ratsub/recognizable.hpp"

namespace ratsub {

// Cayley-graph acceptor of the word problem of a finite group: states are
// the elements, the identity is both start and accept.
Dfa wp_dfa(const Group& finite_g);

// Accepts w iff w freely reduces to the empty word.
StackAcceptor wp_stack_acceptor(const Group& free_g);

// One-counter acceptor of the word problem of a virtually cyclic group.
// States track the transversal class and the sign of the t-exponent; the
// counter holds its absolute value. Letters whose exponent contribution
// exceeds 1 in absolute value run through epsilon micro-steps.
OneCounterAutomaton wp_oca(const Group& vc_g);

// Does the image of x equal the whole group minus the identity?
// Finite backends compare images exactly, Z compares semilinear sets with
// Z \ {0}, other virtually cyclic backends compare per transversal coset.
bool epi_check(const RationalSubset& x);

// Conjugacy class of an element of a virtually cyclic group. Classes of
// elements whose transversal class acts trivially on <t> are finite; the
// others are finite unions of cosets of 2Z, returned as a recognizable
// subset with modulus 2.
struct ConjugacyClassResult {
  std::optional<std::vector<VCElement>> finite_class;  // sorted, deduplicated
  std::optional<RecognizableSubset> coset_class;       // modulus-2 subset

  bool is_finite() const { return finite_class.has_value(); }
  bool contains(const Group& vc_g, const VCElement& e) const;
};

ConjugacyClassResult conjugacy_class(const Group& vc_g, const VCElement& g);

}  // namespace ratsub
