#pragma once

#include <set>

#include "ratsub/group.hpp"
#include "ratsub/nfa.hpp"
#include "ratsub/recognizable.hpp"
#include "ratsub/semilinear.hpp"

namespace ratsub {

// A rational (Reg-exists) subset of a group: the image of a regular language
// under the evaluation map. The empty subset is an NFA with no accept states,
// never a null value.
struct RationalSubset {
  Group group;
  Nfa nfa;  // over group.alphabet()

  void check() const;
};

// Adds epsilon edges p -> q to a fixpoint whenever p -a-> r, r =eps=> s,
// s -a^-1-> q. For every reduced word w, the saturated automaton accepts w
// iff some accepted word freely reduces to w. Free backends only.
Nfa benois_saturate(const RationalSubset& x);

// Produces a word of the original language that freely reduces to
// free_reduce(w), when the saturated automaton accepts the reduced form.
// Derived epsilon edges remember the cancelling excursion that created them,
// so every acceptance can be certified by an explicit preimage; the returned
// witness is re-verified against the original automaton.
std::optional<Word> benois_witness(const RationalSubset& x, const Word& w);

// Membership of eval(w) in the image. Free backends answer through Benois
// saturation, finite backends through the image fixpoint, virtually cyclic
// backends through the transversal decomposition.
bool rat_member(const RationalSubset& x, const Word& w);

// Exactly pi(L(x)) for a finite backend, by fixpoint over state-element pairs.
std::set<int> image_finite(const RationalSubset& x);

// Exact image of a rational subset of Z (virtually cyclic backend with a
// single class), self-verified before returning.
SemilinearZ z_image(const RationalSubset& x);

// Image of x intersected with the line <t> inside any virtually cyclic
// backend, i.e. { z : (z,1) ∈ pi(L(x)) }.
SemilinearZ t_line_image(const RationalSubset& x);

// pi(result) = pi(x) ∩ r, as the product of x's automaton with the preimage
// automaton of r.
RationalSubset intersect_recognizable(const RationalSubset& x,
                                      const RecognizableSubset& r);

enum class Side { Left, Right };

// Image translated by the element of g: pi(x)·eval(g) or eval(g)·pi(x).
RationalSubset translate(const RationalSubset& x, const Word& g, Side side);

// The Reg-forall subset X ∩ N of the subgroup N, as the inverse-homomorphism
// pullback of r's coset action along the embedding N -> G.
RecognizableSubset restrict_universal(const RecognizableSubset& r,
                                      const Group& subgroup_backend,
                                      const Homomorphism& embedding);

// Every recognizable subset is rational: the preimage automaton read as an
// NFA has the same image.
RationalSubset to_rational(const RecognizableSubset& r);

}  // namespace ratsub
