#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratsub/errors.hpp"
#include "ratsub/nerode.hpp"
#include "ratsub/rational.hpp"
#include "ratsub/recognizable.hpp"
#include "ratsub/semilinear.hpp"
#include "ratsub/stallings.hpp"

namespace ratsub {

// Thrown when a subset is not contained in the target subgroup; carries a
// shortest offending reduced word.
class ContainmentError : public PreconditionError {
public:
  ContainmentError(const std::string& msg, Word witness)
      : PreconditionError(msg), witness(std::move(witness)) {}
  Word witness;
};

// X = ⋃ pi(L_i)·b_i over a right transversal b_1..b_n of a finite index
// subgroup, with each component a subset of the subgroup over its own
// generators: rational over the free basis for free backends, semilinear in
// t^m units for virtually cyclic backends.
struct Decomposition {
  Group group;
  std::vector<Word> transversal;  // words over the ambient alphabet, b_1 = 1

  // free backend
  std::optional<StallingsGraph> subgroup_graph;
  std::optional<Group> component_backend;  // free group on the basis letters
  std::vector<Word> basis_words;           // basis letters' images in G
  std::vector<RationalSubset> rational_components;

  // virtually cyclic backend: subgroup mZ = <t^m>
  std::optional<long long> modulus;
  std::vector<SemilinearZ> semilinear_components;
};

// Writes a rational subset of a free group contained in H over H's own free
// basis x_1..x_k. Verifies pi(x) ⊆ H first and reports a witness word on
// failure. The construction runs the saturated reduced automaton through the
// subgroup graph and transduces non-tree edge crossings into basis letters.
RationalSubset rewrite_into_subgroup(const RationalSubset& x,
                                     const StallingsGraph& h);

// The word over basis letters traced by a member word, if it is a member.
std::optional<Word> rewrite_member_word(const StallingsGraph& h, const Word& w);

Decomposition decompose(const RationalSubset& x, const StallingsGraph& h);
Decomposition decompose(const RationalSubset& x, long long modulus);
RationalSubset recompose(const Decomposition& d);

// Transfers an epi witness (image G \ {1}) of a virtually cyclic group to the
// finite index subgroup mZ, returning a rational subset over a fresh rank-1
// backend with image mZ \ {0} in t^m units. The witness is verified first.
RationalSubset epi_transfer(const RationalSubset& witness, long long modulus);

enum class FlatnessStatus { Transferable, NotTransferableCertified, Inconclusive };

struct FlatnessReport {
  FlatnessStatus status = FlatnessStatus::Inconclusive;
  // G-side recognizable subset with the same elements, when it exists
  std::optional<RecognizableSubset> transferred;
  // Nerode witnesses for the G-side preimage when transfer is impossible;
  // certifies that any DFA needs >= requested_k states
  std::optional<NerodeResult> certificate;
  int requested_k = 0;
  std::string detail;
};

// Finite ambient group: every recognizable subset of the subgroup transfers;
// x lives over H's own backend and embeds via the given homomorphism.
FlatnessReport flatness_forall(const Group& finite_g, const Group& subgroup_backend,
                               const Homomorphism& embedding,
                               const RecognizableSubset& x);

// Free ambient group, subgroup as a Stallings graph, x over the basis
// backend of h. Finite index always transfers; infinite index searches for a
// Nerode certificate of non-transferability.
FlatnessReport flatness_forall(const RecognizableSubset& x, const StallingsGraph& h,
                               int nerode_k, int nerode_radius);

// Virtually cyclic ambient group with subgroup mZ; x over the rank-1 backend
// in t^m units. Always transfers.
FlatnessReport flatness_forall_vc(const Group& vc_g, long long modulus,
                                  const RecognizableSubset& x);

}  // namespace ratsub
