#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ratsub/alphabet.hpp"

namespace ratsub {

// Normal form of a virtually cyclic group element: t^z b_klass with
// klass in [1..n] and b_1 the identity representative.
struct VCElement {
  std::int64_t z = 0;
  int klass = 1;
  auto operator<=>(const VCElement&) const = default;
};

struct FiniteElement {
  int index = 0;
  auto operator<=>(const FiniteElement&) const = default;
};

// Normal forms across the three backends. Free group elements are their own
// reduced words.
using Element = std::variant<ReducedWord, FiniteElement, VCElement>;

class FreeGroup {
public:
  explicit FreeGroup(int rank);
  FreeGroup(int rank, Alphabet alphabet);
  int rank() const { return rank_; }
  const Alphabet& alphabet() const { return alpha_; }
  bool operator==(const FreeGroup&) const = default;

private:
  int rank_ = 0;
  Alphabet alpha_;
};

// A finite group given by its full multiplication table. The table is checked
// exhaustively at construction (identity, inverses, associativity) and the
// named generators must reach every element.
class FiniteGroup {
public:
  FiniteGroup(std::vector<std::vector<int>> table, int identity,
              std::vector<std::pair<std::string, int>> generators);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int multiply(int x, int y) const { return table_[x][y]; }
  int inverse(int x) const { return inverse_[x]; }
  // Image of any letter, inverse letters included.
  int letter_image(Letter a) const;
  const Alphabet& alphabet() const { return alpha_; }
  bool operator==(const FiniteGroup&) const = default;

  static FiniteGroup cyclic(int n);   // generator "g"
  static FiniteGroup symmetric3();    // generators "s" (transposition), "r" (3-cycle)

private:
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
  Alphabet alpha_;
  std::vector<int> positive_image_;  // generator index -> element
};

// Extension data for a virtually cyclic group with infinite cyclic normal
// subgroup <t>: transversal classes 1..n with b_1 = 1,
//   b_i t b_i^-1 = t^phi(i)          (phi(i) = +-1)
//   b_i b_j = t^c(i,j) b_tau(i,j)
// Multiplication of normal forms:
//   (z,i)·(z',j) = (z + phi(i)·z' + c(i,j), tau(i,j)).
// Associativity, the cocycle identities and phi(tau(i,j)) = phi(i)phi(j) are
// checked for all transversal triples at construction.
class VirtuallyCyclicGroup {
public:
  VirtuallyCyclicGroup(int n, std::vector<int> phi,
                       std::vector<std::vector<std::int64_t>> cocycle,
                       std::vector<std::vector<int>> tau);

  int classes() const { return n_; }
  int phi(int i) const { return phi_[i - 1]; }
  std::int64_t cocycle(int i, int j) const { return c_[i - 1][j - 1]; }
  int tau(int i, int j) const { return tau_[i - 1][j - 1]; }
  int class_inverse(int i) const { return class_inv_[i - 1]; }

  // Alphabet t, b2..bn.
  const Alphabet& alphabet() const { return alpha_; }

  VCElement multiply(const VCElement& x, const VCElement& y) const;
  VCElement inverse(const VCElement& x) const;
  VCElement letter_element(Letter a) const;

  bool is_integers() const { return n_ == 1; }

  static VirtuallyCyclicGroup integers();           // Z = <t>
  static VirtuallyCyclicGroup infinite_dihedral();  // D_inf

  bool operator==(const VirtuallyCyclicGroup&) const = default;

private:
  int n_ = 1;
  std::vector<int> phi_;
  std::vector<std::vector<std::int64_t>> c_;
  std::vector<std::vector<int>> tau_;
  std::vector<int> class_inv_;
  Alphabet alpha_;
};

VCElement vc_multiply(const VirtuallyCyclicGroup& g, const VCElement& x,
                      const VCElement& y);

// Runtime-dispatched backend. All values are immutable after construction;
// evaluation is a monoid homomorphism from words to normal forms.
class Group {
public:
  enum class Kind { Free, Finite, VirtuallyCyclic };

  Group(FreeGroup g) : g_(std::move(g)) {}
  Group(FiniteGroup g) : g_(std::move(g)) {}
  Group(VirtuallyCyclicGroup g) : g_(std::move(g)) {}

  Kind kind() const { return static_cast<Kind>(g_.index()); }
  bool is_free() const { return kind() == Kind::Free; }
  bool is_finite() const { return kind() == Kind::Finite; }
  bool is_vc() const { return kind() == Kind::VirtuallyCyclic; }
  // Z is the virtually cyclic backend with a single transversal class.
  bool is_integers() const { return is_vc() && vc().is_integers(); }

  const FreeGroup& free() const;
  const FiniteGroup& finite() const;
  const VirtuallyCyclicGroup& vc() const;

  const Alphabet& alphabet() const;

  Element identity() const;
  Element letter(Letter a) const;
  Element eval(const Word& w) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  bool is_identity(const Element& x) const { return x == identity(); }

  std::string format_element(const Element& x) const;

  bool operator==(const Group&) const = default;

private:
  std::variant<FreeGroup, FiniteGroup, VirtuallyCyclicGroup> g_;
};

struct BallEntry {
  Element element;
  Word witness;  // shortlex-minimal word evaluating to the element
};

// All elements of word length <= radius, each with its shortlex-minimal
// witness, listed in shortlex order of the witnesses.
std::vector<BallEntry> ball(const Group& g, int radius);

}  // namespace ratsub
