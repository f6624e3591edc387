#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ratsub/alphabet.hpp"

namespace ratsub {

inline constexpr int kEpsilon = -1;

struct Transition {
  int from = 0;
  int label = kEpsilon;  // letter index or kEpsilon
  int to = 0;
  auto operator<=>(const Transition&) const = default;
};

// Nondeterministic automaton over an involutive alphabet. Epsilon transitions
// are allowed; Benois saturation adds them.
struct Nfa {
  Alphabet alphabet;
  int state_count = 0;
  std::set<Transition> transitions;
  std::set<int> start_states;
  std::set<int> accept_states;

  void check() const;  // throws InputError on out-of-range states or labels

  std::set<int> epsilon_closure(std::set<int> states) const;
  std::set<int> step(const std::set<int>& states, Letter a) const;
  bool accepts(const Word& w) const;

  static Nfa empty_language(const Alphabet& a);
  static Nfa single_word(const Alphabet& a, const Word& w);
};

// Deterministic automaton; delta[state][letter] is the target or -1.
struct Dfa {
  Alphabet alphabet;
  int state_count = 0;
  std::vector<std::vector<int>> delta;
  int start = 0;
  std::set<int> accept_states;

  bool total() const;
  bool accepts(const Word& w) const;
  Nfa to_nfa() const;
};

Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_intersect(const Nfa& a, const Nfa& b);

Dfa determinize(const Nfa& a);
// Totalizes with a fresh sink state if needed, then flips acceptance.
Dfa complement(const Dfa& d);
bool is_empty(const Nfa& a);
bool inclusion(const Nfa& a, const Nfa& b);
// Shortlex-least word in L(a) \ L(b), if any.
std::optional<Word> inclusion_witness(const Nfa& a, const Nfa& b);

// Monoid homomorphism between free monoids on involutive alphabets,
// given by an image word for every letter.
class Homomorphism {
public:
  Homomorphism(Alphabet source, Alphabet target, std::vector<Word> letter_images);
  // Group-style: images of positive letters only; inverse letters map to the
  // reversed inverse image.
  static Homomorphism group_hom(Alphabet source, Alphabet target,
                                std::vector<Word> positive_images);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const Word& image(Letter a) const;
  Word apply(const Word& w) const;

private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;  // indexed by letter
};

// Accepts exactly { w : h(w) ∈ L(target_language) }.
Nfa inverse_hom(const Homomorphism& h, const Nfa& target_language);
// Accepts exactly { h(w) : w ∈ L(source_language) }.
Nfa hom_image(const Homomorphism& h, const Nfa& source_language);

// Accepts exactly the freely reduced words: letter_count + 1 states, one per
// "last letter seen" plus the initial state; all states accept.
Dfa reduced_filter(const Alphabet& a);

}  // namespace ratsub
