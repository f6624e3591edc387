#pragma once

#include <functional>
#include <set>

#include "ratsub/group.hpp"
#include "ratsub/nfa.hpp"

namespace ratsub {

// Brute-force reference implementations. These are deliberately naive and
// never call the modules they are used to validate; hard guards make the
// exponential enumerations fail loudly instead of hanging.

// { eval(w) : w ∈ L(nfa), |w| <= max_path_len }, max_path_len <= 16.
std::set<Element> brute_image(const Group& g, const Nfa& nfa, int max_path_len);

// All products of at most max_factors generators or inverse generators,
// max_factors <= 6.
std::set<Element> brute_subgroup(const Group& g, const std::vector<Word>& generators,
                                 int max_factors);

// { x·e·x^-1 : x ∈ ball(radius) }, radius <= 10.
std::set<Element> brute_conjugacy(const Group& g, const Element& e, int radius);

struct LangComparison {
  bool equal = true;
  Word counterexample;  // shortlex-least disagreement when equal is false
};

using Acceptor = std::function<bool(const Word&)>;

// Exhaustively compares two acceptors on every word up to max_len (<= 12).
LangComparison lang_equiv_bounded(const Acceptor& a, const Acceptor& b,
                                  const Alphabet& alphabet, int max_len);

}  // namespace ratsub
