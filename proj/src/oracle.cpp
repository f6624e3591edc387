#include "ratsub/oracle.hpp"

#include <algorithm>
#include <map>

#include "ratsub/errors.hpp"

namespace ratsub {

std::set<Element> brute_image(const Group& g, const Nfa& nfa, int max_path_len) {
  if (max_path_len < 0 || max_path_len > 16)
    throw InputError("brute_image guard: max_path_len must be in [0, 16]");
  nfa.check();
  if (!(nfa.alphabet == g.alphabet()))
    throw InputError("automaton alphabet does not match the backend");
  std::set<Element> image;
  // level BFS over (reachable state set, element); word-length levels keep
  // the enumeration exact, deduplication within a level keeps it finite
  std::set<std::pair<std::set<int>, Element>> layer{
      {nfa.epsilon_closure(nfa.start_states), g.identity()}};
  auto note = [&](const std::set<std::pair<std::set<int>, Element>>& l) {
    for (const auto& [states, elem] : l)
      if (std::ranges::any_of(
              states, [&](int s) { return nfa.accept_states.contains(s); }))
        image.insert(elem);
  };
  note(layer);
  for (int len = 0; len < max_path_len && !layer.empty(); ++len) {
    std::set<std::pair<std::set<int>, Element>> next;
    for (const auto& [states, elem] : layer)
      for (Letter a = 0; a < static_cast<Letter>(nfa.alphabet.letter_count());
           ++a) {
        std::set<int> ns = nfa.step(states, a);
        if (ns.empty()) continue;
        next.insert({std::move(ns), g.multiply(elem, g.letter(a))});
      }
    note(next);
    layer = std::move(next);
  }
  return image;
}

std::set<Element> brute_subgroup(const Group& g,
                                 const std::vector<Word>& generators,
                                 int max_factors) {
  if (max_factors < 0 || max_factors > 6)
    throw InputError("brute_subgroup guard: max_factors must be in [0, 6]");
  std::vector<Element> steps;
  for (const Word& w : generators) {
    Element e = g.eval(w);
    steps.push_back(e);
    steps.push_back(g.inverse(e));
  }
  std::set<Element> all{g.identity()};
  std::set<Element> frontier{g.identity()};
  for (int k = 0; k < max_factors; ++k) {
    std::set<Element> next;
    for (const Element& e : frontier)
      for (const Element& s : steps) {
        Element e2 = g.multiply(e, s);
        if (all.insert(e2).second) next.insert(e2);
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return all;
}

std::set<Element> brute_conjugacy(const Group& g, const Element& e, int radius) {
  if (radius < 0 || radius > 10)
    throw InputError("brute_conjugacy guard: radius must be in [0, 10]");
  std::set<Element> out;
  for (const auto& entry : ball(g, radius)) {
    const Element& x = entry.element;
    out.insert(g.multiply(g.multiply(x, e), g.inverse(x)));
  }
  return out;
}

LangComparison lang_equiv_bounded(const Acceptor& a, const Acceptor& b,
                                  const Alphabet& alphabet, int max_len) {
  if (max_len < 0 || max_len > 12)
    throw InputError("lang_equiv_bounded guard: max_len must be in [0, 12]");
  const int letters = alphabet.letter_count();
  for (int len = 0; len <= max_len; ++len) {
    Word w(len, 0);
    for (;;) {
      if (a(w) != b(w)) return {false, w};
      // odometer to the next word of this length, in shortlex order
      int pos = len - 1;
      while (pos >= 0 && w[pos] == static_cast<Letter>(letters - 1)) {
        w[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++w[pos];
    }
    if (letters == 0) break;
  }
  return {true, {}};
}

}  // namespace ratsub
