#pragma once

#include <random>
#include <set>
#include <vector>

#include "ratsub/group.hpp"
#include "ratsub/nfa.hpp"
#include "ratsub/stallings.hpp"

namespace ratsub::testing {

using Rng = std::mt19937_64;

inline Word random_word(Rng& rng, const Alphabet& a, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, a.letter_count() - 1);
  Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back(static_cast<Letter>(letter(rng)));
  return w;
}

inline Word random_reduced_word(Rng& rng, const Alphabet& a, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, a.letter_count() - 1);
  Word w;
  int n = len(rng);
  while (static_cast<int>(w.size()) < n) {
    Letter x = static_cast<Letter>(letter(rng));
    if (!w.empty() && w.back() == Alphabet::inv(x)) continue;
    w.push_back(x);
  }
  return w;
}

inline Nfa random_nfa(Rng& rng, const Alphabet& a, int max_states,
                      double edge_prob = 0.25, double eps_prob = 0.08) {
  std::uniform_int_distribution<int> states(1, max_states);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Nfa out{a, states(rng), {}, {}, {}};
  std::uniform_int_distribution<int> st(0, out.state_count - 1);
  for (int f = 0; f < out.state_count; ++f) {
    for (int l = 0; l < a.letter_count(); ++l)
      if (coin(rng) < edge_prob) out.transitions.insert({f, l, st(rng)});
    if (coin(rng) < eps_prob) out.transitions.insert({f, kEpsilon, st(rng)});
  }
  out.start_states.insert(st(rng));
  int accepts = 1 + (st(rng) % 2);
  for (int i = 0; i < accepts; ++i) out.accept_states.insert(st(rng));
  return out;
}

// all reduced words of length <= radius over the alphabet, shortlex order
inline std::vector<Word> reduced_words_up_to(const Alphabet& a, int radius) {
  std::vector<Word> out{Word{}};
  size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    size_t layer_end = out.size();
    for (size_t i = layer_begin; i < layer_end; ++i)
      for (int l = 0; l < a.letter_count(); ++l) {
        Letter x = static_cast<Letter>(l);
        if (!out[i].empty() && out[i].back() == Alphabet::inv(x)) continue;
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    layer_begin = layer_end;
  }
  return out;
}

// membership of every reduced word of length <= radius in the (epsilon-
// closed) language of `a`, computed by one shared prefix walk
inline std::set<Word> accepted_reduced_words(const Nfa& a, int radius) {
  std::set<Word> out;
  struct Node {
    Word word;
    std::set<int> states;
  };
  std::vector<Node> layer{{Word{}, a.epsilon_closure(a.start_states)}};
  auto record = [&](const Node& n) {
    for (int s : n.states)
      if (a.accept_states.contains(s)) {
        out.insert(n.word);
        break;
      }
  };
  record(layer[0]);
  for (int len = 1; len <= radius; ++len) {
    std::vector<Node> next;
    for (const Node& n : layer)
      for (int l = 0; l < a.alphabet.letter_count(); ++l) {
        Letter x = static_cast<Letter>(l);
        if (!n.word.empty() && n.word.back() == Alphabet::inv(x)) continue;
        std::set<int> states = a.step(n.states, x);
        if (states.empty()) continue;
        Word w = n.word;
        w.push_back(x);
        Node node{std::move(w), std::move(states)};
        record(node);
        next.push_back(std::move(node));
      }
    layer = std::move(next);
  }
  return out;
}

// Schreier generators of the kernel of the homomorphism F(rank) -> Sym
// given by one permutation per positive letter (used to build finite index
// subgroups with a known index)
inline std::vector<Word> kernel_generators(
    int rank, const std::vector<std::vector<int>>& letter_perms) {
  int n = static_cast<int>(letter_perms.at(0).size());
  std::vector<std::vector<int>> inv(rank, std::vector<int>(n));
  for (int l = 0; l < rank; ++l)
    for (int v = 0; v < n; ++v) inv[l][letter_perms[l][v]] = v;
  auto act = [&](int v, Letter x) {
    int l = Alphabet::base_index(x);
    return Alphabet::is_positive(x) ? letter_perms[l][v] : inv[l][v];
  };
  // BFS transversal from 0
  std::vector<Word> rep(n);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::vector<int> queue{0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int x = 0; x < 2 * rank; ++x) {
      int w = act(v, static_cast<Letter>(x));
      if (!seen[w]) {
        seen[w] = true;
        rep[w] = rep[v];
        rep[w].push_back(static_cast<Letter>(x));
        queue.push_back(w);
      }
    }
  }
  std::vector<Word> gens;
  for (int v = 0; v < n; ++v)
    for (int l = 0; l < rank; ++l) {
      Letter x = Alphabet::positive(l);
      int w = act(v, x);
      // rep(v) · x · rep(w)^-1
      Word g = rep[v];
      g.push_back(x);
      Word back = inverse_word(rep[w]);
      g.insert(g.end(), back.begin(), back.end());
      gens.push_back(std::move(g));
    }
  return gens;
}

}  // namespace ratsub::testing
