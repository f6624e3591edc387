#include "ratsub/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ratsub/errors.hpp"

namespace ratsub {

void Nfa::check() const {
  if (state_count < 0) throw InputError("negative state count");
  auto check_state = [&](int s) {
    if (s < 0 || s >= state_count)
      throw InputError("state index out of range: " + std::to_string(s));
  };
  for (const auto& t : transitions) {
    check_state(t.from);
    check_state(t.to);
    if (t.label != kEpsilon && !alphabet.contains(static_cast<Letter>(t.label)))
      throw InputError("transition label out of range");
  }
  for (int s : start_states) check_state(s);
  for (int s : accept_states) check_state(s);
}

std::set<int> Nfa::epsilon_closure(std::set<int> states) const {
  std::deque<int> queue(states.begin(), states.end());
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto& t : transitions)
      if (t.from == s && t.label == kEpsilon && states.insert(t.to).second)
        queue.push_back(t.to);
  }
  return states;
}

std::set<int> Nfa::step(const std::set<int>& states, Letter a) const {
  std::set<int> out;
  for (const auto& t : transitions)
    if (t.label == static_cast<int>(a) && states.contains(t.from))
      out.insert(t.to);
  return epsilon_closure(std::move(out));
}

bool Nfa::accepts(const Word& w) const {
  std::set<int> cur = epsilon_closure(start_states);
  for (Letter a : w) {
    if (cur.empty()) return false;
    cur = step(cur, a);
  }
  return std::ranges::any_of(cur, [&](int s) { return accept_states.contains(s); });
}

Nfa Nfa::empty_language(const Alphabet& a) {
  return Nfa{a, 1, {}, {0}, {}};
}

Nfa Nfa::single_word(const Alphabet& a, const Word& w) {
  check_word(a, w);
  Nfa out{a, static_cast<int>(w.size()) + 1, {}, {0},
          {static_cast<int>(w.size())}};
  for (size_t i = 0; i < w.size(); ++i)
    out.transitions.insert(
        {static_cast<int>(i), static_cast<int>(w[i]), static_cast<int>(i) + 1});
  return out;
}

bool Dfa::total() const {
  for (const auto& row : delta)
    for (int v : row)
      if (v < 0) return false;
  return true;
}

bool Dfa::accepts(const Word& w) const {
  int s = start;
  for (Letter a : w) {
    s = delta[s][a];
    if (s < 0) return false;
  }
  return accept_states.contains(s);
}

Nfa Dfa::to_nfa() const {
  Nfa out{alphabet, state_count, {}, {start}, accept_states};
  for (int s = 0; s < state_count; ++s)
    for (int a = 0; a < alphabet.letter_count(); ++a)
      if (delta[s][a] >= 0) out.transitions.insert({s, a, delta[s][a]});
  return out;
}

namespace {

void require_same_alphabet(const Nfa& a, const Nfa& b) {
  if (!(a.alphabet == b.alphabet))
    throw InputError("automata are over different alphabets");
}

}  // namespace

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  Nfa out{a.alphabet, a.state_count + b.state_count, {}, {}, {}};
  out.transitions = a.transitions;
  for (const auto& t : b.transitions)
    out.transitions.insert({t.from + a.state_count, t.label, t.to + a.state_count});
  out.start_states = a.start_states;
  for (int s : b.start_states) out.start_states.insert(s + a.state_count);
  out.accept_states = a.accept_states;
  for (int s : b.accept_states) out.accept_states.insert(s + a.state_count);
  return out;
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  Nfa out{a.alphabet, a.state_count + b.state_count, {}, a.start_states, {}};
  out.transitions = a.transitions;
  for (const auto& t : b.transitions)
    out.transitions.insert({t.from + a.state_count, t.label, t.to + a.state_count});
  for (int f : a.accept_states)
    for (int s : b.start_states)
      out.transitions.insert({f, kEpsilon, s + a.state_count});
  for (int s : b.accept_states) out.accept_states.insert(s + a.state_count);
  return out;
}

Nfa nfa_intersect(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  // product over the reachable pairs; epsilon moves advance one side
  std::map<std::pair<int, int>, int> id;
  std::deque<std::pair<int, int>> queue;
  Nfa out{a.alphabet, 0, {}, {}, {}};
  auto intern = [&](std::pair<int, int> p) {
    auto [it, fresh] = id.emplace(p, out.state_count);
    if (fresh) {
      ++out.state_count;
      queue.push_back(p);
    }
    return it->second;
  };
  for (int sa : a.start_states)
    for (int sb : b.start_states) out.start_states.insert(intern({sa, sb}));
  while (!queue.empty()) {
    auto [pa, pb] = queue.front();
    queue.pop_front();
    int from = id[{pa, pb}];
    if (a.accept_states.contains(pa) && b.accept_states.contains(pb))
      out.accept_states.insert(from);
    for (const auto& t : a.transitions) {
      if (t.from != pa) continue;
      if (t.label == kEpsilon) {
        out.transitions.insert({from, kEpsilon, intern({t.to, pb})});
      } else {
        for (const auto& u : b.transitions)
          if (u.from == pb && u.label == t.label)
            out.transitions.insert({from, t.label, intern({t.to, u.to})});
      }
    }
    for (const auto& u : b.transitions)
      if (u.from == pb && u.label == kEpsilon)
        out.transitions.insert({from, kEpsilon, intern({pa, u.to})});
  }
  if (out.state_count == 0) return Nfa::empty_language(a.alphabet);
  return out;
}

Dfa determinize(const Nfa& a) {
  std::map<std::set<int>, int> id;
  std::deque<std::set<int>> queue;
  Dfa out{a.alphabet, 0, {}, 0, {}};
  const int letters = a.alphabet.letter_count();
  auto intern = [&](std::set<int> states) {
    auto [it, fresh] = id.emplace(states, out.state_count);
    if (fresh) {
      ++out.state_count;
      out.delta.emplace_back(letters, -1);
      queue.push_back(std::move(states));
    }
    return it->second;
  };
  out.start = intern(a.epsilon_closure(a.start_states));
  while (!queue.empty()) {
    std::set<int> cur = queue.front();
    queue.pop_front();
    int from = id[cur];
    if (std::ranges::any_of(cur, [&](int s) { return a.accept_states.contains(s); }))
      out.accept_states.insert(from);
    for (int l = 0; l < letters; ++l) {
      std::set<int> nxt = a.step(cur, static_cast<Letter>(l));
      if (nxt.empty()) continue;  // dead; the complement adds a sink
      out.delta[from][l] = intern(std::move(nxt));
    }
  }
  return out;
}

Dfa complement(const Dfa& d) {
  Dfa out = d;
  if (!out.total()) {
    int sink = out.state_count++;
    out.delta.emplace_back(out.alphabet.letter_count(), sink);
    for (auto& row : out.delta)
      for (int& v : row)
        if (v < 0) v = sink;
  }
  std::set<int> flipped;
  for (int s = 0; s < out.state_count; ++s)
    if (!out.accept_states.contains(s)) flipped.insert(s);
  out.accept_states = std::move(flipped);
  return out;
}

bool is_empty(const Nfa& a) {
  std::set<int> reached = a.epsilon_closure(a.start_states);
  std::deque<int> queue(reached.begin(), reached.end());
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (a.accept_states.contains(s)) return false;
    for (const auto& t : a.transitions)
      if (t.from == s && reached.insert(t.to).second) queue.push_back(t.to);
  }
  return true;
}

bool inclusion(const Nfa& a, const Nfa& b) {
  return !inclusion_witness(a, b).has_value();
}

std::optional<Word> inclusion_witness(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  // BFS over (state set of a, complement-DFA state of b) in shortlex order
  Dfa nb = complement(determinize(b));
  using Cfg = std::pair<std::set<int>, int>;
  std::set<Cfg> seen;
  std::deque<std::pair<Cfg, Word>> queue;
  Cfg start{a.epsilon_closure(a.start_states), nb.start};
  seen.insert(start);
  queue.emplace_back(start, Word{});
  const int letters = a.alphabet.letter_count();
  while (!queue.empty()) {
    auto [cfg, w] = queue.front();
    queue.pop_front();
    const auto& [sa, sb] = cfg;
    bool a_accepts =
        std::ranges::any_of(sa, [&](int s) { return a.accept_states.contains(s); });
    if (a_accepts && nb.accept_states.contains(sb)) return w;
    for (int l = 0; l < letters; ++l) {
      Cfg nxt{a.step(sa, static_cast<Letter>(l)), nb.delta[sb][l]};
      if (nxt.first.empty()) continue;  // nothing of L(a) survives
      if (!seen.insert(nxt).second) continue;
      Word w2 = w;
      w2.push_back(static_cast<Letter>(l));
      queue.emplace_back(std::move(nxt), std::move(w2));
    }
  }
  return std::nullopt;
}

Homomorphism::Homomorphism(Alphabet source, Alphabet target,
                           std::vector<Word> letter_images)
    : source_(std::move(source)), target_(std::move(target)),
      images_(std::move(letter_images)) {
  if (static_cast<int>(images_.size()) != source_.letter_count())
    throw InputError("homomorphism needs an image for every letter");
  for (const auto& w : images_) check_word(target_, w);
}

Homomorphism Homomorphism::group_hom(Alphabet source, Alphabet target,
                                     std::vector<Word> positive_images) {
  if (static_cast<int>(positive_images.size()) != source.rank())
    throw InputError("homomorphism needs an image for every positive letter");
  std::vector<Word> images(2 * positive_images.size());
  for (size_t k = 0; k < positive_images.size(); ++k) {
    images[2 * k] = positive_images[k];
    images[2 * k + 1] = inverse_word(positive_images[k]);
  }
  return Homomorphism(std::move(source), std::move(target), std::move(images));
}

const Word& Homomorphism::image(Letter a) const {
  if (!source_.contains(a)) throw InputError("letter not in source alphabet");
  return images_[a];
}

Word Homomorphism::apply(const Word& w) const {
  Word out;
  for (Letter a : w) {
    const Word& im = image(a);
    out.insert(out.end(), im.begin(), im.end());
  }
  return out;
}

Nfa inverse_hom(const Homomorphism& h, const Nfa& target_language) {
  if (!(h.target() == target_language.alphabet))
    throw InputError("homomorphism target does not match the language alphabet");
  Dfa d = determinize(target_language);
  if (d.state_count == 0)
    return Nfa::empty_language(h.source());
  // run h(letter) through the determinized target language
  Nfa out{h.source(), d.state_count, {}, {d.start}, d.accept_states};
  for (int s = 0; s < d.state_count; ++s)
    for (int l = 0; l < h.source().letter_count(); ++l) {
      int cur = s;
      for (Letter b : h.image(static_cast<Letter>(l))) {
        cur = d.delta[cur][b];
        if (cur < 0) break;
      }
      if (cur >= 0) out.transitions.insert({s, l, cur});
    }
  return out;
}

Nfa hom_image(const Homomorphism& h, const Nfa& source_language) {
  if (!(h.source() == source_language.alphabet))
    throw InputError("homomorphism source does not match the language alphabet");
  Nfa out{h.target(), source_language.state_count, {},
          source_language.start_states, source_language.accept_states};
  int next = source_language.state_count;
  for (const auto& t : source_language.transitions) {
    if (t.label == kEpsilon) {
      out.transitions.insert(t);
      continue;
    }
    const Word& im = h.image(static_cast<Letter>(t.label));
    if (im.empty()) {
      out.transitions.insert({t.from, kEpsilon, t.to});
    } else {
      int cur = t.from;
      for (size_t i = 0; i + 1 < im.size(); ++i) {
        out.transitions.insert({cur, static_cast<int>(im[i]), next});
        cur = next++;
      }
      out.transitions.insert({cur, static_cast<int>(im.back()), t.to});
    }
  }
  out.state_count = next;
  return out;
}

Dfa reduced_filter(const Alphabet& a) {
  const int letters = a.letter_count();
  // state 0: nothing read yet; state 1+l: last letter was l
  Dfa out{a, letters + 1, {}, 0, {}};
  out.delta.assign(letters + 1, std::vector<int>(letters, -1));
  for (int l = 0; l < letters; ++l) out.delta[0][l] = 1 + l;
  for (int last = 0; last < letters; ++last)
    for (int l = 0; l < letters; ++l)
      if (static_cast<Letter>(l) != Alphabet::inv(static_cast<Letter>(last)))
        out.delta[1 + last][l] = 1 + l;
  for (int s = 0; s <= letters; ++s) out.accept_states.insert(s);
  return out;
}

}  // namespace ratsub
