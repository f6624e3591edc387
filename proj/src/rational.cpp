#include "ratsub/rational.hpp"

#include <deque>
#include <map>

#include "ratsub/errors.hpp"
#include "ratsub/structure.hpp"

namespace ratsub {

void RationalSubset::check() const {
  nfa.check();
  if (!(nfa.alphabet == group.alphabet()))
    throw InputError("rational subset automaton alphabet does not match backend");
}

namespace {

// provenance of a derived epsilon edge: consuming `letter`, an epsilon
// excursion from `mid_from` to `mid_to` (using edges of an earlier
// generation only), then the inverse letter
struct EdgeOrigin {
  int letter;
  int mid_from;
  int mid_to;
  int generation;
};

struct Saturation {
  Nfa nfa;
  std::map<std::pair<int, int>, EdgeOrigin> derived;
};

Saturation saturate(const RationalSubset& x) {
  x.check();
  if (!x.group.is_free())
    throw InputError("Benois saturation requires a free group backend");
  Saturation out{x.nfa, {}};
  Nfa& n = out.nfa;
  const int q = n.state_count;
  for (int generation = 1;; ++generation) {
    // epsilon reachability
    std::vector<std::vector<int>> eps(q);
    for (const auto& t : n.transitions)
      if (t.label == kEpsilon) eps[t.from].push_back(t.to);
    std::vector<std::vector<bool>> reach(q, std::vector<bool>(q, false));
    for (int s = 0; s < q; ++s) {
      std::deque<int> queue{s};
      reach[s][s] = true;
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : eps[u])
          if (!reach[s][v]) {
            reach[s][v] = true;
            queue.push_back(v);
          }
      }
    }
    // p -a-> r, r =eps=> s, s -a^-1-> q': add p =eps=> q'
    std::map<int, std::vector<const Transition*>> by_label;
    for (const auto& t : n.transitions)
      if (t.label != kEpsilon) by_label[t.label].push_back(&t);
    bool added = false;
    for (const auto& [label, outs] : by_label) {
      int inv = static_cast<int>(Alphabet::inv(static_cast<Letter>(label)));
      auto it = by_label.find(inv);
      if (it == by_label.end()) continue;
      for (const Transition* t1 : outs)
        for (const Transition* t2 : it->second)
          if (reach[t1->to][t2->from] &&
              n.transitions.insert({t1->from, kEpsilon, t2->to}).second) {
            added = true;
            out.derived.emplace(
                std::pair{t1->from, t2->to},
                EdgeOrigin{label, t1->to, t2->from, generation});
          }
    }
    if (!added) break;
  }
  return out;
}

// word of the original automaton spelled by an epsilon excursion, expanding
// derived edges recursively; generations strictly decrease, so this
// terminates
Word expand_epsilon_path(const Saturation& s, int from, int to, int max_gen) {
  if (from == to) return {};
  // BFS over epsilon edges admissible at this generation
  std::map<int, std::pair<int, int>> parent;  // state -> (prev state, edge gen)
  std::deque<int> queue{from};
  parent[from] = {from, 0};
  while (!queue.empty() && !parent.contains(to)) {
    int u = queue.front();
    queue.pop_front();
    for (const auto& t : s.nfa.transitions) {
      if (t.from != u || t.label != kEpsilon || parent.contains(t.to)) continue;
      auto it = s.derived.find({t.from, t.to});
      if (it != s.derived.end() && it->second.generation >= max_gen) continue;
      parent[t.to] = {u, 0};
      queue.push_back(t.to);
    }
  }
  if (!parent.contains(to))
    throw InconsistencyError("saturation provenance lost an epsilon path");
  std::vector<std::pair<int, int>> path;  // edges (u, v) reversed
  for (int v = to; v != from; v = parent[v].first)
    path.push_back({parent[v].first, v});
  Word out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    auto origin = s.derived.find(*it);
    if (origin == s.derived.end()) continue;  // original epsilon edge
    const EdgeOrigin& o = origin->second;
    out.push_back(static_cast<Letter>(o.letter));
    Word inner = expand_epsilon_path(s, o.mid_from, o.mid_to, o.generation);
    out.insert(out.end(), inner.begin(), inner.end());
    out.push_back(Alphabet::inv(static_cast<Letter>(o.letter)));
  }
  return out;
}

}  // namespace

Nfa benois_saturate(const RationalSubset& x) { return saturate(x).nfa; }

std::optional<Word> benois_witness(const RationalSubset& x, const Word& w) {
  Saturation s = saturate(x);
  ReducedWord r = free_reduce(x.group.alphabet(), w);
  // BFS for an accepting run of the reduced word through the saturated
  // automaton, remembering every edge taken
  struct Node {
    int state;
    size_t consumed;
    auto operator<=>(const Node&) const = default;
  };
  std::map<Node, std::pair<Node, Transition>> parent;
  std::deque<Node> queue;
  std::optional<Node> goal;
  auto push = [&](Node from, const Transition& t, Node to) {
    if (parent.contains(to)) return;
    parent.emplace(to, std::pair{from, t});
    queue.push_back(to);
  };
  for (int st : s.nfa.start_states) {
    Node n{st, 0};
    if (!parent.contains(n)) {
      parent.emplace(n, std::pair{n, Transition{st, kEpsilon, st}});
      queue.push_back(n);
    }
  }
  while (!queue.empty()) {
    Node cur = queue.front();
    queue.pop_front();
    if (cur.consumed == r.size() && s.nfa.accept_states.contains(cur.state)) {
      goal = cur;
      break;
    }
    for (const auto& t : s.nfa.transitions) {
      if (t.from != cur.state) continue;
      if (t.label == kEpsilon) {
        push(cur, t, Node{t.to, cur.consumed});
      } else if (cur.consumed < r.size() &&
                 t.label == static_cast<int>(r.letters[cur.consumed])) {
        push(cur, t, Node{t.to, cur.consumed + 1});
      }
    }
  }
  if (!goal) return std::nullopt;
  // replay the run, expanding derived epsilon edges into cancelling words
  std::vector<Transition> run;
  Node at = *goal;
  for (;;) {
    auto& [prev, edge] = parent.at(at);
    if (prev == at && edge.from == edge.to && edge.label == kEpsilon &&
        at.consumed == 0)
      break;  // start marker
    run.push_back(edge);
    at = prev;
  }
  Word witness;
  for (auto it = run.rbegin(); it != run.rend(); ++it) {
    if (it->label != kEpsilon) {
      witness.push_back(static_cast<Letter>(it->label));
      continue;
    }
    auto origin = s.derived.find({it->from, it->to});
    if (origin == s.derived.end()) continue;  // original epsilon edge
    const EdgeOrigin& o = origin->second;
    witness.push_back(static_cast<Letter>(o.letter));
    Word inner = expand_epsilon_path(s, o.mid_from, o.mid_to, o.generation);
    witness.insert(witness.end(), inner.begin(), inner.end());
    witness.push_back(Alphabet::inv(static_cast<Letter>(o.letter)));
  }
  if (!x.nfa.accepts(witness) ||
      !(free_reduce(x.group.alphabet(), witness) == r))
    throw InconsistencyError("benois witness failed re-verification");
  return witness;
}

std::set<int> image_finite(const RationalSubset& x) {
  x.check();
  const FiniteGroup& f = x.group.finite();
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> queue;
  for (int s : x.nfa.start_states) {
    seen.insert({s, f.identity()});
    queue.push_back({s, f.identity()});
  }
  std::set<int> image;
  while (!queue.empty()) {
    auto [s, g] = queue.front();
    queue.pop_front();
    if (x.nfa.accept_states.contains(s)) image.insert(g);
    for (const auto& t : x.nfa.transitions) {
      if (t.from != s) continue;
      int g2 = t.label == kEpsilon
                   ? g
                   : f.multiply(g, f.letter_image(static_cast<Letter>(t.label)));
      if (seen.insert({t.to, g2}).second) queue.push_back({t.to, g2});
    }
  }
  return image;
}

SemilinearZ t_line_image(const RationalSubset& x) {
  x.check();
  const VirtuallyCyclicGroup& v = x.group.vc();
  const int n = v.classes();
  auto id = [&](int state, int klass) { return state * n + (klass - 1); };
  ZWeightedNfa w;
  w.state_count = x.nfa.state_count * n;
  for (const auto& t : x.nfa.transitions) {
    if (t.label == kEpsilon) {
      for (int i = 1; i <= n; ++i)
        w.edges.push_back({id(t.from, i), 0, id(t.to, i)});
    } else {
      VCElement le = v.letter_element(static_cast<Letter>(t.label));
      for (int i = 1; i <= n; ++i) {
        long long weight = v.phi(i) * le.z + v.cocycle(i, le.klass);
        w.edges.push_back({id(t.from, i), weight, id(t.to, v.tau(i, le.klass))});
      }
    }
  }
  for (int s : x.nfa.start_states) w.starts.insert(id(s, 1));
  for (int s : x.nfa.accept_states) w.accepts.insert(id(s, 1));
  return weighted_image(w);
}

SemilinearZ z_image(const RationalSubset& x) {
  x.check();
  if (!x.group.is_integers())
    throw InputError("z_image requires the Z backend (one transversal class)");
  return t_line_image(x);
}

bool rat_member(const RationalSubset& x, const Word& w) {
  x.check();
  check_word(x.group.alphabet(), w);
  switch (x.group.kind()) {
    case Group::Kind::Free: {
      ReducedWord r = free_reduce(x.group.alphabet(), w);
      return benois_saturate(x).accepts(r.letters);
    }
    case Group::Kind::Finite: {
      int e = std::get<FiniteElement>(x.group.eval(w)).index;
      return image_finite(x).contains(e);
    }
    default: {
      // route through the transversal decomposition over <t>
      Decomposition d = decompose(x, 1);
      VCElement e = std::get<VCElement>(x.group.eval(w));
      const VirtuallyCyclicGroup& v = x.group.vc();
      for (size_t j = 0; j < d.transversal.size(); ++j) {
        VCElement bj = std::get<VCElement>(x.group.eval(d.transversal[j]));
        if (bj.klass != e.klass) continue;
        VCElement h = v.multiply(e, v.inverse(bj));
        if (h.klass != 1)
          throw InconsistencyError("decomposition transversal mismatch");
        return d.semilinear_components[j].contains(h.z);
      }
      throw InconsistencyError("decomposition misses a coset");
    }
  }
}

namespace {

Nfa trimmed(const Nfa& a) {
  std::vector<std::vector<int>> fwd(a.state_count), bwd(a.state_count);
  for (const auto& t : a.transitions) {
    fwd[t.from].push_back(t.to);
    bwd[t.to].push_back(t.from);
  }
  auto reach = [&](const std::set<int>& roots,
                   const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(a.state_count, false);
    std::deque<int> queue;
    for (int s : roots)
      if (!seen[s]) {
        seen[s] = true;
        queue.push_back(s);
      }
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      for (int t : adj[s])
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
    }
    return seen;
  };
  auto fs = reach(a.start_states, fwd);
  auto ta = reach(a.accept_states, bwd);
  std::vector<int> newid(a.state_count, -1);
  int count = 0;
  for (int s = 0; s < a.state_count; ++s)
    if (fs[s] && ta[s]) newid[s] = count++;
  if (count == 0) return Nfa::empty_language(a.alphabet);
  Nfa out{a.alphabet, count, {}, {}, {}};
  for (const auto& t : a.transitions)
    if (newid[t.from] >= 0 && newid[t.to] >= 0)
      out.transitions.insert({newid[t.from], t.label, newid[t.to]});
  for (int s : a.start_states)
    if (newid[s] >= 0) out.start_states.insert(newid[s]);
  for (int s : a.accept_states)
    if (newid[s] >= 0) out.accept_states.insert(newid[s]);
  return out;
}

}  // namespace

RationalSubset intersect_recognizable(const RationalSubset& x,
                                      const RecognizableSubset& r) {
  x.check();
  if (!(x.group == r.action.group()))
    throw InputError("rational and recognizable subsets live over different backends");
  const int c = r.action.coset_count();
  auto id = [&](int state, int coset) { return state * c + coset; };
  Nfa out{x.group.alphabet(), x.nfa.state_count * c, {}, {}, {}};
  for (const auto& t : x.nfa.transitions) {
    if (t.label == kEpsilon) {
      for (int k = 0; k < c; ++k)
        out.transitions.insert({id(t.from, k), kEpsilon, id(t.to, k)});
    } else {
      for (int k = 0; k < c; ++k)
        out.transitions.insert(
            {id(t.from, k), t.label,
             id(t.to, r.action.act(k, static_cast<Letter>(t.label)))});
    }
  }
  for (int s : x.nfa.start_states)
    out.start_states.insert(id(s, r.action.base()));
  for (int s : x.nfa.accept_states)
    for (int k : r.accepted) out.accept_states.insert(id(s, k));
  return RationalSubset{x.group, trimmed(out)};
}

RationalSubset translate(const RationalSubset& x, const Word& g, Side side) {
  x.check();
  check_word(x.group.alphabet(), g);
  Nfa gw = Nfa::single_word(x.group.alphabet(), g);
  Nfa out = side == Side::Right ? nfa_concat(x.nfa, gw) : nfa_concat(gw, x.nfa);
  return RationalSubset{x.group, std::move(out)};
}

RationalSubset to_rational(const RecognizableSubset& r) {
  return RationalSubset{r.action.group(), preimage_dfa(r).to_nfa()};
}

RecognizableSubset restrict_universal(const RecognizableSubset& r,
                                      const Group& subgroup_backend,
                                      const Homomorphism& embedding) {
  if (!(embedding.source() == subgroup_backend.alphabet()))
    throw InputError("embedding source must be the subgroup alphabet");
  if (!(embedding.target() == r.action.group().alphabet()))
    throw InputError("embedding target must be the ambient alphabet");
  const Alphabet& sub = subgroup_backend.alphabet();
  // embedding must behave like a group homomorphism on inverse letters
  for (int k = 0; k < sub.rank(); ++k) {
    Letter a = Alphabet::positive(k);
    Word round = concat_words(embedding.image(a), embedding.image(Alphabet::inv(a)));
    for (int cc = 0; cc < r.action.coset_count(); ++cc)
      if (r.action.act_word(cc, round) != cc)
        throw InputError("embedding does not respect letter inverses");
  }
  // orbit of the base under the pulled-back action
  std::map<int, int> id;
  std::vector<int> orbit;
  std::deque<int> queue;
  auto intern = [&](int coset) {
    auto [it, fresh] = id.emplace(coset, static_cast<int>(orbit.size()));
    if (fresh) {
      orbit.push_back(coset);
      queue.push_back(coset);
    }
    return it->second;
  };
  intern(r.action.base());
  while (!queue.empty()) {
    int coset = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < static_cast<Letter>(sub.letter_count()); ++a)
      intern(r.action.act_word(coset, embedding.image(a)));
  }
  std::vector<std::vector<int>> pos(sub.rank(), std::vector<int>(orbit.size()));
  for (int k = 0; k < sub.rank(); ++k)
    for (size_t ci = 0; ci < orbit.size(); ++ci)
      pos[k][ci] =
          id[r.action.act_word(orbit[ci], embedding.image(Alphabet::positive(k)))];
  CosetAction action(subgroup_backend, static_cast<int>(orbit.size()),
                     id[r.action.base()], std::move(pos));
  std::set<int> accepted;
  for (size_t ci = 0; ci < orbit.size(); ++ci)
    if (r.accepted.contains(orbit[ci])) accepted.insert(static_cast<int>(ci));
  return RecognizableSubset{std::move(action), std::move(accepted)};
}

}  // namespace ratsub
