#include "ratsub/wordproblem.hpp"

#include <algorithm>

#include "ratsub/errors.hpp"
#include "ratsub/structure.hpp"

namespace ratsub {

Dfa wp_dfa(const Group& finite_g) {
  const FiniteGroup& f = finite_g.finite();
  const Alphabet& alpha = finite_g.alphabet();
  Dfa out{alpha, f.order(), {}, f.identity(), {f.identity()}};
  out.delta.assign(f.order(), std::vector<int>(alpha.letter_count()));
  for (int e = 0; e < f.order(); ++e)
    for (Letter a = 0; a < static_cast<Letter>(alpha.letter_count()); ++a)
      out.delta[e][a] = f.multiply(e, f.letter_image(a));
  return out;
}

StackAcceptor wp_stack_acceptor(const Group& free_g) {
  return StackAcceptor{free_g.free().alphabet()};
}

namespace {

enum Track { kZero = 0, kPos = 1, kNeg = 2 };

struct OcaBuilder {
  OneCounterAutomaton m;
  int core(int klass, int track) const { return (klass - 1) * 3 + track; }
  int fresh() { return m.state_count++; }
  void add(int from, int label, Guard g, int delta, int to) {
    m.transitions.push_back({from, label, g, delta, to});
  }

  // Applies `units` steps of dir (+1/-1) to the abstract exponent, starting
  // in `track`, consuming `label` on the first step, ending at the core
  // state of target_class. Branches at sign changes via zero probes.
  void chain(int from, int label, int track, int units, int dir,
             int target_class) {
    if (units == 0) {
      Guard g = track == kZero ? Guard::Zero : Guard::Nonzero;
      add(from, label, g, 0, core(target_class, track));
      return;
    }
    bool last = units == 1;
    auto next_state = [&](int t) {
      return last ? core(target_class, t) : fresh();
    };
    int grows = dir > 0 ? kPos : kNeg;    // track that |z| grows away from 0
    int shrinks = dir > 0 ? kNeg : kPos;  // track that |z| shrinks toward 0
    if (track == kZero) {
      int to = next_state(grows);
      add(from, label, Guard::Zero, +1, to);
      if (!last) chain(to, kEpsilon, grows, units - 1, dir, target_class);
    } else if (track == grows) {
      int to = next_state(grows);
      add(from, label, Guard::Nonzero, +1, to);
      if (!last) chain(to, kEpsilon, grows, units - 1, dir, target_class);
    } else {
      // moving toward zero: decrement, then test
      int probe = fresh();
      add(from, label, Guard::Nonzero, -1, probe);
      int to_zero = next_state(kZero);
      add(probe, kEpsilon, Guard::Zero, 0, to_zero);
      if (!last) chain(to_zero, kEpsilon, kZero, units - 1, dir, target_class);
      int to_same = next_state(shrinks);
      add(probe, kEpsilon, Guard::Nonzero, 0, to_same);
      if (!last) chain(to_same, kEpsilon, shrinks, units - 1, dir, target_class);
    }
  }
};

}  // namespace

OneCounterAutomaton wp_oca(const Group& vc_g) {
  const VirtuallyCyclicGroup& v = vc_g.vc();
  const Alphabet& alpha = vc_g.alphabet();
  OcaBuilder b;
  b.m.alphabet = alpha;
  b.m.state_count = 3 * v.classes();
  b.m.start = b.core(1, kZero);
  b.m.accept_states = {b.core(1, kZero)};
  for (int i = 1; i <= v.classes(); ++i)
    for (int track : {kZero, kPos, kNeg})
      for (Letter a = 0; a < static_cast<Letter>(alpha.letter_count()); ++a) {
        VCElement le = v.letter_element(a);
        long long delta = v.phi(i) * le.z + v.cocycle(i, le.klass);
        int target = v.tau(i, le.klass);
        int dir = delta >= 0 ? +1 : -1;
        b.chain(b.core(i, track), static_cast<int>(a), track,
                static_cast<int>(std::llabs(delta)), dir, target);
      }
  b.m.check();
  return b.m;
}

bool epi_check(const RationalSubset& x) {
  x.check();
  switch (x.group.kind()) {
    case Group::Kind::Finite: {
      const FiniteGroup& f = x.group.finite();
      std::set<int> want;
      for (int e = 0; e < f.order(); ++e)
        if (e != f.identity()) want.insert(e);
      return image_finite(x) == want;
    }
    case Group::Kind::VirtuallyCyclic: {
      if (x.group.is_integers())
        return z_image(x).same_set(SemilinearZ::nonzero());
      Decomposition d = decompose(x, 1);
      for (size_t j = 0; j < d.transversal.size(); ++j) {
        VCElement bj = std::get<VCElement>(x.group.eval(d.transversal[j]));
        const SemilinearZ& want = bj.klass == 1
                                      ? SemilinearZ::nonzero()
                                      : SemilinearZ::whole_line();
        if (!d.semilinear_components[j].same_set(want)) return false;
      }
      return true;
    }
    default:
      throw InputError("epi check supports finite and virtually cyclic backends");
  }
}

bool ConjugacyClassResult::contains(const Group& vc_g, const VCElement& e) const {
  if (finite_class)
    return std::ranges::binary_search(*finite_class, e);
  // spell t^z b_klass and run it through the modulus-2 action
  Word w;
  Letter t = Alphabet::positive(0);
  for (long long k = 0; k < std::llabs(e.z); ++k)
    w.push_back(e.z > 0 ? t : Alphabet::inv(t));
  if (e.klass != 1) w.push_back(Alphabet::positive(e.klass - 1));
  (void)vc_g;
  return coset_class->contains_word(w);
}

ConjugacyClassResult conjugacy_class(const Group& vc_g, const VCElement& g) {
  const VirtuallyCyclicGroup& v = vc_g.vc();
  if (g.klass < 1 || g.klass > v.classes())
    throw InputError("element class out of range");
  auto conj = [&](const VCElement& by) {
    return v.multiply(v.multiply(v.inverse(by), g), by);
  };
  ConjugacyClassResult out;
  if (v.phi(g.klass) == 1) {
    // conjugation by h'b_j does not depend on h'
    std::vector<VCElement> cls;
    for (int j = 1; j <= v.classes(); ++j) cls.push_back(conj(VCElement{0, j}));
    std::ranges::sort(cls);
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    if (!std::ranges::binary_search(cls, g))
      throw InconsistencyError("conjugacy class misses its own element");
    out.finite_class = std::move(cls);
    return out;
  }
  // inversion case: per transversal class the conjugates form a coset of 2Z,
  // probed with the two conjugators (0,j) and (1,j)
  std::set<std::pair<long long, int>> accepted;
  for (int j = 1; j <= v.classes(); ++j) {
    VCElement c0 = conj(VCElement{0, j});
    VCElement c1 = conj(VCElement{1, j});
    if (c0.klass != c1.klass || std::llabs(c0.z - c1.z) != 2)
      throw InconsistencyError("conjugacy probes disagree with the 2Z pattern");
    accepted.insert({((c0.z % 2) + 2) % 2, c0.klass});
  }
  out.coset_class = from_modulus(vc_g, 2, accepted);
  if (!out.contains(vc_g, g))
    throw InconsistencyError("conjugacy class misses its own element");
  return out;
}

}  // namespace ratsub
