#include <doctest.h>

#include "ratsub/errors.hpp"
#include "ratsub/machines.hpp"
#include "ratsub/nerode.hpp"
#include "ratsub/oracle.hpp"
#include "ratsub/rational.hpp"
#include "ratsub/structure.hpp"
#include "ratsub/wordproblem.hpp"
#include "support.hpp"

using namespace ratsub;
using ratsub::testing::Rng;

namespace {

Nfa loop_star(const Alphabet& a, const Word& w) {
  Nfa out{a, std::max<int>(1, static_cast<int>(w.size())), {}, {0}, {0}};
  for (size_t i = 0; i < w.size(); ++i)
    out.transitions.insert({static_cast<int>(i), static_cast<int>(w[i]),
                            static_cast<int>((i + 1) % w.size())});
  return out;
}

// Z presented with a redundant class: b² = t, b t b^-1 = t; the nonzero
// cocycle makes the word problem acceptor run epsilon micro-steps
VirtuallyCyclicGroup z_with_square_root() {
  return VirtuallyCyclicGroup(2, {1, 1}, {{0, 0}, {0, 1}}, {{1, 2}, {2, 1}});
}

// Z x Z/2 with b² = t²: the cocycle contributes two counter steps per letter
VirtuallyCyclicGroup z_cross_c2() {
  return VirtuallyCyclicGroup(2, {1, 1}, {{0, 0}, {0, 2}}, {{1, 2}, {2, 1}});
}

// D_inf x Z/2: four transversal classes over a Klein quotient, classes 2 and
// 4 inverting t
VirtuallyCyclicGroup dinf_cross_c2() {
  std::vector<std::vector<std::int64_t>> c(4, std::vector<std::int64_t>(4, 0));
  std::vector<std::vector<int>> tau = {
      {1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}};
  return VirtuallyCyclicGroup(4, {1, -1, 1, -1}, c, tau);
}

}  // namespace

TEST_CASE("word problem acceptor for finite groups") {
  Group z3(FiniteGroup::cyclic(3));
  Dfa d = wp_dfa(z3);
  CHECK(d.state_count == 3);
  CHECK(d.accepts(parse_word(z3.alphabet(), "g g g")));
  CHECK(!d.accepts(parse_word(z3.alphabet(), "g")));

  Group trivial(FiniteGroup::cyclic(1));
  Dfa t = wp_dfa(trivial);
  CHECK(t.state_count == 1);
  CHECK(t.accepts(parse_word(trivial.alphabet(), "g g")));

  Group s3(FiniteGroup::symmetric3());
  Dfa ds3 = wp_dfa(s3);
  CHECK(ds3.state_count == 6);
  // commutator composed with its inverse word
  Word comm = parse_word(s3.alphabet(), "s r s^-1 r^-1");
  Word test = concat_words(comm, inverse_word(comm));
  CHECK(ds3.accepts(test));
  Rng rng(20240701);
  for (int i = 0; i < 1000; ++i) {
    Word w = ratsub::testing::random_word(rng, s3.alphabet(), 12);
    CHECK(ds3.accepts(w) == s3.is_identity(s3.eval(w)));
  }
}

TEST_CASE("word problem acceptor for free groups") {
  Group f2(FreeGroup(2));
  StackAcceptor s = wp_stack_acceptor(f2);
  CHECK(stack_run(s, parse_word(f2.alphabet(), "a b b^-1 a^-1")));
  CHECK(!stack_run(s, parse_word(f2.alphabet(), "a b a^-1 b^-1")));
  Rng rng(20240702);
  for (int i = 0; i < 3000; ++i) {
    Word w = ratsub::testing::random_word(rng, f2.alphabet(), 20);
    CHECK(stack_run(s, w) == free_reduce(f2.alphabet(), w).empty());
  }
}

TEST_CASE("word problem acceptor for virtually cyclic groups") {
  Group z(VirtuallyCyclicGroup::integers());
  OneCounterAutomaton mz = wp_oca(z);
  CHECK(oca_run(mz, parse_word(z.alphabet(), "t t t^-1 t^-1")));
  CHECK(!oca_run(mz, parse_word(z.alphabet(), "t t t^-1")));

  Group dinf(VirtuallyCyclicGroup::infinite_dihedral());
  OneCounterAutomaton md = wp_oca(dinf);
  CHECK(oca_run(md, parse_word(dinf.alphabet(), "t t b2 t t b2")));
  CHECK(!oca_run(md, parse_word(dinf.alphabet(), "t b2")));
  CHECK(oca_run(md, parse_word(dinf.alphabet(), "b2 b2")));

  Group sq(z_with_square_root());
  OneCounterAutomaton ms = wp_oca(sq);
  // b2 b2 t^-1 = 1 in this presentation of Z
  CHECK(oca_run(ms, parse_word(sq.alphabet(), "b2 b2 t^-1")));
  CHECK(!oca_run(ms, parse_word(sq.alphabet(), "b2 b2")));
  CHECK(!oca_run(ms, parse_word(sq.alphabet(), "b2")));

  // two-step counter chains, including sign crossings
  Group zc2(z_cross_c2());
  OneCounterAutomaton mc = wp_oca(zc2);
  CHECK(oca_run(mc, parse_word(zc2.alphabet(), "b2 b2 t^-1 t^-1")));
  CHECK(oca_run(mc, parse_word(zc2.alphabet(), "t^-1 b2 t^-1 b2")));
  CHECK(!oca_run(mc, parse_word(zc2.alphabet(), "b2 b2 t^-1")));

  Rng rng(20240703);
  for (const Group& g : {z, dinf, sq, zc2}) {
    OneCounterAutomaton m = wp_oca(g);
    for (int i = 0; i < 1500; ++i) {
      Word w = ratsub::testing::random_word(rng, g.alphabet(), 14);
      CHECK(oca_run(m, w) == g.is_identity(g.eval(w)));
    }
  }
}

TEST_CASE("wp acceptor state counts match Nerode classes for finite groups") {
  Group z3(FiniteGroup::cyclic(3));
  CHECK(wp_dfa(z3).state_count == 3);
  MembershipOracle wp = [&](const Word& w) { return z3.is_identity(z3.eval(w)); };
  CHECK(nerode_witnesses(wp, z3.alphabet(), 3, 8).success);
  CHECK(!nerode_witnesses(wp, z3.alphabet(), 4, 8).success);
}

TEST_CASE("epi checks across backends") {
  Group z(VirtuallyCyclicGroup::integers());
  const Alphabet& a = z.alphabet();
  Nfa pos = nfa_concat(Nfa::single_word(a, parse_word(a, "t")),
                       loop_star(a, parse_word(a, "t")));
  Nfa neg = nfa_concat(Nfa::single_word(a, parse_word(a, "t^-1")),
                       loop_star(a, parse_word(a, "t^-1")));
  CHECK(epi_check(RationalSubset{z, nfa_union(pos, neg)}));
  CHECK(!epi_check(RationalSubset{z, pos}));

  Group z3(FiniteGroup::cyclic(3));
  Nfa two = nfa_union(
      Nfa::single_word(z3.alphabet(), parse_word(z3.alphabet(), "g")),
      Nfa::single_word(z3.alphabet(), parse_word(z3.alphabet(), "g g")));
  CHECK(epi_check(RationalSubset{z3, two}));
  Nfa with_id = nfa_union(two, Nfa::single_word(z3.alphabet(), {}));
  CHECK(!epi_check(RationalSubset{z3, with_id}));

  Group f2(FreeGroup(2));
  CHECK_THROWS_AS(epi_check(RationalSubset{f2, Nfa::empty_language(f2.alphabet())}),
                  InputError);
}

TEST_CASE("conjugacy classes in the infinite dihedral group") {
  Group d(VirtuallyCyclicGroup::infinite_dihedral());

  ConjugacyClassResult t_class = conjugacy_class(d, VCElement{1, 1});
  REQUIRE(t_class.is_finite());
  CHECK(*t_class.finite_class ==
        std::vector<VCElement>{VCElement{-1, 1}, VCElement{1, 1}});

  ConjugacyClassResult refl = conjugacy_class(d, VCElement{0, 2});
  REQUIRE(!refl.is_finite());
  for (long long z = -6; z <= 6; ++z) {
    CHECK(refl.contains(d, VCElement{2 * z, 2}));
    CHECK(!refl.contains(d, VCElement{2 * z + 1, 2}));
    CHECK(!refl.contains(d, VCElement{z, 1}));
  }

  ConjugacyClassResult id_class = conjugacy_class(d, VCElement{0, 1});
  REQUIRE(id_class.is_finite());
  CHECK(*id_class.finite_class == std::vector<VCElement>{VCElement{0, 1}});
}

TEST_CASE("conjugacy classes against the brute-force oracle") {
  Group d(VirtuallyCyclicGroup::infinite_dihedral());
  Rng rng(20240704);
  std::uniform_int_distribution<long long> zs(-6, 6);
  std::uniform_int_distribution<int> ks(1, 2);
  for (int trial = 0; trial < 30; ++trial) {
    VCElement g{zs(rng), ks(rng)};
    ConjugacyClassResult cls = conjugacy_class(d, g);
    CHECK(cls.contains(d, g));

    // everything brute conjugation reaches lies in the class
    for (const Element& e : brute_conjugacy(d, Element{g}, 8))
      CHECK(cls.contains(d, std::get<VCElement>(e)));

    // a window of the class is reached by slightly larger conjugators
    auto big = brute_conjugacy(d, Element{g}, 10);
    if (cls.is_finite()) {
      for (const VCElement& e : *cls.finite_class)
        CHECK(big.contains(Element{e}));
    } else {
      for (long long z = -8; z <= 8; ++z)
        for (int i = 1; i <= 2; ++i) {
          VCElement e{z, i};
          if (cls.contains(d, e) && std::llabs(e.z) <= 8)
            CHECK(big.contains(Element{e}));
        }
    }

    // conjugation-closure under all generators
    auto conj_by_letter = [&](const VCElement& e, Letter x) {
      VCElement lx = d.vc().letter_element(x);
      return d.vc().multiply(d.vc().multiply(d.vc().inverse(lx), e), lx);
    };
    std::vector<VCElement> reps;
    if (cls.is_finite()) {
      reps = *cls.finite_class;
    } else {
      for (long long z = -6; z <= 6; ++z)
        for (int i = 1; i <= 2; ++i)
          if (cls.contains(d, VCElement{z, i})) reps.push_back({z, i});
    }
    for (const VCElement& e : reps)
      for (Letter x = 0; x < static_cast<Letter>(d.alphabet().letter_count()); ++x)
        CHECK(cls.contains(d, conj_by_letter(e, x)));
  }
}

TEST_CASE("conjugacy classes in a shifted copy of Z stay finite") {
  Group sq(z_with_square_root());
  // abelian group: every class is the singleton of its element
  ConjugacyClassResult c = conjugacy_class(sq, VCElement{3, 2});
  REQUIRE(c.is_finite());
  CHECK(*c.finite_class == std::vector<VCElement>{VCElement{3, 2}});
}

TEST_CASE("a four-class virtually cyclic group") {
  Group g(dinf_cross_c2());
  CHECK(g.vc().classes() == 4);
  CHECK(g.alphabet().rank() == 4);  // t, b2, b3, b4

  // word problem acceptor against evaluation
  Rng rng(20240705);
  OneCounterAutomaton m = wp_oca(g);
  for (int i = 0; i < 1500; ++i) {
    Word w = ratsub::testing::random_word(rng, g.alphabet(), 12);
    CHECK(oca_run(m, w) == g.is_identity(g.eval(w)));
  }

  // conjugacy classes across all four classes, with the brute sandwich
  std::uniform_int_distribution<long long> zs(-5, 5);
  std::uniform_int_distribution<int> ks(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    VCElement e{zs(rng), ks(rng)};
    ConjugacyClassResult cls = conjugacy_class(g, e);
    CHECK(cls.contains(g, e));
    for (const Element& c : brute_conjugacy(g, Element{e}, 6))
      CHECK(cls.contains(g, std::get<VCElement>(c)));
    // classes with phi = +1 come out finite, the others as 2Z-cosets
    CHECK(cls.is_finite() == (g.vc().phi(e.klass) == 1));
  }

  // modulus subsets and the decomposition round trip on a ball
  RecognizableSubset r = from_modulus(g, 2, {{0, 2}, {1, 3}});
  for (const auto& entry : ball(g, 4)) {
    const VCElement& e = std::get<VCElement>(entry.element);
    bool expect = (e.klass == 2 && ((e.z % 2) + 2) % 2 == 0) ||
                  (e.klass == 3 && ((e.z % 2) + 2) % 2 == 1);
    CHECK(r.contains_word(entry.witness) == expect);
  }
  Nfa n = ratsub::testing::random_nfa(rng, g.alphabet(), 3, 0.3, 0.05);
  RationalSubset x{g, n};
  RationalSubset back = recompose(decompose(x, 2));
  for (const auto& entry : ball(g, 4))
    CHECK(rat_member(x, entry.witness) == rat_member(back, entry.witness));
}
