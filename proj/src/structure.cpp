#include "ratsub/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ratsub/wordproblem.hpp"

namespace ratsub {

namespace {

// basis backend: fresh free group on one letter per non-tree edge
Group basis_backend(const StallingsGraph& h) {
  int k = static_cast<int>(h.non_tree_edges().size());
  return Group(FreeGroup(k, Alphabet::fresh_names("x", k)));
}

}  // namespace

RationalSubset rewrite_into_subgroup(const RationalSubset& x,
                                     const StallingsGraph& h) {
  x.check();
  if (!x.group.is_free() || !(x.group.free() == h.group()))
    throw InputError("rewrite requires a subset of the subgroup's free group");

  Nfa reduced_members =
      nfa_intersect(benois_saturate(x), reduced_filter(x.group.alphabet()).to_nfa());
  if (auto w = inclusion_witness(reduced_members, h.loops_nfa()))
    throw ContainmentError(
        "subset is not contained in the subgroup (witness: " +
            format_word(x.group.alphabet(), *w) + ")",
        *w);

  // product with the subgroup graph, transducing edges into basis letters
  const int v_count = h.vertex_count();
  auto id = [&](int state, int vertex) { return state * v_count + vertex; };
  Group target = basis_backend(h);
  Nfa out{target.alphabet(), reduced_members.state_count * v_count, {}, {}, {}};
  for (const auto& t : reduced_members.transitions) {
    if (t.label == kEpsilon) {
      for (int v = 0; v < v_count; ++v)
        out.transitions.insert({id(t.from, v), kEpsilon, id(t.to, v)});
      continue;
    }
    Letter a = static_cast<Letter>(t.label);
    for (int v = 0; v < v_count; ++v) {
      int w = h.step(v, a);
      if (w < 0) continue;
      GraphEdge e = Alphabet::is_positive(a)
                        ? GraphEdge{v, Alphabet::base_index(a), w}
                        : GraphEdge{w, Alphabet::base_index(a), v};
      int nt = h.non_tree_index(e);
      int label = kEpsilon;
      if (nt >= 0) {
        Letter basis_letter = Alphabet::positive(nt);
        label = static_cast<int>(Alphabet::is_positive(a)
                                     ? basis_letter
                                     : Alphabet::inv(basis_letter));
      }
      out.transitions.insert({id(t.from, v), label, id(t.to, w)});
    }
  }
  for (int s : reduced_members.start_states)
    out.start_states.insert(id(s, h.base()));
  for (int s : reduced_members.accept_states)
    out.accept_states.insert(id(s, h.base()));
  return RationalSubset{std::move(target), std::move(out)};
}

std::optional<Word> rewrite_member_word(const StallingsGraph& h, const Word& w) {
  ReducedWord r = free_reduce(h.alphabet(), w);
  int v = h.base();
  Word out;
  for (Letter a : r.letters) {
    int nxt = h.step(v, a);
    if (nxt < 0) return std::nullopt;
    GraphEdge e = Alphabet::is_positive(a)
                      ? GraphEdge{v, Alphabet::base_index(a), nxt}
                      : GraphEdge{nxt, Alphabet::base_index(a), v};
    if (int nt = h.non_tree_index(e); nt >= 0) {
      Letter basis_letter = Alphabet::positive(nt);
      out.push_back(Alphabet::is_positive(a) ? basis_letter
                                             : Alphabet::inv(basis_letter));
    }
    v = nxt;
  }
  if (v != h.base()) return std::nullopt;
  return out;
}

Decomposition decompose(const RationalSubset& x, const StallingsGraph& h) {
  x.check();
  if (!x.group.is_free() || !(x.group.free() == h.group()))
    throw InputError("decompose requires a subset of the subgroup's free group");
  if (!h.complete())
    throw PreconditionError("decompose requires a finite index subgroup");

  Decomposition d{x.group, {}, h, basis_backend(h), {}, {}, {}, {}};
  for (const ReducedWord& b : h.basis()) d.basis_words.push_back(b.letters);
  RecognizableSubset sub = subgroup_subset(h);
  std::vector<ReducedWord> reps = h.transversal();
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    d.transversal.push_back(reps[i].letters);
    // X ∩ Hb_i, then shift by b_i^-1, then rewrite over the basis
    RecognizableSubset coset{sub.action, {i}};
    RationalSubset in_coset = intersect_recognizable(x, coset);
    RationalSubset shifted =
        translate(in_coset, inverse_word(reps[i].letters), Side::Right);
    d.rational_components.push_back(rewrite_into_subgroup(shifted, h));
  }
  return d;
}

Decomposition decompose(const RationalSubset& x, long long modulus) {
  x.check();
  if (!x.group.is_vc())
    throw InputError("modulus decomposition requires a virtually cyclic backend");
  if (modulus < 1) throw InputError("modulus must be >= 1");
  const VirtuallyCyclicGroup& v = x.group.vc();
  const int n = v.classes();

  // shortlex-minimal representatives of the m·n cosets of mZ
  std::map<std::pair<long long, int>, Word> reps;
  const long long want = modulus * n;
  for (int radius = 0; static_cast<long long>(reps.size()) < want; ++radius) {
    if (radius > 4 * modulus * n + 8)
      throw InconsistencyError("coset representatives not found within bound");
    for (const auto& entry : ball(x.group, radius)) {
      const VCElement& e = std::get<VCElement>(entry.element);
      reps.try_emplace({((e.z % modulus) + modulus) % modulus, e.klass},
                       entry.witness);
    }
  }
  std::vector<std::pair<std::pair<long long, int>, Word>> ordered(reps.begin(),
                                                                  reps.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return shortlex_less(a.second, b.second);
  });

  Decomposition d{x.group, {}, {}, {}, {}, {}, modulus, {}};
  for (const auto& [coset, rep] : ordered) {
    d.transversal.push_back(rep);
    RecognizableSubset target = from_modulus(x.group, modulus, {coset});
    RationalSubset in_coset = intersect_recognizable(x, target);
    RationalSubset shifted = translate(in_coset, inverse_word(rep), Side::Right);
    SemilinearZ line = t_line_image(shifted);
    if (!line.all_multiples_of(modulus))
      throw InconsistencyError("coset component escapes the subgroup mZ");
    d.semilinear_components.push_back(line.divided(modulus));
  }
  return d;
}

RationalSubset recompose(const Decomposition& d) {
  const Alphabet& alpha = d.group.alphabet();
  Nfa acc = Nfa::empty_language(alpha);
  if (d.subgroup_graph) {
    Homomorphism subst = Homomorphism::group_hom(
        d.component_backend->alphabet(), alpha, d.basis_words);
    for (size_t i = 0; i < d.rational_components.size(); ++i) {
      Nfa in_g = hom_image(subst, d.rational_components[i].nfa);
      Nfa with_rep = nfa_concat(in_g, Nfa::single_word(alpha, d.transversal[i]));
      acc = nfa_union(acc, with_rep);
    }
  } else if (d.modulus) {
    Alphabet u = Alphabet::fresh_names("u", 1);
    Word tm(static_cast<size_t>(*d.modulus), Alphabet::positive(0));
    Homomorphism subst = Homomorphism::group_hom(u, alpha, {tm});
    for (size_t i = 0; i < d.semilinear_components.size(); ++i) {
      Nfa in_sub = d.semilinear_components[i].to_nfa(u);
      Nfa in_g = hom_image(subst, in_sub);
      Nfa with_rep = nfa_concat(in_g, Nfa::single_word(alpha, d.transversal[i]));
      acc = nfa_union(acc, with_rep);
    }
  } else {
    throw InputError("decomposition carries no subgroup data");
  }
  return RationalSubset{d.group, std::move(acc)};
}

RationalSubset epi_transfer(const RationalSubset& witness, long long modulus) {
  witness.check();
  if (!witness.group.is_vc())
    throw InputError("epi transfer requires a virtually cyclic backend");
  if (!epi_check(witness))
    throw PreconditionError("witness image is not the whole group minus 1");
  std::set<std::pair<long long, int>> subgroup_cosets{{0, 1}};
  RecognizableSubset h = from_modulus(witness.group, modulus, subgroup_cosets);
  RationalSubset inside = intersect_recognizable(witness, h);
  SemilinearZ line = t_line_image(inside);
  if (!line.all_multiples_of(modulus))
    throw InconsistencyError("intersection escapes the subgroup mZ");
  SemilinearZ in_units = line.divided(modulus);
  // the result lives over the subgroup's own copy of Z; its generator t
  // represents t^m of the ambient group
  Group z_u(VirtuallyCyclicGroup::integers());
  return RationalSubset{z_u, in_units.to_nfa(z_u.alphabet())};
}

FlatnessReport flatness_forall(const Group& finite_g, const Group& subgroup_backend,
                               const Homomorphism& embedding,
                               const RecognizableSubset& x) {
  if (!finite_g.is_finite())
    throw InputError("this flatness form needs a finite ambient group");
  if (!(x.action.group() == subgroup_backend))
    throw InputError("subset does not live over the subgroup backend");
  if (!(embedding.source() == subgroup_backend.alphabet()) ||
      !(embedding.target() == finite_g.alphabet()))
    throw InputError("embedding alphabets do not match");
  if (!subgroup_backend.is_finite())
    throw InputError("subgroups of finite groups must use a finite backend");

  // collect the elements of x inside G through the embedding
  const FiniteGroup& f = finite_g.finite();
  std::set<int> elements;
  int radius = subgroup_backend.finite().order() + 1;
  for (const auto& entry : ball(subgroup_backend, radius)) {
    if (!x.contains_word(entry.witness)) continue;
    Word in_g = embedding.apply(entry.witness);
    elements.insert(std::get<FiniteElement>(finite_g.eval(in_g)).index);
  }
  // full Cayley action of G
  std::vector<std::vector<int>> pos(finite_g.alphabet().rank(),
                                    std::vector<int>(f.order()));
  for (int k = 0; k < finite_g.alphabet().rank(); ++k)
    for (int e = 0; e < f.order(); ++e)
      pos[k][e] = f.multiply(e, f.letter_image(Alphabet::positive(k)));
  CosetAction cayley(finite_g, f.order(), f.identity(), std::move(pos));
  FlatnessReport rep;
  rep.status = FlatnessStatus::Transferable;
  rep.transferred = RecognizableSubset{std::move(cayley), std::move(elements)};
  rep.detail = "finite ambient group: full Cayley action";
  return rep;
}

FlatnessReport flatness_forall(const RecognizableSubset& x, const StallingsGraph& h,
                               int nerode_k, int nerode_radius) {
  const int k = static_cast<int>(h.non_tree_edges().size());
  if (x.action.group().alphabet().rank() != k)
    throw InputError("subset does not live over the subgroup's basis backend");

  FlatnessReport rep;
  if (h.complete()) {
    // track (graph vertex, subgroup coset); crossings of non-tree edges act
    const int hv = h.vertex_count();
    const int xc = x.action.coset_count();
    auto id = [&](int v, int c) { return v * xc + c; };
    std::vector<std::vector<int>> pos(h.group().rank(),
                                      std::vector<int>(hv * xc));
    for (int l = 0; l < h.group().rank(); ++l)
      for (int v = 0; v < hv; ++v) {
        int w = h.out(v, l);
        GraphEdge e{v, l, w};
        int nt = h.non_tree_index(e);
        for (int c = 0; c < xc; ++c) {
          int c2 = nt >= 0 ? x.action.act(c, Alphabet::positive(nt)) : c;
          pos[l][id(v, c)] = id(w, c2);
        }
      }
    CosetAction action(Group(h.group()), hv * xc, id(h.base(), x.action.base()),
                       std::move(pos));
    std::set<int> accepted;
    for (int c : x.accepted) accepted.insert(id(h.base(), c));
    rep.status = FlatnessStatus::Transferable;
    rep.transferred = RecognizableSubset{std::move(action), std::move(accepted)};
    rep.detail = "finite index subgroup: transferred through the subgroup graph";
    return rep;
  }

  // infinite index: search for a Nerode certificate that the G-side preimage
  // is not regular
  MembershipOracle oracle = [&](const Word& w) {
    auto basis_word = rewrite_member_word(h, w);
    return basis_word.has_value() && x.contains_word(*basis_word);
  };
  rep.requested_k = nerode_k;
  NerodeResult cert =
      nerode_witnesses(oracle, h.alphabet(), nerode_k, nerode_radius);
  if (cert.success) {
    rep.status = FlatnessStatus::NotTransferableCertified;
    rep.certificate = std::move(cert);
    rep.detail = "Nerode witnesses certify the preimage needs >= " +
                 std::to_string(nerode_k) + " states";
  } else {
    rep.status = FlatnessStatus::Inconclusive;
    rep.detail = "witness search exhausted the radius; not a disproof";
  }
  return rep;
}

FlatnessReport flatness_forall_vc(const Group& vc_g, long long modulus,
                                  const RecognizableSubset& x) {
  if (!vc_g.is_vc())
    throw InputError("this flatness form needs a virtually cyclic ambient group");
  if (!x.action.group().is_integers())
    throw InputError("subset must live over the rank-1 subgroup backend");
  // x's action on Z is cyclic on the orbit of the base: extract its modulus
  const CosetAction& a = x.action;
  Letter t = Alphabet::positive(0);
  std::vector<int> orbit;
  std::map<int, long long> position;
  int c = a.base();
  long long step = 0;
  while (!position.contains(c)) {
    position[c] = step++;
    orbit.push_back(c);
    c = a.act(c, t);
  }
  long long k = static_cast<long long>(orbit.size());
  // subset = {v : v mod k accepted} in u units; in t units that is the union
  // of the residues m·p modulo m·k
  std::set<std::pair<long long, int>> accepted;
  for (int coset : orbit)
    if (x.accepted.contains(coset))
      accepted.insert({modulus * position[coset], 1});
  FlatnessReport rep;
  rep.status = FlatnessStatus::Transferable;
  rep.transferred = from_modulus(vc_g, modulus * k, accepted);
  rep.detail = "subgroup mZ: modulus " + std::to_string(modulus * k) +
               " action on the ambient group";
  return rep;
}

}  // namespace ratsub
