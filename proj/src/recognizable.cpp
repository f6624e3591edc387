#include "ratsub/recognizable.hpp"

#include <deque>
#include <map>

#include "ratsub/errors.hpp"

namespace ratsub {

namespace {

std::vector<int> invert_permutation(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

CosetAction::CosetAction(Group backend, int coset_count, int base,
                         std::vector<std::vector<int>> positive_action)
    : group_(std::move(backend)), count_(coset_count), base_(base),
      pos_(std::move(positive_action)) {
  if (count_ < 1) throw InputError("coset action needs at least one coset");
  if (base_ < 0 || base_ >= count_) throw InputError("base coset out of range");
  if (static_cast<int>(pos_.size()) != group_.alphabet().rank())
    throw InputError("coset action needs one permutation per positive letter");
  for (const auto& perm : pos_) {
    if (static_cast<int>(perm.size()) != count_)
      throw InputError("coset action row has wrong length");
    std::vector<bool> hit(count_, false);
    for (int v : perm) {
      if (v < 0 || v >= count_) throw InputError("coset action image out of range");
      if (hit[v]) throw InputError("letter action is not a permutation");
      hit[v] = true;
    }
  }
  neg_.reserve(pos_.size());
  for (const auto& perm : pos_) neg_.push_back(invert_permutation(perm));

  // the action must factor through the group
  if (group_.is_finite()) {
    // welldefinedness over the whole Cayley graph
    const FiniteGroup& f = group_.finite();
    std::map<int, std::vector<int>> perm_of;
    std::vector<int> idperm(count_);
    for (int c = 0; c < count_; ++c) idperm[c] = c;
    perm_of[f.identity()] = idperm;
    std::deque<int> queue{f.identity()};
    while (!queue.empty()) {
      int g = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < static_cast<Letter>(group_.alphabet().letter_count());
           ++a) {
        int g2 = f.multiply(g, f.letter_image(a));
        std::vector<int> composed(count_);
        for (int c = 0; c < count_; ++c) composed[c] = act(perm_of[g][c], a);
        auto [it, fresh] = perm_of.emplace(g2, composed);
        if (fresh)
          queue.push_back(g2);
        else if (it->second != composed)
          throw InputError("coset action does not factor through the group");
      }
    }
  } else if (group_.is_vc()) {
    const VirtuallyCyclicGroup& v = group_.vc();
    const Alphabet& alpha = group_.alphabet();
    auto word_of_t_power = [&](long long e) {
      Word w;
      Letter t = Alphabet::positive(0);
      for (long long i = 0; i < std::llabs(e); ++i)
        w.push_back(e > 0 ? t : Alphabet::inv(t));
      return w;
    };
    auto class_word = [&](int i) {
      return i == 1 ? Word{} : Word{Alphabet::positive(i - 1)};
    };
    auto same = [&](const Word& lhs, const Word& rhs) {
      for (int c = 0; c < count_; ++c)
        if (act_word(c, lhs) != act_word(c, rhs)) return false;
      return true;
    };
    for (int i = 2; i <= v.classes(); ++i) {
      // b_i t b_i^-1 = t^phi(i)
      Word lhs = class_word(i);
      lhs.push_back(Alphabet::positive(0));
      Word back = inverse_word(class_word(i));
      lhs.insert(lhs.end(), back.begin(), back.end());
      if (!same(lhs, word_of_t_power(v.phi(i))))
        throw InputError("coset action does not respect the t-conjugation");
    }
    for (int i = 1; i <= v.classes(); ++i)
      for (int j = 1; j <= v.classes(); ++j) {
        Word lhs = concat_words(class_word(i), class_word(j));
        Word rhs = concat_words(word_of_t_power(v.cocycle(i, j)),
                                class_word(v.tau(i, j)));
        if (!same(lhs, rhs))
          throw InputError("coset action does not respect the class products");
      }
    (void)alpha;
  }
}

int CosetAction::act(int coset, Letter a) const {
  if (!group_.alphabet().contains(a))
    throw InputError("letter not in the backend alphabet");
  int l = Alphabet::base_index(a);
  return Alphabet::is_positive(a) ? pos_[l][coset] : neg_[l][coset];
}

int CosetAction::act_word(int coset, const Word& w) const {
  for (Letter a : w) coset = act(coset, a);
  return coset;
}

bool CosetAction::operator==(const CosetAction& o) const {
  return group_ == o.group_ && count_ == o.count_ && base_ == o.base_ &&
         pos_ == o.pos_;
}

RecognizableSubset from_modulus(
    const Group& vc_backend, long long m,
    const std::set<std::pair<long long, int>>& accepted) {
  if (!vc_backend.is_vc())
    throw InputError("from_modulus needs a virtually cyclic backend");
  if (m < 1) throw InputError("modulus must be >= 1");
  const VirtuallyCyclicGroup& v = vc_backend.vc();
  const int n = v.classes();
  const int count = static_cast<int>(m) * n;
  auto idx = [&](long long z, int i) {
    return static_cast<int>((i - 1) * m + ((z % m + m) % m));
  };
  std::vector<std::vector<int>> pos(vc_backend.alphabet().rank(),
                                    std::vector<int>(count));
  for (int k = 0; k < vc_backend.alphabet().rank(); ++k) {
    VCElement le = v.letter_element(Alphabet::positive(k));
    for (int i = 1; i <= n; ++i)
      for (long long z = 0; z < m; ++z) {
        VCElement img = v.multiply(VCElement{z, i}, le);
        pos[k][idx(z, i)] = idx(img.z, img.klass);
      }
  }
  CosetAction action(vc_backend, count, idx(0, 1), std::move(pos));
  std::set<int> acc;
  for (const auto& [z, i] : accepted) {
    if (i < 1 || i > n) throw InputError("accepted class index out of range");
    acc.insert(idx(z, i));
  }
  return RecognizableSubset{std::move(action), std::move(acc)};
}

CosetAction coset_action(const StallingsGraph& g) {
  if (!g.complete())
    throw PreconditionError("coset action requires a finite index subgroup");
  std::vector<std::vector<int>> pos(g.group().rank(),
                                    std::vector<int>(g.vertex_count()));
  for (int l = 0; l < g.group().rank(); ++l)
    for (int v = 0; v < g.vertex_count(); ++v) pos[l][v] = g.out(v, l);
  return CosetAction(Group(g.group()), g.vertex_count(), g.base(), std::move(pos));
}

RecognizableSubset subgroup_subset(const StallingsGraph& g) {
  CosetAction a = coset_action(g);
  int base = a.base();
  return RecognizableSubset{std::move(a), {base}};
}

RecognizableSubset whole_group_subset(const Group& g) {
  CosetAction a(g, 1, 0, std::vector<std::vector<int>>(g.alphabet().rank(),
                                                       std::vector<int>{0}));
  return RecognizableSubset{std::move(a), {0}};
}

RecognizableSubset empty_recognizable(const Group& g) {
  CosetAction a(g, 1, 0, std::vector<std::vector<int>>(g.alphabet().rank(),
                                                       std::vector<int>{0}));
  return RecognizableSubset{std::move(a), {}};
}

namespace {

// product action restricted to the orbit of the base pair
struct ProductAction {
  CosetAction action;
  std::vector<std::pair<int, int>> pair_of;  // coset -> original pair
};

ProductAction product_orbit(const CosetAction& a, const CosetAction& b) {
  if (!(a.group() == b.group()))
    throw InputError("recognizable subsets live over different backends");
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> pairs;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](std::pair<int, int> p) {
    auto [it, fresh] = id.emplace(p, static_cast<int>(pairs.size()));
    if (fresh) {
      pairs.push_back(p);
      queue.push_back(p);
    }
    return it->second;
  };
  intern({a.base(), b.base()});
  const Alphabet& alpha = a.group().alphabet();
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < static_cast<Letter>(alpha.letter_count()); ++l)
      intern({a.act(p.first, l), b.act(p.second, l)});
  }
  std::vector<std::vector<int>> pos(alpha.rank(),
                                    std::vector<int>(pairs.size()));
  for (int k = 0; k < alpha.rank(); ++k)
    for (size_t c = 0; c < pairs.size(); ++c)
      pos[k][c] = id[{a.act(pairs[c].first, Alphabet::positive(k)),
                      b.act(pairs[c].second, Alphabet::positive(k))}];
  CosetAction action(a.group(), static_cast<int>(pairs.size()),
                     id[{a.base(), b.base()}], std::move(pos));
  return ProductAction{std::move(action), std::move(pairs)};
}

}  // namespace

RecognizableSubset rec_union(const RecognizableSubset& r,
                             const RecognizableSubset& s) {
  ProductAction p = product_orbit(r.action, s.action);
  std::set<int> acc;
  for (size_t c = 0; c < p.pair_of.size(); ++c)
    if (r.accepted.contains(p.pair_of[c].first) ||
        s.accepted.contains(p.pair_of[c].second))
      acc.insert(static_cast<int>(c));
  return RecognizableSubset{std::move(p.action), std::move(acc)};
}

RecognizableSubset rec_intersect(const RecognizableSubset& r,
                                 const RecognizableSubset& s) {
  ProductAction p = product_orbit(r.action, s.action);
  std::set<int> acc;
  for (size_t c = 0; c < p.pair_of.size(); ++c)
    if (r.accepted.contains(p.pair_of[c].first) &&
        s.accepted.contains(p.pair_of[c].second))
      acc.insert(static_cast<int>(c));
  return RecognizableSubset{std::move(p.action), std::move(acc)};
}

RecognizableSubset rec_complement(const RecognizableSubset& r) {
  std::set<int> acc;
  for (int c = 0; c < r.action.coset_count(); ++c)
    if (!r.accepted.contains(c)) acc.insert(c);
  return RecognizableSubset{r.action, std::move(acc)};
}

Dfa preimage_dfa(const RecognizableSubset& r) {
  const Alphabet& alpha = r.action.group().alphabet();
  Dfa out{alpha, r.action.coset_count(), {}, r.action.base(), r.accepted};
  out.delta.assign(out.state_count, std::vector<int>(alpha.letter_count()));
  for (int c = 0; c < out.state_count; ++c)
    for (Letter a = 0; a < static_cast<Letter>(alpha.letter_count()); ++a)
      out.delta[c][a] = r.action.act(c, a);
  return out;
}

Dfa coset_language(const RecognizableSubset& r, int target_coset) {
  if (target_coset < 0 || target_coset >= r.action.coset_count())
    throw InputError("target coset out of range");
  Dfa out = preimage_dfa(r);
  out.accept_states = {target_coset};
  return out;
}

}  // namespace ratsub
