#include "ratsub/group.hpp"

#include <deque>
#include <map>
#include <set>

#include "ratsub/errors.hpp"

namespace ratsub {

FreeGroup::FreeGroup(int rank) : FreeGroup(rank, Alphabet::free_names(rank)) {}

FreeGroup::FreeGroup(int rank, Alphabet alphabet)
    : rank_(rank), alpha_(std::move(alphabet)) {
  if (rank < 0) throw InputError("free group rank must be nonnegative");
  if (alpha_.rank() != rank)
    throw InputError("free group alphabet size does not match rank");
}

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, int identity,
                         std::vector<std::pair<std::string, int>> generators)
    : table_(std::move(table)), identity_(identity) {
  const int n = static_cast<int>(table_.size());
  if (n <= 0) throw InputError("finite group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw InputError("finite group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw InputError("finite group table entry out of range");
  }
  if (identity_ < 0 || identity_ >= n)
    throw InputError("finite group identity index out of range");
  for (int x = 0; x < n; ++x)
    if (table_[identity_][x] != x || table_[x][identity_] != x)
      throw InputError("finite group identity law fails");
  inverse_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (table_[x][y] == identity_ && table_[y][x] == identity_) {
        inverse_[x] = y;
        break;
      }
    if (inverse_[x] < 0) throw InputError("finite group element without inverse");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
          throw InputError("finite group table is not associative");

  if (generators.empty()) throw InputError("finite group needs at least one generator");
  std::vector<std::string> names;
  for (auto& [name, index] : generators) {
    if (index < 0 || index >= n)
      throw InputError("generator element index out of range: " + name);
    names.push_back(name);
    positive_image_.push_back(index);
  }
  alpha_ = Alphabet(std::move(names));

  // closure under products must reach the whole group
  std::set<int> reached{identity_};
  std::deque<int> queue{identity_};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int gi : positive_image_) {
      for (int y : {table_[x][gi], table_[x][inverse_[gi]]}) {
        if (reached.insert(y).second) queue.push_back(y);
      }
    }
  }
  if (static_cast<int>(reached.size()) != n)
    throw InputError("generators do not generate the whole finite group");
}

int FiniteGroup::letter_image(Letter a) const {
  if (!alpha_.contains(a)) throw InputError("letter not in finite group alphabet");
  int g = positive_image_[Alphabet::base_index(a)];
  return Alphabet::is_positive(a) ? g : inverse_[g];
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[x][y] = (x + y) % n;
  return FiniteGroup(std::move(table), 0, {{"g", n == 1 ? 0 : 1}});
}

FiniteGroup FiniteGroup::symmetric3() {
  // elements: permutations of {0,1,2} numbered 0:id 1:(01) 2:(02) 3:(12)
  // 4:(012) 5:(021); composition left-to-right
  auto apply = [](int perm, int pt) {
    static const int m[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    return m[perm][pt];
  };
  std::vector<std::vector<int>> table(6, std::vector<int>(6, -1));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      int img[3];
      for (int pt = 0; pt < 3; ++pt) img[pt] = apply(y, apply(x, pt));
      for (int z = 0; z < 6; ++z) {
        bool same = true;
        for (int pt = 0; pt < 3; ++pt) same = same && apply(z, pt) == img[pt];
        if (same) {
          table[x][y] = z;
          break;
        }
      }
    }
  return FiniteGroup(std::move(table), 0, {{"s", 1}, {"r", 4}});
}

VirtuallyCyclicGroup::VirtuallyCyclicGroup(
    int n, std::vector<int> phi, std::vector<std::vector<std::int64_t>> cocycle,
    std::vector<std::vector<int>> tau)
    : n_(n), phi_(std::move(phi)), c_(std::move(cocycle)), tau_(std::move(tau)) {
  if (n_ < 1) throw InputError("virtually cyclic data needs n >= 1");
  if (static_cast<int>(phi_.size()) != n_ ||
      static_cast<int>(c_.size()) != n_ || static_cast<int>(tau_.size()) != n_)
    throw InputError("virtually cyclic data has wrong dimensions");
  for (int i = 0; i < n_; ++i) {
    if (phi_[i] != 1 && phi_[i] != -1)
      throw InputError("phi values must be +1 or -1");
    if (static_cast<int>(c_[i].size()) != n_ ||
        static_cast<int>(tau_[i].size()) != n_)
      throw InputError("virtually cyclic data has wrong dimensions");
    for (int j = 0; j < n_; ++j)
      if (tau_[i][j] < 1 || tau_[i][j] > n_)
        throw InputError("tau value out of range");
  }
  // b_1 is the identity class
  if (phi_[0] != 1) throw InputError("phi(1) must be +1");
  for (int j = 1; j <= n_; ++j) {
    if (c_[0][j - 1] != 0 || c_[j - 1][0] != 0)
      throw InputError("cocycle must vanish on the identity class");
    if (tau_[0][j - 1] != j || tau_[j - 1][0] != j)
      throw InputError("tau must fix the identity class");
  }
  auto tau_at = [&](int i, int j) { return tau_[i - 1][j - 1]; };
  auto phi_at = [&](int i) { return phi_[i - 1]; };
  auto c_at = [&](int i, int j) { return c_[i - 1][j - 1]; };
  // tau rows and columns are permutations (the quotient has inverses)
  for (int i = 1; i <= n_; ++i) {
    std::set<int> row, col;
    for (int j = 1; j <= n_; ++j) {
      row.insert(tau_at(i, j));
      col.insert(tau_at(j, i));
    }
    if (static_cast<int>(row.size()) != n_ || static_cast<int>(col.size()) != n_)
      throw InputError("tau rows/columns are not permutations");
  }
  // associativity of the induced multiplication, for all transversal triples:
  //   phi(tau(i,j)) = phi(i)phi(j)
  //   tau(tau(i,j),k) = tau(i,tau(j,k))
  //   c(i,j) + c(tau(i,j),k) = phi(i)c(j,k) + c(i,tau(j,k))
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) {
      if (phi_at(tau_at(i, j)) != phi_at(i) * phi_at(j))
        throw InputError("phi is not multiplicative on tau");
      for (int k = 1; k <= n_; ++k) {
        if (tau_at(tau_at(i, j), k) != tau_at(i, tau_at(j, k)))
          throw InputError("tau is not associative");
        if (c_at(i, j) + c_at(tau_at(i, j), k) !=
            phi_at(i) * c_at(j, k) + c_at(i, tau_at(j, k)))
          throw InputError("cocycle identity fails");
      }
    }
  class_inv_.assign(n_, 0);
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (tau_at(i, j) == 1) class_inv_[i - 1] = j;

  std::vector<std::string> names{"t"};
  for (int i = 2; i <= n_; ++i) names.push_back("b" + std::to_string(i));
  alpha_ = Alphabet(std::move(names));
}

VCElement VirtuallyCyclicGroup::multiply(const VCElement& x,
                                         const VCElement& y) const {
  if (x.klass < 1 || x.klass > n_ || y.klass < 1 || y.klass > n_)
    throw InputError("transversal class index out of range");
  return VCElement{x.z + phi(x.klass) * y.z + cocycle(x.klass, y.klass),
                   tau(x.klass, y.klass)};
}

VCElement VirtuallyCyclicGroup::inverse(const VCElement& x) const {
  int j = class_inverse(x.klass);
  // solve x·y = 1: z_y = -phi(x)·(z_x + c(x, j))
  return VCElement{-phi(x.klass) * (x.z + cocycle(x.klass, j)), j};
}

VCElement VirtuallyCyclicGroup::letter_element(Letter a) const {
  if (!alpha_.contains(a)) throw InputError("letter not in the group alphabet");
  int k = Alphabet::base_index(a);
  VCElement pos = k == 0 ? VCElement{1, 1} : VCElement{0, k + 1};
  return Alphabet::is_positive(a) ? pos : inverse(pos);
}

VirtuallyCyclicGroup VirtuallyCyclicGroup::integers() {
  return VirtuallyCyclicGroup(1, {1}, {{0}}, {{1}});
}

VirtuallyCyclicGroup VirtuallyCyclicGroup::infinite_dihedral() {
  return VirtuallyCyclicGroup(2, {1, -1}, {{0, 0}, {0, 0}},
                              {{1, 2}, {2, 1}});
}

VCElement vc_multiply(const VirtuallyCyclicGroup& g, const VCElement& x,
                      const VCElement& y) {
  return g.multiply(x, y);
}

const FreeGroup& Group::free() const {
  if (!is_free()) throw InputError("operation requires a free group backend");
  return std::get<FreeGroup>(g_);
}

const FiniteGroup& Group::finite() const {
  if (!is_finite()) throw InputError("operation requires a finite group backend");
  return std::get<FiniteGroup>(g_);
}

const VirtuallyCyclicGroup& Group::vc() const {
  if (!is_vc())
    throw InputError("operation requires a virtually cyclic backend");
  return std::get<VirtuallyCyclicGroup>(g_);
}

const Alphabet& Group::alphabet() const {
  return std::visit([](const auto& g) -> const Alphabet& { return g.alphabet(); },
                    g_);
}

Element Group::identity() const {
  switch (kind()) {
    case Kind::Free: return ReducedWord{};
    case Kind::Finite: return FiniteElement{finite().identity()};
    default: return VCElement{0, 1};
  }
}

Element Group::letter(Letter a) const {
  switch (kind()) {
    case Kind::Free: {
      if (!alphabet().contains(a)) throw InputError("letter not in alphabet");
      return ReducedWord{Word{a}};
    }
    case Kind::Finite: return FiniteElement{finite().letter_image(a)};
    default: return vc().letter_element(a);
  }
}

Element Group::eval(const Word& w) const {
  check_word(alphabet(), w);
  switch (kind()) {
    case Kind::Free: return free_reduce(alphabet(), w);
    case Kind::Finite: {
      int x = finite().identity();
      for (Letter a : w) x = finite().multiply(x, finite().letter_image(a));
      return FiniteElement{x};
    }
    default: {
      VCElement x{0, 1};
      for (Letter a : w) x = vc().multiply(x, vc().letter_element(a));
      return x;
    }
  }
}

Element Group::multiply(const Element& x, const Element& y) const {
  switch (kind()) {
    case Kind::Free: {
      Word w = std::get<ReducedWord>(x).letters;
      const Word& v = std::get<ReducedWord>(y).letters;
      for (Letter a : v) {
        if (!w.empty() && w.back() == Alphabet::inv(a))
          w.pop_back();
        else
          w.push_back(a);
      }
      return ReducedWord{std::move(w)};
    }
    case Kind::Finite:
      return FiniteElement{finite().multiply(std::get<FiniteElement>(x).index,
                                             std::get<FiniteElement>(y).index)};
    default:
      return vc().multiply(std::get<VCElement>(x), std::get<VCElement>(y));
  }
}

Element Group::inverse(const Element& x) const {
  switch (kind()) {
    case Kind::Free:
      return ReducedWord{inverse_word(std::get<ReducedWord>(x).letters)};
    case Kind::Finite:
      return FiniteElement{finite().inverse(std::get<FiniteElement>(x).index)};
    default:
      return vc().inverse(std::get<VCElement>(x));
  }
}

std::string Group::format_element(const Element& x) const {
  switch (kind()) {
    case Kind::Free:
      return format_word(alphabet(), std::get<ReducedWord>(x).letters);
    case Kind::Finite:
      return std::to_string(std::get<FiniteElement>(x).index);
    default: {
      const auto& e = std::get<VCElement>(x);
      return "(" + std::to_string(e.z) + "," + std::to_string(e.klass) + ")";
    }
  }
}

std::vector<BallEntry> ball(const Group& g, int radius) {
  if (radius < 0) throw InputError("ball radius must be nonnegative");
  std::vector<BallEntry> out;
  std::map<Element, Word> seen;
  std::deque<std::pair<Element, Word>> frontier;
  Element id = g.identity();
  seen.emplace(id, Word{});
  out.push_back({id, Word{}});
  frontier.emplace_back(id, Word{});
  const int letters = g.alphabet().letter_count();
  for (int layer = 0; layer < radius; ++layer) {
    std::deque<std::pair<Element, Word>> next;
    for (const auto& [e, w] : frontier) {
      for (Letter a = 0; a < static_cast<Letter>(letters); ++a) {
        Element e2 = g.multiply(e, g.letter(a));
        if (seen.contains(e2)) continue;
        Word w2 = w;
        w2.push_back(a);
        seen.emplace(e2, w2);
        out.push_back({e2, w2});
        next.emplace_back(std::move(e2), std::move(w2));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return out;
}

}  // namespace ratsub
