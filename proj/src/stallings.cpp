#include "ratsub/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "ratsub/errors.hpp"

namespace ratsub {

namespace {

// union-find over temporary vertex ids
struct Uf {
  std::vector<int> parent;
  explicit Uf(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

StallingsGraph StallingsGraph::fold(const FreeGroup& g,
                                    const std::vector<Word>& generators) {
  const int rank = g.rank();
  // bouquet of generator paths at a single base vertex
  int vertices = 1;
  std::set<std::tuple<int, int, int>> edges;  // (from, positive, to)
  for (const Word& raw : generators) {
    ReducedWord w = free_reduce(g.alphabet(), raw);
    if (w.empty()) continue;
    int cur = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      int nxt = (i + 1 == w.size()) ? 0 : vertices++;
      Letter a = w.letters[i];
      if (Alphabet::is_positive(a))
        edges.insert({cur, Alphabet::base_index(a), nxt});
      else
        edges.insert({nxt, Alphabet::base_index(a), cur});
      cur = nxt;
    }
  }

  // fold: repeatedly merge the targets of two equal-label edges at a vertex
  Uf uf(vertices);
  for (;;) {
    std::set<std::tuple<int, int, int>> normalized;
    for (auto [f, l, t] : edges) normalized.insert({uf.find(f), l, uf.find(t)});
    edges = std::move(normalized);
    bool merged = false;
    std::map<std::pair<int, int>, int> seen_out, seen_in;
    for (auto [f, l, t] : edges) {
      if (auto [it, fresh] = seen_out.try_emplace({f, l}, t); !fresh) {
        if (it->second != t) {
          uf.unite(it->second, t);
          merged = true;
          break;
        }
      }
      if (auto [it, fresh] = seen_in.try_emplace({t, l}, f); !fresh) {
        if (it->second != f) {
          uf.unite(it->second, f);
          merged = true;
          break;
        }
      }
    }
    if (!merged) break;
  }

  // prune non-base vertices of total degree 1 (core property)
  std::map<int, int> degree;
  for (auto [f, l, t] : edges) {
    ++degree[f];
    ++degree[t];
  }
  int base = uf.find(0);
  for (;;) {
    int victim = -1;
    for (auto [v, d] : degree)
      if (v != base && d == 1) {
        victim = v;
        break;
      }
    if (victim < 0) break;
    for (auto it = edges.begin(); it != edges.end();) {
      auto [f, l, t] = *it;
      if (f == victim || t == victim) {
        --degree[f == victim ? t : f];
        it = edges.erase(it);
      } else {
        ++it;
      }
    }
    degree.erase(victim);
  }

  // compact ids
  std::map<int, int> id;
  id[base] = 0;
  for (auto [f, l, t] : edges) {
    id.try_emplace(f, static_cast<int>(id.size()));
    id.try_emplace(t, static_cast<int>(id.size()));
  }
  StallingsGraph out(g);
  out.base_ = 0;
  out.out_.assign(id.size(), std::vector<int>(rank, -1));
  out.in_.assign(id.size(), std::vector<int>(rank, -1));
  for (auto [f, l, t] : edges) {
    out.out_[id[f]][l] = id[t];
    out.in_[id[t]][l] = id[f];
  }
  out.relabel_canonically();
  out.compute_tree();
  return out;
}

StallingsGraph StallingsGraph::from_action(
    const FreeGroup& g, int vertex_count, int base,
    const std::vector<std::vector<int>>& positive_action) {
  if (static_cast<int>(positive_action.size()) != g.rank())
    throw InputError("need one permutation per positive letter");
  StallingsGraph out(g);
  out.base_ = base;
  out.out_.assign(vertex_count, std::vector<int>(g.rank(), -1));
  out.in_.assign(vertex_count, std::vector<int>(g.rank(), -1));
  for (int l = 0; l < g.rank(); ++l) {
    const auto& perm = positive_action[l];
    if (static_cast<int>(perm.size()) != vertex_count)
      throw InputError("action row has wrong length");
    std::set<int> image;
    for (int v = 0; v < vertex_count; ++v) {
      int w = perm[v];
      if (w < 0 || w >= vertex_count) throw InputError("action image out of range");
      image.insert(w);
      out.out_[v][l] = w;
      out.in_[w][l] = v;
    }
    if (static_cast<int>(image.size()) != vertex_count)
      throw InputError("letter action is not a permutation");
  }
  out.relabel_canonically();
  out.compute_tree();
  if (!out.complete() || out.vertex_count() != vertex_count)
    throw InputError("action is not transitive from the base");
  return out;
}

void StallingsGraph::relabel_canonically() {
  // BFS from base, scanning a-out, a-in, b-out, b-in, ...
  const int rank = group_.rank();
  std::vector<int> order;
  std::vector<int> newid(out_.size(), -1);
  newid[base_] = 0;
  order.push_back(base_);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int v = order[qi];
    for (int l = 0; l < rank; ++l)
      for (int w : {out_[v][l], in_[v][l]})
        if (w >= 0 && newid[w] < 0) {
          newid[w] = static_cast<int>(order.size());
          order.push_back(w);
        }
  }
  // vertices not reached from the base would not be core; drop them
  std::vector<std::vector<int>> nout(order.size(), std::vector<int>(rank, -1));
  std::vector<std::vector<int>> nin(order.size(), std::vector<int>(rank, -1));
  for (size_t v = 0; v < out_.size(); ++v) {
    if (newid[v] < 0) continue;
    for (int l = 0; l < rank; ++l) {
      if (out_[v][l] >= 0 && newid[out_[v][l]] >= 0)
        nout[newid[v]][l] = newid[out_[v][l]];
      if (in_[v][l] >= 0 && newid[in_[v][l]] >= 0)
        nin[newid[v]][l] = newid[in_[v][l]];
    }
  }
  out_ = std::move(nout);
  in_ = std::move(nin);
  base_ = 0;
}

void StallingsGraph::compute_tree() {
  tree_edges_.clear();
  non_tree_edges_.clear();
  parent_edge_.assign(vertex_count(), -1);
  std::vector<bool> visited(vertex_count(), false);
  visited[base_] = true;
  std::deque<int> queue{base_};
  std::set<GraphEdge> seen;  // geometric edges already classified
  std::vector<int> bfs;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    bfs.push_back(v);
    for (int l = 0; l < group_.rank(); ++l) {
      // out direction, then in direction: shortlex scan order
      if (int w = out_[v][l]; w >= 0) {
        GraphEdge e{v, l, w};
        if (!seen.contains(e)) {
          seen.insert(e);
          if (!visited[w]) {
            visited[w] = true;
            parent_edge_[w] = static_cast<int>(tree_edges_.size());
            tree_edges_.push_back(e);
            queue.push_back(w);
          } else {
            non_tree_edges_.push_back(e);
          }
        }
      }
      if (int w = in_[v][l]; w >= 0) {
        GraphEdge e{w, l, v};
        if (!seen.contains(e)) {
          seen.insert(e);
          if (!visited[w]) {
            visited[w] = true;
            parent_edge_[w] = static_cast<int>(tree_edges_.size());
            tree_edges_.push_back(e);
            queue.push_back(w);
          } else {
            non_tree_edges_.push_back(e);
          }
        }
      }
    }
  }
}

int StallingsGraph::step(int v, Letter a) const {
  int l = Alphabet::base_index(a);
  return Alphabet::is_positive(a) ? out_[v][l] : in_[v][l];
}

bool StallingsGraph::member(const Word& w) const {
  ReducedWord r = free_reduce(alphabet(), w);
  int v = base_;
  for (Letter a : r.letters) {
    v = step(v, a);
    if (v < 0) return false;
  }
  return v == base_;
}

bool StallingsGraph::complete() const {
  for (int v = 0; v < vertex_count(); ++v)
    for (int l = 0; l < group_.rank(); ++l)
      if (out_[v][l] < 0 || in_[v][l] < 0) return false;
  return true;
}

std::optional<int> StallingsGraph::index() const {
  if (!complete()) return std::nullopt;
  return vertex_count();
}

bool StallingsGraph::is_tree_edge(const GraphEdge& e) const {
  return std::ranges::find(tree_edges_, e) != tree_edges_.end();
}

int StallingsGraph::non_tree_index(const GraphEdge& e) const {
  auto it = std::ranges::find(non_tree_edges_, e);
  if (it == non_tree_edges_.end()) return -1;
  return static_cast<int>(it - non_tree_edges_.begin());
}

Word StallingsGraph::tree_word(int v) const {
  Word out;
  while (v != base_) {
    const GraphEdge& e = tree_edges_[parent_edge_[v]];
    if (e.to == v) {
      out.push_back(Alphabet::positive(e.positive));
      v = e.from;
    } else {
      out.push_back(Alphabet::inv(Alphabet::positive(e.positive)));
      v = e.to;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<ReducedWord> StallingsGraph::basis() const {
  std::vector<ReducedWord> out;
  for (const GraphEdge& e : non_tree_edges_) {
    Word w = tree_word(e.from);
    w.push_back(Alphabet::positive(e.positive));
    Word back = inverse_word(tree_word(e.to));
    w.insert(w.end(), back.begin(), back.end());
    out.push_back(free_reduce(alphabet(), w));
  }
  return out;
}

std::vector<ReducedWord> StallingsGraph::transversal() const {
  if (!complete())
    throw PreconditionError("transversal requires a finite index subgroup");
  std::vector<ReducedWord> out;
  out.reserve(vertex_count());
  // vertices are in BFS order already; tree words are shortlex-minimal
  for (int v = 0; v < vertex_count(); ++v)
    out.push_back(ReducedWord{tree_word(v)});
  return out;
}

Nfa StallingsGraph::loops_nfa() const {
  Nfa out{alphabet(), vertex_count(), {}, {base_}, {base_}};
  for (int v = 0; v < vertex_count(); ++v)
    for (int l = 0; l < group_.rank(); ++l)
      if (int w = out_[v][l]; w >= 0) {
        out.transitions.insert({v, static_cast<int>(Alphabet::positive(l)), w});
        out.transitions.insert(
            {w, static_cast<int>(Alphabet::inv(Alphabet::positive(l))), v});
      }
  return out;
}

bool StallingsGraph::operator==(const StallingsGraph& o) const {
  return group_ == o.group_ && base_ == o.base_ && out_ == o.out_;
}

}  // namespace ratsub
