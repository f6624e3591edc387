#pragma once

#include <optional>
#include <vector>

#include "ratsub/group.hpp"
#include "ratsub/nfa.hpp"

namespace ratsub {

struct GraphEdge {
  int from = 0;
  int positive = 0;  // positive letter number (alphabet rank index)
  int to = 0;
  auto operator<=>(const GraphEdge&) const = default;
};

// Folded core graph of a finitely generated subgroup H of a free group.
// Edges carry positive letters and are traversable both ways; the reduced
// words spelled by base loops are exactly the reduced words of H. Vertices
// are numbered in BFS order from the base (letters in shortlex order), so
// equal subgroups produce identical graphs.
class StallingsGraph {
public:
  static StallingsGraph fold(const FreeGroup& g, const std::vector<Word>& generators);
  // Complete graph from a transitive letter action on cosets; used for
  // kernels and other subgroups given by their coset action.
  static StallingsGraph from_action(const FreeGroup& g, int vertex_count, int base,
                                    const std::vector<std::vector<int>>& positive_action);

  const FreeGroup& group() const { return group_; }
  const Alphabet& alphabet() const { return group_.alphabet(); }
  int vertex_count() const { return static_cast<int>(out_.size()); }
  int base() const { return base_; }

  int out(int v, int positive) const { return out_[v][positive]; }
  int in(int v, int positive) const { return in_[v][positive]; }
  // Follow any letter from v; -1 if there is no such edge.
  int step(int v, Letter a) const;

  // true iff free_reduce(w) labels a loop at the base.
  bool member(const Word& w) const;
  // Finite index iff the graph is complete, and then it equals the vertex
  // count.
  bool complete() const;
  std::optional<int> index() const;

  // Spanning-tree data, deterministic: BFS from the base scanning letters in
  // shortlex order. tree_word(v) spells the tree path base -> v.
  const std::vector<GraphEdge>& tree_edges() const { return tree_edges_; }
  const std::vector<GraphEdge>& non_tree_edges() const { return non_tree_edges_; }
  bool is_tree_edge(const GraphEdge& e) const;
  // Index into non_tree_edges() or -1.
  int non_tree_index(const GraphEdge& e) const;
  Word tree_word(int v) const;

  // Free basis of H: one element rep(u)·l·rep(v)^-1 per non-tree edge
  // (u,l,v), in scan order.
  std::vector<ReducedWord> basis() const;
  // Shortlex-minimal right coset representatives, b_1 = 1. Throws
  // PreconditionError when the index is infinite.
  std::vector<ReducedWord> transversal() const;

  // Loop language at the base, unreduced words included.
  Nfa loops_nfa() const;

  bool operator==(const StallingsGraph&) const;

private:
  StallingsGraph(FreeGroup g) : group_(std::move(g)) {}
  void relabel_canonically();
  void compute_tree();

  FreeGroup group_;
  int base_ = 0;
  std::vector<std::vector<int>> out_;  // [vertex][positive] -> vertex or -1
  std::vector<std::vector<int>> in_;
  std::vector<GraphEdge> tree_edges_;
  std::vector<GraphEdge> non_tree_edges_;
  std::vector<int> parent_edge_;  // index into tree_edges_ per vertex, -1 at base
};

}  // namespace ratsub
