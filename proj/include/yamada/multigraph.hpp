#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "yamada/laurent.hpp"

namespace yamada {

struct Edge {
  int id;
  int u;
  int v;

  bool is_loop() const noexcept { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite multigraph; loops and parallel edges allowed. Vertices are kept
/// sorted by id and edges sorted by edge id.
class Multigraph {
 public:
  Multigraph() = default;
  /// Throws UnknownVertex for an endpoint outside `vertices` and
  /// InvalidArgument for repeated vertex or edge ids.
  Multigraph(std::vector<int> vertices, std::vector<Edge> edges);

  const std::vector<int>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool has_vertex(int id) const;
  const Edge& edge(int id) const;  // UnknownEdge

  /// G - e.
  Multigraph deleted(int edge_id) const;
  /// G / e; the merged vertex keeps the smaller id. ContractLoop for loops.
  Multigraph contracted(int edge_id) const;

  /// Degree with loops counted twice.
  std::size_t degree(int vertex) const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

  static Multigraph single_vertex();
  /// n-cycle for n >= 1 (C_1 is one loop, C_2 a doubled edge).
  static Multigraph cycle(int n);
  /// One vertex with q loops.
  static Multigraph bouquet(int q);
  /// Two vertices joined by s parallel edges.
  static Multigraph theta(int s);
  static Multigraph path(int edges);

 private:
  std::vector<int> vertices_;
  std::vector<Edge> edges_;
};

enum class EditKind { kDelete, kContract };

Multigraph edit(const Multigraph& g, int edge_id, EditKind kind);

struct ComponentsBetti {
  int components;
  int betti;
  friend bool operator==(const ComponentsBetti&, const ComponentsBetti&) = default;
};

ComponentsBetti components_betti(const Multigraph& g);

/// True when some non-loop edge is a cut edge.
bool has_isthmus(const Multigraph& g);

/// Disjoint union; vertex and edge ids of `b` are offset past those of `a`.
Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);
/// Union sharing one vertex: vertex `vb` of `b` is identified with `va` of `a`.
Multigraph one_point_union(const Multigraph& a, int va, const Multigraph& b, int vb);

inline constexpr std::size_t kDefaultEdgeGuard = 16;
inline constexpr std::size_t kDefaultOracleGuard = 14;
inline constexpr std::size_t kDefaultReducedGuard = 96;

/// Yamada polynomial H(G) by plain deletion-contraction. Loops are removed
/// first (H = -sigma H(G-e)), otherwise the smallest edge id is contracted
/// and deleted. Throws TooLarge above `edge_guard` edges.
LaurentPoly yamada_H(const Multigraph& g, std::size_t edge_guard = kDefaultEdgeGuard);

/// Same invariant, computed with exact simplifications before branching:
/// loops, isolated vertices, pendant edges (H = 0), series contraction at
/// degree-2 vertices and factorization over blocks. Used by the diagram
/// state sum, whose states routinely exceed the plain recursion guard.
LaurentPoly yamada_H_reduced(const Multigraph& g, std::size_t edge_guard = kDefaultReducedGuard);

/// H(G) from the subset expansion h(G)(x, y) at x = -1, y = -(A + 2 + A^-1).
LaurentPoly h_subset_oracle(const Multigraph& g, std::size_t edge_guard = kDefaultOracleGuard);

/// Flow polynomial F(G; t) as a polynomial in t (nonnegative exponents).
LaurentPoly flow_poly(const Multigraph& g, std::size_t edge_guard = kDefaultEdgeGuard);

namespace detail {
/// Reduced H engine on a compact graph: vertices 0..vertex_count-1.
LaurentPoly h_reduced_compact(int vertex_count, std::vector<std::pair<int, int>> edges);
}  // namespace detail

}  // namespace yamada
