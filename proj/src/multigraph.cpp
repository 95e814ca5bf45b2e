#include "yamada/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "yamada/error.hpp"

namespace yamada {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t vertex_index(const std::vector<int>& sorted_vertices, int id) {
  auto it = std::lower_bound(sorted_vertices.begin(), sorted_vertices.end(), id);
  if (it == sorted_vertices.end() || *it != id) {
    throw Error(ErrorKind::kUnknownVertex, "vertex " + std::to_string(id) + " not in graph");
  }
  return static_cast<std::size_t>(it - sorted_vertices.begin());
}

// Components of g after removing the edges flagged in `skip`.
std::size_t count_components(const Multigraph& g, const std::vector<bool>& skip) {
  DisjointSets ds(g.vertex_count());
  std::size_t components = g.vertex_count();
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (skip[i]) continue;
    const Edge& e = g.edges()[i];
    if (ds.unite(vertex_index(g.vertices(), e.u), vertex_index(g.vertices(), e.v))) --components;
  }
  return components;
}

bool is_bridge(const Multigraph& g, std::size_t edge_index) {
  const Edge& e = g.edges()[edge_index];
  if (e.is_loop()) return false;
  std::vector<bool> skip(g.edges().size(), false);
  skip[edge_index] = true;
  DisjointSets ds(g.vertex_count());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (skip[i]) continue;
    ds.unite(vertex_index(g.vertices(), g.edges()[i].u), vertex_index(g.vertices(), g.edges()[i].v));
  }
  return ds.find(vertex_index(g.vertices(), e.u)) != ds.find(vertex_index(g.vertices(), e.v));
}

void check_guard(const Multigraph& g, std::size_t guard, const char* what) {
  if (g.edge_count() > guard) {
    throw Error(ErrorKind::kTooLarge, std::string(what) + ": " + std::to_string(g.edge_count()) +
                                          " edges exceeds guard " + std::to_string(guard));
  }
}

const LaurentPoly& sigma_power(std::size_t k) {
  thread_local std::vector<LaurentPoly> cache{LaurentPoly(1)};
  while (cache.size() <= k) cache.push_back(cache.back() * sigma_const());
  return cache[k];
}

LaurentPoly plain_h(const Multigraph& g) {
  if (g.edge_count() == 0) return (g.vertex_count() % 2 == 0) ? LaurentPoly(1) : LaurentPoly(-1);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) return -(sigma_const() * plain_h(g.deleted(e.id)));
  }
  const int pivot = g.edges().front().id;
  return plain_h(g.contracted(pivot)) + plain_h(g.deleted(pivot));
}

LaurentPoly plain_flow(const Multigraph& g) {
  if (g.edge_count() == 0) return LaurentPoly(1);
  const Edge& e = g.edges().front();
  if (e.is_loop()) return (LaurentPoly::var() - LaurentPoly(1)) * plain_flow(g.deleted(e.id));
  if (is_bridge(g, 0)) return {};
  return plain_flow(g.contracted(e.id)) - plain_flow(g.deleted(e.id));
}

// ---------------------------------------------------------------------------
// Reduced engine on compact graphs.

using EdgeList = std::vector<std::pair<int, int>>;

// Renumbers the vertices that still carry edges to 0..k-1; returns k.
int compact(EdgeList& edges) {
  std::unordered_map<int, int> remap;
  for (auto& [u, v] : edges) {
    u = remap.try_emplace(u, static_cast<int>(remap.size())).first->second;
    v = remap.try_emplace(v, static_cast<int>(remap.size())).first->second;
  }
  return static_cast<int>(remap.size());
}

struct Blocks {
  std::vector<EdgeList> blocks;
  int components = 0;
};

// Biconnected components (as edge sets) of a graph without loops.
Blocks biconnected_blocks(int n, const EdgeList& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));  // (neighbor, edge index)
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[static_cast<std::size_t>(edges[i].first)].push_back({edges[i].second, static_cast<int>(i)});
    adj[static_cast<std::size_t>(edges[i].second)].push_back({edges[i].first, static_cast<int>(i)});
  }
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> edge_stack;
  Blocks out;
  int timer = 0;
  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    ++out.components;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = adj[static_cast<std::size_t>(f.v)];
      if (f.next < nbrs.size()) {
        auto [w, ei] = nbrs[f.next++];
        if (ei == f.parent_edge) continue;
        if (disc[static_cast<std::size_t>(w)] == -1) {
          edge_stack.push_back(ei);
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          stack.push_back({w, ei, 0});
        } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(f.v)]) {
          edge_stack.push_back(ei);
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const int v = f.v;
      const int pe = f.parent_edge;
      stack.pop_back();
      if (stack.empty()) break;
      const int u = stack.back().v;
      low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)]) {
        EdgeList block;
        while (true) {
          const int ei = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(edges[static_cast<std::size_t>(ei)]);
          if (ei == pe) break;
        }
        out.blocks.push_back(std::move(block));
      }
    }
  }
  return out;
}

LaurentPoly h_reduced(int n, EdgeList edges) {
  int neg = 0;        // factor (-1)^neg
  std::size_t sig = 0;  // factor sigma^sig
  std::vector<int> degree;
  std::vector<int> alive(static_cast<std::size_t>(n), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    auto loop_end = std::remove_if(edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; });
    const auto loops = static_cast<std::size_t>(edges.end() - loop_end);
    if (loops > 0) {
      edges.erase(loop_end, edges.end());
      sig += loops;
      neg += static_cast<int>(loops);
    }
    degree.assign(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
      ++degree[static_cast<std::size_t>(u)];
      ++degree[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < n; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      const int d = degree[static_cast<std::size_t>(v)];
      if (d == 1) return {};
      if (d == 0) {
        alive[static_cast<std::size_t>(v)] = 0;
        ++neg;
      }
    }
    for (int v = 0; v < n && !changed; ++v) {
      if (!alive[static_cast<std::size_t>(v)] || degree[static_cast<std::size_t>(v)] != 2) continue;
      // Series edge: deleting it leaves a pendant edge, so H(G) = H(G/e).
      std::size_t first = edges.size();
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].first == v || edges[i].second == v) {
          first = i;
          break;
        }
      }
      const int other = edges[first].first == v ? edges[first].second : edges[first].first;
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(first));
      for (auto& [a, b] : edges) {
        if (a == v) a = other;
        if (b == v) b = other;
      }
      alive[static_cast<std::size_t>(v)] = 0;
      changed = true;
    }
  }
  LaurentPoly scale = sigma_power(sig);
  if (neg % 2 != 0) scale = -scale;
  if (edges.empty()) return scale;

  const int k = compact(edges);
  Blocks parts = biconnected_blocks(k, edges);
  if (parts.blocks.size() > 1) {
    // One-point unions contribute a sign each; disjoint unions multiply.
    LaurentPoly product(1);
    for (auto& block : parts.blocks) {
      if (block.size() == 1) return {};  // isthmus
      const int bn = compact(block);
      product *= h_reduced(bn, std::move(block));
      if (product.is_zero()) return {};
    }
    const std::size_t joins = parts.blocks.size() - static_cast<std::size_t>(parts.components);
    if (joins % 2 != 0) product = -product;
    return scale * product;
  }
  if (edges.size() == 1) return {};

  // Pivot on the most repeated vertex pair: contracting it turns the
  // remaining parallel copies into loops.
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::minmax(a.first, a.second) < std::minmax(b.first, b.second);
  });
  std::size_t best = 0;
  std::size_t best_run = 0;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && std::minmax(edges[j].first, edges[j].second) == std::minmax(edges[i].first, edges[i].second)) ++j;
    if (j - i > best_run) {
      best_run = j - i;
      best = i;
    }
    i = j;
  }
  const auto [pu, pv] = edges[best];
  EdgeList deleted = edges;
  deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(best));
  EdgeList contracted = deleted;
  for (auto& [a, b] : contracted) {
    if (a == pv) a = pu;
    if (b == pv) b = pu;
  }
  // Vertex pv disappears in the contraction; it has other edges so it is not isolated.
  LaurentPoly result = h_reduced(k, std::move(contracted));
  // In the contracted graph pv carries no edges and counted as an isolated
  // vertex (factor -1); undo that.
  result = -result;
  result += h_reduced(k, std::move(deleted));
  return scale * result;
}

}  // namespace

// ---------------------------------------------------------------------------

Multigraph::Multigraph(std::vector<int> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw Error(ErrorKind::kInvalidArgument, "repeated vertex id");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i > 0 && edges_[i].id == edges_[i - 1].id) throw Error(ErrorKind::kInvalidArgument, "repeated edge id");
    vertex_index(vertices_, edges_[i].u);
    vertex_index(vertices_, edges_[i].v);
  }
}

bool Multigraph::has_vertex(int id) const { return std::binary_search(vertices_.begin(), vertices_.end(), id); }

const Edge& Multigraph::edge(int id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id, [](const Edge& e, int x) { return e.id < x; });
  if (it == edges_.end() || it->id != id) throw Error(ErrorKind::kUnknownEdge, "edge " + std::to_string(id));
  return *it;
}

Multigraph Multigraph::deleted(int edge_id) const {
  edge(edge_id);
  Multigraph g;
  g.vertices_ = vertices_;
  g.edges_.reserve(edges_.size() - 1);
  for (const Edge& e : edges_) {
    if (e.id != edge_id) g.edges_.push_back(e);
  }
  return g;
}

Multigraph Multigraph::contracted(int edge_id) const {
  const Edge& target = edge(edge_id);
  if (target.is_loop()) throw Error(ErrorKind::kContractLoop, "edge " + std::to_string(edge_id) + " is a loop");
  const int keep = std::min(target.u, target.v);
  const int drop = std::max(target.u, target.v);
  Multigraph g;
  g.vertices_.reserve(vertices_.size() - 1);
  for (int v : vertices_) {
    if (v != drop) g.vertices_.push_back(v);
  }
  g.edges_.reserve(edges_.size() - 1);
  for (Edge e : edges_) {
    if (e.id == edge_id) continue;
    if (e.u == drop) e.u = keep;
    if (e.v == drop) e.v = keep;
    g.edges_.push_back(e);
  }
  return g;
}

std::size_t Multigraph::degree(int vertex) const {
  std::size_t d = 0;
  for (const Edge& e : edges_) d += static_cast<std::size_t>(e.u == vertex) + static_cast<std::size_t>(e.v == vertex);
  return d;
}

Multigraph Multigraph::single_vertex() { return Multigraph({1}, {}); }

Multigraph Multigraph::cycle(int n) {
  std::vector<int> vs(static_cast<std::size_t>(n));
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<Edge> es;
  for (int i = 1; i <= n; ++i) es.push_back({i, i, i % n + 1});
  return Multigraph(vs, es);
}

Multigraph Multigraph::bouquet(int q) {
  std::vector<Edge> es;
  for (int i = 1; i <= q; ++i) es.push_back({i, 1, 1});
  return Multigraph({1}, es);
}

Multigraph Multigraph::theta(int s) {
  std::vector<Edge> es;
  for (int i = 1; i <= s; ++i) es.push_back({i, 1, 2});
  return Multigraph({1, 2}, es);
}

Multigraph Multigraph::path(int edges) {
  std::vector<int> vs(static_cast<std::size_t>(edges + 1));
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<Edge> es;
  for (int i = 1; i <= edges; ++i) es.push_back({i, i, i + 1});
  return Multigraph(vs, es);
}

Multigraph edit(const Multigraph& g, int edge_id, EditKind kind) {
  return kind == EditKind::kDelete ? g.deleted(edge_id) : g.contracted(edge_id);
}

ComponentsBetti components_betti(const Multigraph& g) {
  const auto mu = static_cast<int>(count_components(g, std::vector<bool>(g.edge_count(), false)));
  return {mu, static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + mu};
}

bool has_isthmus(const Multigraph& g) {
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (is_bridge(g, i)) return true;
  }
  return false;
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  const int voff = a.vertices().empty() ? 0 : a.vertices().back() - (b.vertices().empty() ? 0 : b.vertices().front()) + 1;
  const int eoff = a.edges().empty() ? 0 : a.edges().back().id - (b.edges().empty() ? 0 : b.edges().front().id) + 1;
  std::vector<int> vs = a.vertices();
  for (int v : b.vertices()) vs.push_back(v + voff);
  std::vector<Edge> es = a.edges();
  for (const Edge& e : b.edges()) es.push_back({e.id + eoff, e.u + voff, e.v + voff});
  return Multigraph(vs, es);
}

Multigraph one_point_union(const Multigraph& a, int va, const Multigraph& b, int vb) {
  if (!a.has_vertex(va) || !b.has_vertex(vb)) throw Error(ErrorKind::kUnknownVertex, "one_point_union vertex");
  const int voff = a.vertices().empty() ? 0 : a.vertices().back() - (b.vertices().empty() ? 0 : b.vertices().front()) + 1;
  const int eoff = a.edges().empty() ? 0 : a.edges().back().id - (b.edges().empty() ? 0 : b.edges().front().id) + 1;
  auto map_v = [&](int v) { return v == vb ? va : v + voff; };
  std::vector<int> vs = a.vertices();
  for (int v : b.vertices()) {
    if (v != vb) vs.push_back(v + voff);
  }
  std::vector<Edge> es = a.edges();
  for (const Edge& e : b.edges()) es.push_back({e.id + eoff, map_v(e.u), map_v(e.v)});
  return Multigraph(vs, es);
}

LaurentPoly yamada_H(const Multigraph& g, std::size_t edge_guard) {
  check_guard(g, edge_guard, "yamada_H");
  return plain_h(g);
}

LaurentPoly detail::h_reduced_compact(int vertex_count, std::vector<std::pair<int, int>> edges) {
  return h_reduced(vertex_count, std::move(edges));
}

LaurentPoly yamada_H_reduced(const Multigraph& g, std::size_t edge_guard) {
  check_guard(g, edge_guard, "yamada_H_reduced");
  EdgeList edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    edges.push_back({static_cast<int>(vertex_index(g.vertices(), e.u)), static_cast<int>(vertex_index(g.vertices(), e.v))});
  }
  return h_reduced(static_cast<int>(g.vertex_count()), std::move(edges));
}

LaurentPoly h_subset_oracle(const Multigraph& g, std::size_t edge_guard) {
  check_guard(g, edge_guard, "h_subset_oracle");
  const std::size_t q = g.edge_count();
  const std::size_t p = g.vertex_count();
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (const Edge& e : g.edges()) ends.push_back({vertex_index(g.vertices(), e.u), vertex_index(g.vertices(), e.v)});
  // signed_count[beta] accumulates (-1)^mu over subsets with that Betti number.
  std::vector<long> signed_count(q + 1, 0);
  for (std::size_t kept = 0; kept < (std::size_t{1} << q); ++kept) {
    DisjointSets ds(p);
    std::size_t mu = p;
    std::size_t size = 0;
    for (std::size_t i = 0; i < q; ++i) {
      if (!((kept >> i) & 1U)) continue;
      ++size;
      if (ds.unite(ends[i].first, ends[i].second)) --mu;
    }
    const std::size_t beta = size + mu - p;
    signed_count[beta] += (mu % 2 == 0) ? 1 : -1;
  }
  const LaurentPoly y = -(sigma_const() + LaurentPoly(1));
  LaurentPoly result;
  LaurentPoly y_pow(1);
  for (std::size_t b = 0; b <= q; ++b) {
    if (signed_count[b] != 0) result += y_pow.scaled(signed_count[b]);
    y_pow *= y;
  }
  return result;
}

LaurentPoly flow_poly(const Multigraph& g, std::size_t edge_guard) {
  check_guard(g, edge_guard, "flow_poly");
  return plain_flow(g);
}

}  // namespace yamada
