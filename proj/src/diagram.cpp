#include "yamada/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "yamada/error.hpp"

namespace yamada {

namespace {

std::string str(int v) { return std::to_string(v); }

void rotate_to_min(std::vector<int>& cyc) {
  if (cyc.empty()) return;
  std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
}

// Lookup tables over a structurally valid code.
struct Index {
  std::unordered_map<int, int> node_of;   // half-edge -> node id
  std::unordered_map<int, int> slot_of;   // half-edge -> position in its node's ends
  std::unordered_map<int, int> partner;   // half-edge -> other end of its arc
  std::unordered_map<int, const std::vector<int>*> ends_of;  // node id -> ends
  std::unordered_set<int> crossing_ids;

  int ccw_next(int h) const {
    const auto& ends = *ends_of.at(node_of.at(h));
    return ends[(static_cast<std::size_t>(slot_of.at(h)) + 1) % ends.size()];
  }
  int opposite(int h) const {
    const auto& ends = *ends_of.at(node_of.at(h));
    return ends[(static_cast<std::size_t>(slot_of.at(h)) + 2) % 4];
  }
  bool on_crossing(int h) const { return crossing_ids.count(node_of.at(h)) > 0; }
};

Index build_index(const DiagramCode& code) {
  Index ix;
  std::unordered_set<int> node_ids;
  auto add_node = [&](int id, const std::vector<int>& ends) {
    if (!node_ids.insert(id).second) throw Error(ErrorKind::kInvalidArgument, "node id " + str(id) + " repeated");
    ix.ends_of[id] = &ends;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (!ix.node_of.emplace(ends[i], id).second) {
        throw Error(ErrorKind::kDuplicateHalfEdge, "half-edge " + str(ends[i]) + " sits on two nodes");
      }
      ix.slot_of[ends[i]] = static_cast<int>(i);
    }
  };
  for (const auto& v : code.vertices) add_node(v.id, v.ends);
  for (const auto& c : code.crossings) {
    if (c.ends.size() != 4) {
      throw Error(ErrorKind::kBadCrossingArity, "crossing " + str(c.id) + " has " + str(static_cast<int>(c.ends.size())) + " ends");
    }
    add_node(c.id, c.ends);
    ix.crossing_ids.insert(c.id);
    const auto a = std::find(c.ends.begin(), c.ends.end(), c.over[0]);
    const auto b = std::find(c.ends.begin(), c.ends.end(), c.over[1]);
    if (a == c.ends.end() || b == c.ends.end() || std::abs(a - b) != 2) {
      throw Error(ErrorKind::kBadCrossingArity, "over pair of crossing " + str(c.id) + " is not two opposite ends");
    }
  }
  for (const auto& arc : code.arcs) {
    for (int h : arc) {
      if (!ix.node_of.count(h)) throw Error(ErrorKind::kDanglingHalfEdge, "arc end " + str(h) + " is on no node");
    }
    if (arc[0] == arc[1] || ix.partner.count(arc[0]) || ix.partner.count(arc[1])) {
      throw Error(ErrorKind::kDuplicateHalfEdge, "half-edge in two arcs near [" + str(arc[0]) + "," + str(arc[1]) + "]");
    }
    ix.partner[arc[0]] = arc[1];
    ix.partner[arc[1]] = arc[0];
  }
  for (const auto& [h, node] : ix.node_of) {
    if (!ix.partner.count(h)) throw Error(ErrorKind::kDanglingHalfEdge, "half-edge " + str(h) + " is in no arc");
  }
  if (code.attach) {
    const auto [u, v] = *code.attach;
    auto is_vertex = [&](int id) {
      return std::any_of(code.vertices.begin(), code.vertices.end(), [&](const DiagramVertex& x) { return x.id == id; });
    };
    if (!is_vertex(u) || !is_vertex(v)) throw Error(ErrorKind::kUnknownVertex, "attach vertex missing");
    if (u == v) throw Error(ErrorKind::kInvalidArgument, "attach vertices coincide");
  }
  return ix;
}

struct FaceTrace {
  std::map<int, int> face_of;  // dart -> face index
  int faces = 0;
  int components = 0;
  int genus = 0;
};

FaceTrace trace_faces(const DiagramCode& code, const Index& ix) {
  FaceTrace ft;
  std::vector<int> darts;
  darts.reserve(ix.node_of.size());
  for (const auto& [h, n] : ix.node_of) darts.push_back(h);
  std::sort(darts.begin(), darts.end());
  for (int h : darts) {
    if (ft.face_of.count(h)) continue;
    int d = h;
    do {
      ft.face_of[d] = ft.faces;
      d = ix.ccw_next(ix.partner.at(d));
    } while (d != h);
    ++ft.faces;
  }
  int isolated = 0;
  std::vector<int> ids;
  for (const auto& v : code.vertices) {
    ids.push_back(v.id);
    if (v.ends.empty()) ++isolated;
  }
  for (const auto& c : code.crossings) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  std::vector<int> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto pos = [&](int id) { return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& arc : code.arcs) {
    const int a = find(pos(ix.node_of.at(arc[0])));
    const int b = find(pos(ix.node_of.at(arc[1])));
    if (a != b) parent[a] = b;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++ft.components;
  }
  const int faces = ft.faces + isolated;
  const int nodes = static_cast<int>(ids.size());
  const int edges = static_cast<int>(code.arcs.size());
  ft.genus = (2 * ft.components - nodes + edges - faces) / 2;
  ft.faces = faces;
  return ft;
}

int max_node_id(const DiagramCode& code) {
  int m = 0;
  for (const auto& v : code.vertices) m = std::max(m, v.id);
  for (const auto& c : code.crossings) m = std::max(m, c.id);
  return m;
}

int max_half_edge(const DiagramCode& code) {
  int m = 0;
  for (const auto& arc : code.arcs) m = std::max({m, arc[0], arc[1]});
  return m;
}

// Corner pairs joined by a smoothing, as slot indices relative to the ends.
std::array<std::array<int, 2>, 2> smoothing_slots(int over_offset, Spin spin, SmoothingConvention conv) {
  bool plus = spin == Spin::kPlus;
  if (conv == SmoothingConvention::kSwapped) plus = !plus;
  const int o = over_offset;
  if (plus) return {{{o, (o + 3) % 4}, {o + 2, (o + 1) % 4}}};
  return {{{o, o + 1}, {o + 2, (o + 3) % 4}}};
}

int over_offset(const Crossing& c) {
  return static_cast<int>(std::find(c.ends.begin(), c.ends.end(), c.over[0]) - c.ends.begin()) % 2;
}

enum class CirclePolicy { kReject, kAddVertex };

// Removes the given crossings; strands entering them are continued along
// `through` until they leave again.
DiagramCode splice_out(const DiagramCode& code, const Index& ix, const std::set<int>& removed,
                       const std::unordered_map<int, int>& through, CirclePolicy policy) {
  DiagramCode out;
  out.vertices = code.vertices;
  out.attach = code.attach;
  std::unordered_set<int> gone;
  for (const auto& c : code.crossings) {
    if (removed.count(c.id)) {
      gone.insert(c.ends.begin(), c.ends.end());
    } else {
      out.crossings.push_back(c);
    }
  }
  std::unordered_set<int> done;
  for (const auto& arc : code.arcs) {
    if (!gone.count(arc[0]) && !gone.count(arc[1])) out.arcs.push_back(arc);
  }
  std::vector<int> starts;
  for (const auto& arc : code.arcs) {
    for (int k = 0; k < 2; ++k) {
      if (!gone.count(arc[k]) && gone.count(arc[1 - k])) starts.push_back(arc[k]);
    }
  }
  std::sort(starts.begin(), starts.end());
  for (int h : starts) {
    if (done.count(h)) continue;
    int q = ix.partner.at(h);
    while (gone.count(q)) {
      done.insert(q);
      const int r = through.at(q);
      done.insert(r);
      q = ix.partner.at(r);
    }
    done.insert(h);
    done.insert(q);
    out.arcs.push_back({h, q});
  }
  std::vector<int> left(gone.begin(), gone.end());
  std::sort(left.begin(), left.end());
  int next_node = max_node_id(code) + 1;
  int next_he = max_half_edge(code) + 1;
  for (int h : left) {
    if (done.count(h)) continue;
    if (policy == CirclePolicy::kReject) throw Error(ErrorKind::kMoveNotApplicable, "move would leave a closed strand with no node");
    int q = h;
    do {
      done.insert(q);
      const int r = through.at(q);
      done.insert(r);
      q = ix.partner.at(r);
    } while (q != h);
    const int a = next_he++;
    const int b = next_he++;
    out.vertices.push_back({next_node++, {a, b}});
    out.arcs.push_back({a, b});
  }
  return canonical(std::move(out));
}

// Dense tables for fast repeated state tracing.
class StateTracer {
 public:
  StateTracer(const DiagramCode& code, SmoothingConvention conv) : conv_(conv) {
    build_index(code);  // validation
    std::unordered_map<int, int> dense;
    auto add = [&](const std::vector<int>& ends, int node) {
      for (std::size_t i = 0; i < ends.size(); ++i) {
        dense[ends[i]] = static_cast<int>(node_.size());
        node_.push_back(node);
        slot_.push_back(static_cast<int>(i));
      }
    };
    vertex_count_ = static_cast<int>(code.vertices.size());
    for (int i = 0; i < vertex_count_; ++i) add(code.vertices[static_cast<std::size_t>(i)].ends, i);
    for (std::size_t c = 0; c < code.crossings.size(); ++c) {
      add(code.crossings[c].ends, vertex_count_ + static_cast<int>(c));
      std::array<int, 4> he{};
      for (int k = 0; k < 4; ++k) he[static_cast<std::size_t>(k)] = dense.at(code.crossings[c].ends[static_cast<std::size_t>(k)]);
      cross_he_.push_back(he);
      offset_.push_back(over_offset(code.crossings[c]));
    }
    partner_.assign(node_.size(), -1);
    for (const auto& arc : code.arcs) {
      partner_[static_cast<std::size_t>(dense.at(arc[0]))] = dense.at(arc[1]);
      partner_[static_cast<std::size_t>(dense.at(arc[1]))] = dense.at(arc[0]);
    }
    through_.assign(node_.size(), -1);
    label_.assign(static_cast<std::size_t>(vertex_count_) + code.crossings.size(), -1);
    visited_.assign(node_.size(), 0);
  }

  std::size_t crossing_count() const { return cross_he_.size(); }

  // Fills `edges` with the state graph; nodes are numbered compactly.
  // Returns the node count. `labels` (optional) receives, per compact node,
  // the node index in the code (vertices then crossings) or -1 for circles.
  int trace(const std::vector<Spin>& spins, std::vector<std::pair<int, int>>& edges, std::vector<int>* labels = nullptr) {
    edges.clear();
    if (labels) labels->clear();
    int count = 0;
    for (int i = 0; i < vertex_count_; ++i) {
      label_[static_cast<std::size_t>(i)] = count++;
      if (labels) labels->push_back(i);
    }
    for (std::size_t c = 0; c < cross_he_.size(); ++c) {
      const auto& he = cross_he_[c];
      if (spins[c] == Spin::kZero) {
        label_[static_cast<std::size_t>(vertex_count_) + c] = count++;
        if (labels) labels->push_back(vertex_count_ + static_cast<int>(c));
        for (int h : he) through_[static_cast<std::size_t>(h)] = -1;
      } else {
        label_[static_cast<std::size_t>(vertex_count_) + c] = -1;
        for (const auto& pair : smoothing_slots(offset_[c], spins[c], conv_)) {
          const int a = he[static_cast<std::size_t>(pair[0])];
          const int b = he[static_cast<std::size_t>(pair[1])];
          through_[static_cast<std::size_t>(a)] = b;
          through_[static_cast<std::size_t>(b)] = a;
        }
      }
    }
    std::fill(visited_.begin(), visited_.end(), 0);
    const std::size_t total = node_.size();
    for (std::size_t h = 0; h < total; ++h) {
      if (visited_[h] || terminal_label(static_cast<int>(h)) < 0) continue;
      visited_[h] = 1;
      int q = partner_[h];
      while (terminal_label(q) < 0) {
        visited_[static_cast<std::size_t>(q)] = 1;
        const int r = through_[static_cast<std::size_t>(q)];
        visited_[static_cast<std::size_t>(r)] = 1;
        q = partner_[static_cast<std::size_t>(r)];
      }
      visited_[static_cast<std::size_t>(q)] = 1;
      edges.emplace_back(terminal_label(static_cast<int>(h)), terminal_label(q));
    }
    for (std::size_t h = 0; h < total; ++h) {
      if (visited_[h]) continue;
      const int circle = count++;
      if (labels) labels->push_back(-1);
      int q = static_cast<int>(h);
      do {
        visited_[static_cast<std::size_t>(q)] = 1;
        const int r = through_[static_cast<std::size_t>(q)];
        visited_[static_cast<std::size_t>(r)] = 1;
        q = partner_[static_cast<std::size_t>(r)];
      } while (q != static_cast<int>(h));
      edges.emplace_back(circle, circle);
    }
    return count;
  }

 private:
  int terminal_label(int h) const { return label_[static_cast<std::size_t>(node_[static_cast<std::size_t>(h)])]; }

  SmoothingConvention conv_;
  int vertex_count_ = 0;
  std::vector<int> node_;
  std::vector<int> slot_;
  std::vector<int> partner_;
  std::vector<std::array<int, 4>> cross_he_;
  std::vector<int> offset_;
  std::vector<int> through_;
  std::vector<int> label_;
  std::vector<char> visited_;
};

}  // namespace

const DiagramVertex& DiagramCode::vertex(int id) const {
  for (const auto& v : vertices) {
    if (v.id == id) return v;
  }
  throw Error(ErrorKind::kUnknownVertex, "diagram vertex " + str(id));
}

const Crossing& DiagramCode::crossing(int id) const {
  for (const auto& c : crossings) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::kInvalidArgument, "no crossing " + str(id));
}

DiagramCode canonical(DiagramCode code) {
  for (auto& v : code.vertices) rotate_to_min(v.ends);
  for (auto& c : code.crossings) {
    rotate_to_min(c.ends);
    if (c.over[0] > c.over[1]) std::swap(c.over[0], c.over[1]);
  }
  for (auto& arc : code.arcs) {
    if (arc[0] > arc[1]) std::swap(arc[0], arc[1]);
  }
  std::sort(code.vertices.begin(), code.vertices.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(code.crossings.begin(), code.crossings.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(code.arcs.begin(), code.arcs.end());
  return code;
}

ValidationReport validate(const DiagramCode& code) {
  const Index ix = build_index(code);
  const FaceTrace ft = trace_faces(code, ix);
  ValidationReport report;
  report.components = ft.components;
  report.faces = ft.faces;
  report.genus = ft.genus;
  if (ft.genus != 0) report.warnings.push_back("code is not planar (genus " + str(ft.genus) + ")");
  return report;
}

std::map<int, int> dart_faces(const DiagramCode& code) {
  const Index ix = build_index(code);
  return trace_faces(code, ix).face_of;
}

Multigraph resolve(const DiagramCode& code, const SpinAssignment& spins, SmoothingConvention convention) {
  StateTracer tracer(code, convention);
  std::vector<Spin> dense;
  for (const auto& c : code.crossings) {
    auto it = spins.find(c.id);
    if (it == spins.end()) throw Error(ErrorKind::kPartialAssignment, "crossing " + str(c.id) + " has no spin");
    dense.push_back(it->second);
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<int> labels;
  const int count = tracer.trace(dense, edges, &labels);
  int next_id = max_node_id(code) + 1;
  std::vector<int> ids;
  for (int l : labels) {
    if (l < 0) {
      ids.push_back(next_id++);
    } else if (l < static_cast<int>(code.vertices.size())) {
      ids.push_back(code.vertices[static_cast<std::size_t>(l)].id);
    } else {
      ids.push_back(code.crossings[static_cast<std::size_t>(l) - code.vertices.size()].id);
    }
  }
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out.push_back({static_cast<int>(i) + 1, ids[static_cast<std::size_t>(edges[i].first)], ids[static_cast<std::size_t>(edges[i].second)]});
  }
  (void)count;
  return Multigraph(ids, out);
}

LaurentPoly yamada_R(const DiagramCode& code, const StateSumOptions& options) {
  if (code.crossings.size() > options.crossing_guard) {
    throw Error(ErrorKind::kTooLarge, "yamada_R: " + str(static_cast<int>(code.crossings.size())) + " crossings");
  }
  StateTracer tracer(code, options.convention);
  const std::size_t c = tracer.crossing_count();
  std::vector<Spin> spins(c, Spin::kPlus);
  std::vector<std::pair<int, int>> edges;
  // Partial sums grouped by the exponent m1 - m2, shifted by c.
  std::vector<LaurentPoly> by_weight(2 * c + 1);
  while (true) {
    const int n = tracer.trace(spins, edges);
    if (edges.size() > options.edge_guard) {
      throw Error(ErrorKind::kTooLarge, "state graph with " + str(static_cast<int>(edges.size())) + " edges");
    }
    int weight = static_cast<int>(c);
    for (Spin s : spins) weight += s == Spin::kPlus ? 1 : (s == Spin::kMinus ? -1 : 0);
    by_weight[static_cast<std::size_t>(weight)] += detail::h_reduced_compact(n, edges);
    std::size_t i = 0;
    while (i < c && spins[i] == Spin::kZero) spins[i++] = Spin::kPlus;
    if (i == c) break;
    spins[i] = spins[i] == Spin::kPlus ? Spin::kMinus : Spin::kZero;
  }
  LaurentPoly r;
  for (std::size_t w = 0; w < by_weight.size(); ++w) {
    r += by_weight[w].shifted(static_cast<int>(w) - static_cast<int>(c));
  }
  return r;
}

DiagramCode mirror(const DiagramCode& code) {
  DiagramCode out = code;
  for (auto& c : out.crossings) {
    std::array<int, 2> other{};
    std::size_t k = 0;
    for (int h : c.ends) {
      if (h != c.over[0] && h != c.over[1]) other[k++] = h;
    }
    c.over = other;
  }
  return canonical(std::move(out));
}

DiagramCode merge_vertices(const DiagramCode& code, int keep, int drop) {
  build_index(code);
  if (keep == drop) throw Error(ErrorKind::kInvalidArgument, "cannot merge a vertex with itself");
  const auto& ka = code.vertex(keep).ends;
  const auto& kb = code.vertex(drop).ends;
  DiagramCode base = code;
  base.vertices.erase(std::remove_if(base.vertices.begin(), base.vertices.end(), [&](const auto& v) { return v.id == drop; }),
                      base.vertices.end());
  if (base.attach && ((*base.attach)[0] == drop || (*base.attach)[1] == drop)) base.attach.reset();
  auto& target = *std::find_if(base.vertices.begin(), base.vertices.end(), [&](const auto& v) { return v.id == keep; });
  std::optional<DiagramCode> best;
  int best_genus = 0;
  const std::size_t na = std::max<std::size_t>(ka.size(), 1);
  const std::size_t nb = std::max<std::size_t>(kb.size(), 1);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      std::vector<int> ends;
      for (std::size_t t = 0; t < ka.size(); ++t) ends.push_back(ka[(i + t) % ka.size()]);
      for (std::size_t t = 0; t < kb.size(); ++t) ends.push_back(kb[(j + t) % kb.size()]);
      target.ends = ends;
      const int g = trace_faces(base, build_index(base)).genus;
      if (!best || g < best_genus) {
        best = base;
        best_genus = g;
      }
    }
  }
  return canonical(std::move(*best));
}

DiagramCode close_piece(const DiagramCode& code) {
  if (!code.attach) throw Error(ErrorKind::kNoAttachPair, "piece has no attachment vertices");
  const auto [u, v] = *code.attach;
  DiagramCode out = merge_vertices(code, u, v);
  out.attach.reset();
  return out;
}

DiagramCode build_infinity(int k, Twist sign) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "negative crossing count");
  SweepBuilder b;
  const int u = b.vertex(0, 0, k == 0 ? 1 : 2);
  for (int i = 0; i < k; ++i) b.cross(0, sign);
  const int v = b.vertex(0, k == 0 ? 1 : 2, 0);
  return b.finish(std::array<int, 2>{u, v});
}

DiagramCode resolve_crossing(const DiagramCode& code, int crossing_id, Spin spin, SmoothingConvention convention) {
  const Index ix = build_index(code);
  const Crossing& c = code.crossing(crossing_id);
  if (spin == Spin::kZero) {
    DiagramCode out = code;
    out.crossings.erase(std::remove_if(out.crossings.begin(), out.crossings.end(), [&](const auto& x) { return x.id == crossing_id; }),
                        out.crossings.end());
    out.vertices.push_back({crossing_id, c.ends});
    return canonical(std::move(out));
  }
  std::unordered_map<int, int> through;
  for (const auto& pair : smoothing_slots(over_offset(c), spin, convention)) {
    const int a = c.ends[static_cast<std::size_t>(pair[0])];
    const int b = c.ends[static_cast<std::size_t>(pair[1])];
    through[a] = b;
    through[b] = a;
  }
  return splice_out(code, ix, {crossing_id}, through, CirclePolicy::kAddVertex);
}

Multigraph underlying_graph(const DiagramCode& code) {
  const Index ix = build_index(code);
  std::vector<int> ids;
  for (const auto& v : code.vertices) ids.push_back(v.id);
  std::vector<Edge> edges;
  std::unordered_set<int> done;
  std::vector<int> starts;
  for (const auto& v : code.vertices) starts.insert(starts.end(), v.ends.begin(), v.ends.end());
  std::sort(starts.begin(), starts.end());
  for (int h : starts) {
    if (done.count(h)) continue;
    done.insert(h);
    int q = ix.partner.at(h);
    while (ix.on_crossing(q)) {
      done.insert(q);
      const int r = ix.opposite(q);
      done.insert(r);
      q = ix.partner.at(r);
    }
    done.insert(q);
    edges.push_back({static_cast<int>(edges.size()) + 1, ix.node_of.at(h), ix.node_of.at(q)});
  }
  int next_id = max_node_id(code) + 1;
  std::vector<int> rest;
  for (const auto& c : code.crossings) rest.insert(rest.end(), c.ends.begin(), c.ends.end());
  std::sort(rest.begin(), rest.end());
  for (int h : rest) {
    if (done.count(h)) continue;
    int q = h;
    do {
      done.insert(q);
      const int r = ix.opposite(q);
      done.insert(r);
      q = ix.partner.at(r);
    } while (q != h);
    ids.push_back(next_id);
    edges.push_back({static_cast<int>(edges.size()) + 1, next_id, next_id});
    ++next_id;
  }
  return Multigraph(ids, edges);
}

DiagramCode disjoint_union(const DiagramCode& a, const DiagramCode& b) {
  const int dn = max_node_id(a);
  const int dh = max_half_edge(a);
  DiagramCode out = a;
  auto shift = [dh](std::vector<int> ends) {
    for (int& h : ends) h += dh;
    return ends;
  };
  for (const auto& v : b.vertices) out.vertices.push_back({v.id + dn, shift(v.ends)});
  for (const auto& c : b.crossings) out.crossings.push_back({c.id + dn, shift(c.ends), {c.over[0] + dh, c.over[1] + dh}});
  for (const auto& arc : b.arcs) out.arcs.push_back({arc[0] + dh, arc[1] + dh});
  return canonical(std::move(out));
}

DiagramCode one_point_union(const DiagramCode& a, int va, const DiagramCode& b, int vb) {
  a.vertex(va);
  b.vertex(vb);
  return merge_vertices(disjoint_union(a, b), va, vb + max_node_id(a));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t arc_position(const DiagramCode& code, std::array<int, 2> arc) {
  for (std::size_t i = 0; i < code.arcs.size(); ++i) {
    const auto& a = code.arcs[i];
    if ((a[0] == arc[0] && a[1] == arc[1]) || (a[0] == arc[1] && a[1] == arc[0])) return i;
  }
  throw Error(ErrorKind::kMoveNotApplicable, "no arc [" + str(arc[0]) + "," + str(arc[1]) + "]");
}

DiagramCode r1_insert(const DiagramCode& code, const R1Insert& m) {
  build_index(code);
  DiagramCode out = code;
  out.arcs.erase(out.arcs.begin() + static_cast<std::ptrdiff_t>(arc_position(code, m.arc)));
  int h = max_half_edge(code) + 1;
  const std::vector<int> x{h, h + 1, h + 2, h + 3};
  const std::array<int, 2> over = m.twist == Twist::kPlus ? std::array<int, 2>{x[0], x[2]} : std::array<int, 2>{x[1], x[3]};
  out.crossings.push_back({max_node_id(code) + 1, x, over});
  out.arcs.push_back({m.arc[0], x[0]});
  out.arcs.push_back({x[2], x[3]});
  out.arcs.push_back({x[1], m.arc[1]});
  return canonical(std::move(out));
}

DiagramCode r1_remove(const DiagramCode& code, const R1Remove& m) {
  const Index ix = build_index(code);
  const Crossing& c = code.crossing(m.crossing);
  for (std::size_t i = 0; i < 4; ++i) {
    if (ix.partner.at(c.ends[i]) != c.ends[(i + 1) % 4]) continue;
    std::unordered_map<int, int> through;
    for (std::size_t k = 0; k < 4; ++k) through[c.ends[k]] = c.ends[(k + 2) % 4];
    return splice_out(code, ix, {c.id}, through, CirclePolicy::kReject);
  }
  throw Error(ErrorKind::kMoveNotApplicable, "crossing " + str(m.crossing) + " bounds no monogon");
}

DiagramCode r2_insert(const DiagramCode& code, const R2Insert& m) {
  const Index ix = build_index(code);
  const std::size_t p1 = arc_position(code, m.arc1);
  const std::size_t p2 = arc_position(code, m.arc2);
  if (p1 == p2) throw Error(ErrorKind::kMoveNotApplicable, "R2 needs two distinct arcs");
  const FaceTrace ft = trace_faces(code, ix);
  if (ft.face_of.at(m.arc1[0]) != ft.face_of.at(m.arc2[0])) {
    throw Error(ErrorKind::kMoveNotApplicable, "arcs do not share the certified face");
  }
  DiagramCode out = code;
  out.arcs.erase(out.arcs.begin() + static_cast<std::ptrdiff_t>(std::max(p1, p2)));
  out.arcs.erase(out.arcs.begin() + static_cast<std::ptrdiff_t>(std::min(p1, p2)));
  const int h = max_half_edge(code) + 1;
  const int n = max_node_id(code) + 1;
  // ends counterclockwise: east, north, west, south
  const int xe = h, xn = h + 1, xw = h + 2, xs = h + 3;
  const int ye = h + 4, yn = h + 5, yw = h + 6, ys = h + 7;
  const std::array<int, 2> xo = m.first_over ? std::array<int, 2>{xe, xw} : std::array<int, 2>{xn, xs};
  const std::array<int, 2> yo = m.first_over ? std::array<int, 2>{ye, yw} : std::array<int, 2>{yn, ys};
  out.crossings.push_back({n, {xe, xn, xw, xs}, xo});
  out.crossings.push_back({n + 1, {ye, yn, yw, ys}, yo});
  out.arcs.push_back({m.arc1[0], xw});
  out.arcs.push_back({xe, yw});
  out.arcs.push_back({ye, m.arc1[1]});
  out.arcs.push_back({m.arc2[0], ys});
  out.arcs.push_back({yn, xn});
  out.arcs.push_back({xs, m.arc2[1]});
  return canonical(std::move(out));
}

DiagramCode r2_remove(const DiagramCode& code, const R2Remove& m) {
  const Index ix = build_index(code);
  if (m.crossing1 == m.crossing2) throw Error(ErrorKind::kMoveNotApplicable, "R2 needs two crossings");
  const Crossing& x = code.crossing(m.crossing1);
  const Crossing& y = code.crossing(m.crossing2);
  auto is_over = [](const Crossing& c, int h) { return h == c.over[0] || h == c.over[1]; };
  for (int d1 : x.ends) {
    const int p1 = ix.partner.at(d1);
    if (ix.node_of.at(p1) != y.id) continue;
    const int d2 = ix.ccw_next(p1);
    const int p2 = ix.partner.at(d2);
    if (ix.node_of.at(p2) != x.id || ix.ccw_next(p2) != d1) continue;
    if (is_over(x, d1) != is_over(y, p1)) continue;
    std::unordered_map<int, int> through;
    for (const Crossing* c : {&x, &y}) {
      for (std::size_t k = 0; k < 4; ++k) through[c->ends[k]] = c->ends[(k + 2) % 4];
    }
    return splice_out(code, ix, {x.id, y.id}, through, CirclePolicy::kReject);
  }
  throw Error(ErrorKind::kMoveNotApplicable,
              "crossings " + str(m.crossing1) + " and " + str(m.crossing2) + " bound no removable bigon");
}

}  // namespace

DiagramCode apply_move(const DiagramCode& code, const Move& move) {
  return std::visit(
      [&](const auto& m) -> DiagramCode {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, R1Insert>) return r1_insert(code, m);
        if constexpr (std::is_same_v<M, R1Remove>) return r1_remove(code, m);
        if constexpr (std::is_same_v<M, R2Insert>) return r2_insert(code, m);
        if constexpr (std::is_same_v<M, R2Remove>) return r2_remove(code, m);
      },
      move);
}

// ---------------------------------------------------------------------------

int SweepBuilder::vertex(std::size_t pos, std::size_t absorb, std::size_t emit) {
  if (pos + absorb > ports_.size()) throw Error(ErrorKind::kInvalidArgument, "vertex absorbs past the last port");
  DiagramVertex v{next_node_++, {}};
  for (std::size_t i = 0; i < absorb; ++i) {
    const int h = next_half_edge_++;
    links_.push_back({ports_[pos + i], h});
    v.ends.push_back(h);
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < emit; ++i) out.push_back(next_half_edge_++);
  v.ends.insert(v.ends.end(), out.rbegin(), out.rend());
  ports_.erase(ports_.begin() + static_cast<std::ptrdiff_t>(pos), ports_.begin() + static_cast<std::ptrdiff_t>(pos + absorb));
  ports_.insert(ports_.begin() + static_cast<std::ptrdiff_t>(pos), out.begin(), out.end());
  code_.vertices.push_back(v);
  return v.id;
}

int SweepBuilder::cross(std::size_t pos, Twist twist) {
  if (pos + 1 >= ports_.size()) throw Error(ErrorKind::kInvalidArgument, "crossing needs two ports");
  const int ll = next_half_edge_++;
  const int lr = next_half_edge_++;
  const int ur = next_half_edge_++;
  const int ul = next_half_edge_++;
  links_.push_back({ports_[pos], ll});
  links_.push_back({ports_[pos + 1], lr});
  const std::array<int, 2> over = twist == Twist::kPlus ? std::array<int, 2>{ll, ur} : std::array<int, 2>{lr, ul};
  const int id = next_node_++;
  code_.crossings.push_back({id, {ll, lr, ur, ul}, over});
  ports_[pos] = ul;
  ports_[pos + 1] = ur;
  return id;
}

void SweepBuilder::cup(std::size_t pos) {
  if (pos > ports_.size()) throw Error(ErrorKind::kInvalidArgument, "cup past the last port");
  const int a = next_virtual_--;
  const int b = next_virtual_--;
  links_.push_back({a, b});
  ports_.insert(ports_.begin() + static_cast<std::ptrdiff_t>(pos), {a, b});
}

void SweepBuilder::cap(std::size_t pos) {
  if (pos + 1 >= ports_.size()) throw Error(ErrorKind::kInvalidArgument, "cap needs two ports");
  links_.push_back({ports_[pos], ports_[pos + 1]});
  ports_.erase(ports_.begin() + static_cast<std::ptrdiff_t>(pos), ports_.begin() + static_cast<std::ptrdiff_t>(pos + 2));
}

DiagramCode SweepBuilder::finish(std::optional<std::array<int, 2>> attach) {
  if (!ports_.empty()) throw Error(ErrorKind::kInvalidArgument, "sweep finished with open ports");
  std::map<int, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    incident[links_[i][0]].push_back(i);
    incident[links_[i][1]].push_back(i);
  }
  auto other = [&](std::size_t link, int token) { return links_[link][0] == token ? links_[link][1] : links_[link][0]; };
  DiagramCode out = code_;
  std::set<int> seen;
  for (const auto& [token, links] : incident) {
    if (token < 0 || seen.count(token)) continue;
    std::size_t link = links.front();
    int cur = other(link, token);
    seen.insert(token);
    while (cur < 0) {
      seen.insert(cur);
      const auto& l = incident.at(cur);
      link = l[0] == link ? l[1] : l[0];
      cur = other(link, cur);
    }
    seen.insert(cur);
    out.arcs.push_back({token, cur});
  }
  for (const auto& [token, links] : incident) {
    if (seen.count(token)) continue;
    int cur = token;
    std::size_t link = links.front();
    do {
      seen.insert(cur);
      cur = other(link, cur);
      const auto& l = incident.at(cur);
      link = l[0] == link ? l[1] : l[0];
    } while (cur != token);
    const int a = next_half_edge_++;
    const int b = next_half_edge_++;
    out.vertices.push_back({next_node_++, {a, b}});
    out.arcs.push_back({a, b});
  }
  out.attach = attach;
  out = canonical(std::move(out));
  build_index(out);
  return out;
}

}  // namespace yamada
