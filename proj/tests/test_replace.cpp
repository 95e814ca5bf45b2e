#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "yamada/error.hpp"
#include "yamada/replace.hpp"

using namespace yamada;

namespace {

const LaurentPoly sigma = sigma_const();
LaurentPoly A(int e) { return LaurentPoly::monomial(1, e); }
LaurentPoly pw(const LaurentPoly& p, int e) { return p.pow(static_cast<unsigned>(e)); }
LaurentPoly sgn(int e) { return LaurentPoly(e % 2 == 0 ? 1 : -1); }

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

LaurentPoly h_theta(int s) { return exact_div(sigma + pw(-sigma, s), sigma + 1); }
LaurentPoly h_bouquet(int q) { return sgn(q - 1) * pw(sigma, q); }

// Small two-terminal graphs; terminals are vertices 1 and 2.
struct Piece {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
};

const std::vector<Piece>& piece_pool() {
  static const std::vector<Piece> pool{
      {{1, 2}, {{1, 2}}},
      {{1, 2}, {{1, 2}, {1, 2}}},
      {{1, 2, 3}, {{1, 3}, {3, 2}}},
      {{1, 2, 3}, {{1, 2}, {1, 3}, {3, 2}}},
      {{1, 2}, {{1, 2}, {2, 2}}},
  };
  return pool;
}

Multigraph piece_graph(const Piece& p, bool closed) {
  std::vector<int> vs;
  for (int v : p.vertices) {
    if (!(closed && v == 2)) vs.push_back(v);
  }
  std::vector<Edge> es;
  int id = 1;
  for (auto [u, v] : p.edges) {
    if (closed && u == 2) u = 1;
    if (closed && v == 2) v = 1;
    es.push_back({id++, u, v});
  }
  return Multigraph(vs, es);
}

PieceInvariants invariants(const Piece& p) {
  return {yamada_H(piece_graph(p, false)), yamada_H(piece_graph(p, true))};
}

// Replaces every edge of the base graph by a copy of the piece its label names.
Multigraph substitute(const LabelledGraph& base, const std::map<std::string, Piece>& pieces) {
  std::vector<int> vs = base.graph.vertices();
  int next_vertex = 1 + *std::max_element(vs.begin(), vs.end());
  std::vector<Edge> es;
  int next_edge = 1;
  for (const auto& e : base.graph.edges()) {
    const Piece& p = pieces.at(base.label_of(e.id));
    std::map<int, int> where{{1, e.u}, {2, e.v}};
    for (int v : p.vertices) {
      if (v > 2) {
        where[v] = next_vertex;
        vs.push_back(next_vertex++);
      }
    }
    for (const auto& [a, b] : p.edges) es.push_back({next_edge++, where.at(a), where.at(b)});
  }
  return Multigraph(vs, es);
}

}  // namespace

TEST_SUITE("replace") {

TEST_CASE("alpha beta gamma examples") {
  const AlphaBetaGamma edge(PieceInvariants{0, sigma});
  CHECK(edge.alpha() == RationalFn(1));
  CHECK(edge.beta() == RationalFn(1));
  CHECK(edge.gamma() == RationalFn(0));

  for (int k = 1; k <= 4; ++k) {
    const AlphaBetaGamma abg(infinity_closed_form(k, Twist::kPlus));
    CHECK(abg.beta() == RationalFn(m_k(k)));
    CHECK(abg.gamma() == RationalFn(-(sigma * A(-2 * k)), m_k(k)));
    CHECK(m_k(k) == sgn(k - 1) * A(-k) * (A(1) + A(-1)));
  }

  for (int s = 1; s <= 5; ++s) {
    const PieceInvariants theta{yamada_H(Multigraph::theta(s)), yamada_H(Multigraph::bouquet(s))};
    const AlphaBetaGamma abg(theta);
    CHECK(abg.alpha() * RationalFn(sigma) == RationalFn((sigma + 1) * h_theta(s) + h_bouquet(s)));
    CHECK(abg.beta() * RationalFn(sigma) == RationalFn(h_theta(s) + h_bouquet(s)));
    // the inputs are recovered
    CHECK((RationalFn(sigma + 1) * abg.beta() - abg.alpha()) == RationalFn(theta.r_closed));
    CHECK(abg.alpha() - abg.beta() == RationalFn(theta.r));
  }

  const AlphaBetaGamma flat(PieceInvariants{sigma, -sigma});
  CHECK(flat.beta().is_zero());
  CHECK(kind_of([&] { flat.gamma(); }) == ErrorKind::kBetaZero);
}

TEST_CASE("two-vertex unions") {
  CHECK(two_vertex_H(0, 0, sigma, sigma) == sigma);
  // a doubled edge against a single edge is theta_3
  CHECK(two_vertex_H(sigma, 0, -(sigma * sigma), sigma) == yamada_H(Multigraph::theta(3)));
  CHECK(two_vertex_H(0, sigma, 0, -(sigma * sigma)).is_zero());
  CHECK(two_vertex_H(0, 0, 0, 0).is_zero());

  const PieceInvariants inf = infinity_closed_form(1, Twist::kPlus);
  const LaurentPoly glued = two_vertex_R(inf.r, inf.r, inf.r_closed, inf.r_closed);
  CHECK(glued == r_compose(Shape::kCycle, 2, {inf, inf}));
  CHECK(glued == yamada_R(build_family_diagram(2, 1, 1)));
  CHECK(two_vertex_R(0, 0, 0, 0).is_zero());

  // crossing-free second piece: the diagram formula and the graph formula agree
  const LaurentPoly hd = yamada_H(Multigraph::cycle(2));
  const LaurentPoly kd = yamada_H(Multigraph::bouquet(2));
  CHECK(two_vertex_R(inf.r, hd, inf.r_closed, kd) == two_vertex_H(inf.r, hd, inf.r_closed, kd));
  CHECK(two_vertex_R(hd, hd, kd, kd) == yamada_H(Multigraph::theta(4)));
}

TEST_CASE("edge replacement examples") {
  for (int n = 1; n <= 5; ++n) {
    const auto lg = LabelledGraph::with_uniform_label(Multigraph::cycle(n), "a");
    CHECK(h_edge_replace(lg, {{"a", PieceInvariants{0, sigma}}}) == sigma);
  }
  for (int n = 1; n <= 3; ++n) {
    for (int s = 1; s <= 4; ++s) {
      const auto lg = LabelledGraph::with_uniform_label(Multigraph::cycle(n), "a");
      const LaurentPoly got = h_edge_replace(lg, {{"a", PieceInvariants{h_theta(s), h_bouquet(s)}}});
      const LaurentPoly expect = pw(-h_theta(s), n) + exact_div(pw(h_theta(s) + h_bouquet(s), n), pw(sigma, n - 1));
      CHECK(got == expect);
      if (n * s <= 12) CHECK(got == yamada_H(cycle_of_thetas(n, s)));
    }
  }
  CHECK(cycle_of_thetas(2, 2).edge_count() == 4);
  CHECK(cycle_of_thetas(3, 2).edge_count() == 6);

  const auto lg = LabelledGraph::with_uniform_label(Multigraph::cycle(3), "a");
  CHECK(kind_of([&] { h_edge_replace(lg, {{"a", PieceInvariants{sigma, -sigma}}}); }) == ErrorKind::kBetaZero);
  CHECK(kind_of([&] { h_edge_replace(lg, {}); }) == ErrorKind::kMissingAssignment);
}

TEST_CASE("edge replacement on random composites") {
  gen::Rng rng(51);
  const auto& pool = piece_pool();
  for (int trial = 0; trial < 80; ++trial) {
    const LabelledGraph base = gen::labelled(rng, 3, 4);
    std::map<std::string, Piece> chosen;
    std::map<std::string, PieceInvariants> inv;
    for (const auto& l : base.label_order()) {
      chosen[l] = pool[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
      inv[l] = invariants(chosen[l]);
    }
    const Multigraph explicit_graph = substitute(base, chosen);
    REQUIRE(explicit_graph.edge_count() <= 12);
    CHECK(h_edge_replace(base, inv) == yamada_H(explicit_graph));
  }
}

TEST_CASE("composition examples") {
  const PieceInvariants inf = infinity_closed_form(1, Twist::kPlus);
  for (int n = 1; n <= 5; ++n) {
    const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(n), inf);
    CHECK(r_compose(Shape::kCycle, n, pieces) == pw(-(A(-2) * sigma), n) + sigma * pw(A(-2) + 1, n));
    CHECK((sigma + 1) * r_compose(Shape::kTheta, n, pieces) == pw(-sigma, n) + sigma * pw((sigma + 1) * A(-2) + 1, n));
    CHECK(r_compose(Shape::kBouquet, n, pieces) == sgn(n - 1) * pw(sigma, n));
  }
  CHECK(kind_of([&] { r_compose(Shape::kCycle, 3, {inf, inf}); }) == ErrorKind::kArityMismatch);
  // beta = 0 pieces are accepted by the diagram formulas
  CHECK_NOTHROW(r_compose(Shape::kCycle, 2, {PieceInvariants{sigma, -sigma}, inf}));
}

TEST_CASE("identity pieces") {
  const PieceInvariants edge{0, sigma};
  CHECK(infinity_closed_form(0, Twist::kPlus) == edge);
  CHECK(infinity_closed_form(0, Twist::kMinus) == edge);
  for (int n = 1; n <= 6; ++n) {
    const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(n), edge);
    CHECK(r_compose(Shape::kCycle, n, pieces) == sigma);
    CHECK(r_compose(Shape::kTheta, n, pieces) == h_theta(n));
    CHECK(r_compose(Shape::kBouquet, n, pieces) == h_bouquet(n));
  }
}

TEST_CASE("cycles are rings of beads") {
  gen::Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::uniform(rng, 2, 6);
    std::vector<PieceInvariants> pieces;
    for (int i = 0; i < n; ++i) {
      pieces.push_back(infinity_closed_form(gen::uniform(rng, 0, 4), gen::uniform(rng, 0, 1) ? Twist::kPlus : Twist::kMinus));
    }
    const LaurentPoly r = r_compose(Shape::kCycle, n, pieces);
    std::shuffle(pieces.begin(), pieces.end(), rng);
    CHECK(r_compose(Shape::kCycle, n, pieces) == r);
    std::reverse(pieces.begin(), pieces.end());
    CHECK(r_compose(Shape::kCycle, n, pieces) == r);
  }
}

TEST_CASE("closed forms of the twisted piece") {
  CHECK(infinity_closed_form(1, Twist::kPlus) == PieceInvariants{A(-2) * sigma, sigma});
  CHECK(infinity_closed_form(2, Twist::kPlus) == PieceInvariants{A(-4) * sigma, -(A(-2) * sigma * (A(1) + A(-1))) - A(-4) * sigma});
  for (int k = 0; k <= 4; ++k) {
    for (Twist t : {Twist::kPlus, Twist::kMinus}) {
      const DiagramCode d = build_infinity(k, t);
      const PieceInvariants p = infinity_closed_form(k, t);
      CHECK(p.r == yamada_R(d));
      CHECK(p.r_closed == yamada_R(close_piece(d)));
    }
  }
}

TEST_CASE("theta pieces") {
  for (int s = 1; s <= 3; ++s) {
    for (int k = 0; k <= 2; ++k) {
      if (s * k > 6) continue;
      const DiagramCode d = build_theta_diagram(s, k, Twist::kPlus);
      const PieceInvariants p = theta_piece(s, k, Twist::kPlus);
      CHECK(p.r == yamada_R(d));
      CHECK(p.r_closed == yamada_R(close_piece(d)));
      CHECK(theta_piece(s, k, Twist::kMinus) == PieceInvariants{mirror_substitute(p.r), mirror_substitute(p.r_closed)});
      // the closed theta piece: a bouquet of s closed twisted pieces
      CHECK(p.r_closed == sgn(s - 1) * pw(infinity_closed_form(k, Twist::kPlus).r_closed, s));
      if (k > 0) CHECK(p.r_closed == sgn(s - 1) * pw(sigma, s) * pw(m_k(k) - A(-2 * k), s));
    }
  }
}

TEST_CASE("family examples") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(family_polynomial(n, 1, 1, Twist::kPlus) == pw(-(A(-2) * sigma), n) + sigma * pw(A(-2) + 1, n));
  }
  CHECK(family_polynomial(2, 2, 1, Twist::kPlus) == yamada_R(build_family_diagram(2, 2, 1)));
  for (int n = 1; n <= 5; ++n) {
    for (int s = 1; s <= 4; ++s) {
      for (int k = 1; k <= 4; ++k) {
        CHECK(family_polynomial(n, s, k, Twist::kMinus) == mirror_substitute(family_polynomial(n, s, k, Twist::kPlus)));
      }
    }
  }
  CHECK(kind_of([] { family_polynomial(20, 6, 12, Twist::kPlus, 100); }) == ErrorKind::kDegreeCap);
}

TEST_CASE("family equals the state sum of its diagram") {
  for (int n = 1; n <= 8; ++n) {
    for (int s = 1; n * s <= 8; ++s) {
      for (int k = 1; n * s * k <= 8; ++k) {
        CAPTURE(n);
        CAPTURE(s);
        CAPTURE(k);
        const DiagramCode d = build_family_diagram(n, s, k);
        CHECK(static_cast<int>(d.crossings.size()) == n * s * k);
        CHECK(validate(d).planar());
        CHECK(family_polynomial(n, s, k, Twist::kPlus) == yamada_R(d));
      }
    }
  }
}

TEST_CASE("family diagrams") {
  const DiagramCode d = build_family_diagram(2, 1, 1);
  CHECK(d.crossings.size() == 2);
  CHECK(d.vertices.size() == 2);
  const DiagramCode e = build_family_diagram(2, 2, 1);
  CHECK(validate(e).genus == 0);
  CHECK(yamada_R(build_family_diagram(1, 2, 2)) == family_polynomial(1, 2, 2, Twist::kPlus));
  CHECK(kind_of([] { build_family_diagram(3, 3, 2); }) == ErrorKind::kTooLarge);
  CHECK(build_family_diagram(2, 2, 1, Twist::kMinus) == mirror(e));
}

TEST_CASE("family sequence") {
  for (int s = 1; s <= 3; ++s) {
    for (int k = 1; k <= 3; ++k) {
      FamilySequence seq(s, k, Twist::kPlus);
      for (int n = 1; n <= 6; ++n) {
        const LaurentPoly p = seq.next();
        CHECK(seq.n() == n);
        CHECK(p == family_polynomial(n, s, k, Twist::kPlus));
        CHECK(span(p) <= seq.degree_bound(n));
      }
    }
  }
  FamilySequence capped(6, 12, Twist::kPlus, 500);
  CHECK_THROWS_AS(while (true) capped.next(), Error);
  CHECK(span(sigma) == 2);
  CHECK(span(LaurentPoly()) == 0);
}

TEST_CASE("bouquet diagrams") {
  for (int q = 1; q <= 3; ++q) {
    for (int k = 0; k <= 2; ++k) {
      const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(q), infinity_closed_form(k, Twist::kPlus));
      CHECK(yamada_R(build_bouquet_diagram(q, k, Twist::kPlus)) == r_compose(Shape::kBouquet, q, pieces));
    }
  }
}

}  // TEST_SUITE
