#include <map>
#include <string>

#include "doctest.h"
#include "generators.hpp"
#include "yamada/chain.hpp"
#include "yamada/error.hpp"

using namespace yamada;

namespace {

const LaurentPoly sigma = sigma_const();

MultiPoly var(const MultiPoly& like, std::size_t i) { return MultiPoly::variable(like.variables(), i); }
MultiPoly one(const MultiPoly& like) { return MultiPoly::constant(like.variables(), 1); }

RationalFn random_rational(gen::Rng& rng) {
  int d = 0;
  while (d == 0) d = gen::uniform(rng, -7, 7);
  return RationalFn(LaurentPoly(gen::uniform(rng, -9, 9)), LaurentPoly(d));
}

std::map<std::string, RationalFn> random_values(gen::Rng& rng, const std::vector<std::string>& labels) {
  std::map<std::string, RationalFn> m;
  for (const auto& l : labels) m[l] = random_rational(rng);
  return m;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("cycle, bouquet and theta") {
  for (int n = 1; n <= 6; ++n) {
    const MultiPoly ch = chain_poly(LabelledGraph::with_distinct_labels(Multigraph::cycle(n)));
    MultiPoly expect = one(ch);
    for (std::size_t i = 1; i < ch.variables().size(); ++i) expect = expect * var(ch, i);
    CHECK(ch == expect - var(ch, 0));
  }
  for (int q = 1; q <= 5; ++q) {
    const MultiPoly ch = chain_poly(LabelledGraph::with_distinct_labels(Multigraph::bouquet(q)));
    MultiPoly expect = one(ch);
    for (std::size_t i = 1; i < ch.variables().size(); ++i) expect = expect * (var(ch, i) - var(ch, 0));
    CHECK(ch == expect);
  }
  for (int s = 1; s <= 4; ++s) {
    const MultiPoly ch = chain_poly(LabelledGraph::with_distinct_labels(Multigraph::theta(s)));
    const MultiPoly w = var(ch, 0);
    MultiPoly a = one(ch);
    MultiPoly b = one(ch);
    for (std::size_t i = 1; i < ch.variables().size(); ++i) {
      a = a * (var(ch, i) - w);
      b = b * (var(ch, i) - one(ch));
    }
    CHECK((one(ch) - w) * ch == a - w * b);
  }
}

TEST_CASE("variable order") {
  LabelledGraph lg{Multigraph({1, 2}, {{5, 1, 2}, {3, 1, 2}, {9, 2, 2}}), {{5, "x"}, {3, "y"}, {9, "x"}}};
  CHECK(lg.label_order() == std::vector<std::string>{"y", "x"});
  CHECK(chain_poly(lg).variables() == std::vector<std::string>{"w", "y", "x"});
}

TEST_CASE("flow oracle examples") {
  for (const auto& g : {Multigraph::cycle(4), Multigraph::theta(3)}) {
    const auto lg = LabelledGraph::with_distinct_labels(g);
    CHECK(chain_poly(lg) == chain_flow_oracle(lg));
  }
  const auto empty = LabelledGraph::with_distinct_labels(Multigraph({1, 2}, {}));
  CHECK(chain_flow_oracle(empty) == MultiPoly::constant({"w"}, 1));
  CHECK(chain_poly(empty) == MultiPoly::constant({"w"}, 1));
}

TEST_CASE("eval_chain examples") {
  const RationalFn w = RationalFn(-sigma);
  for (int n = 1; n <= 5; ++n) {
    const auto lg = LabelledGraph::with_distinct_labels(Multigraph::cycle(n));
    std::map<std::string, RationalFn> zeros;
    for (const auto& l : lg.label_order()) zeros[l] = RationalFn(0);
    CHECK(eval_chain(chain_poly(lg), w, zeros) == RationalFn(sigma));
  }
  const auto c2 = LabelledGraph::with_distinct_labels(Multigraph::cycle(2));
  std::map<std::string, RationalFn> ones;
  for (const auto& l : c2.label_order()) ones[l] = RationalFn(1);
  CHECK(eval_chain(chain_poly(c2), w, ones) == RationalFn(sigma + 1));

  const RationalFn gamma(LaurentPoly::var() - 3, sigma + 1);
  const auto b1 = LabelledGraph::with_uniform_label(Multigraph::bouquet(1), "g");
  CHECK(eval_chain(chain_poly(b1), w, {{"g", gamma}}) == gamma + RationalFn(sigma));

  try {
    eval_chain(chain_poly(c2), w, {});
    FAIL("expected MissingAssignment");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kMissingAssignment);
  }
}

TEST_CASE("guards") {
  const auto big = LabelledGraph::with_distinct_labels(Multigraph::cycle(17));
  CHECK_THROWS_AS(chain_poly(big), Error);
  CHECK_THROWS_AS(chain_flow_oracle(LabelledGraph::with_distinct_labels(Multigraph::cycle(13))), Error);
}

TEST_CASE("recursion agrees with the flow expansion") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const LabelledGraph lg = gen::labelled(rng, 5, 8);
    CHECK(chain_poly(lg) == chain_flow_oracle(lg));
  }
}

TEST_CASE("evaluation is a homomorphism") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const LabelledGraph g1 = gen::labelled(rng, 4, 5);
    const MultiPoly p = chain_poly(g1);
    const MultiPoly q = p + p * p;
    const RationalFn w = random_rational(rng);
    const auto values = random_values(rng, g1.label_order());
    const RationalFn ep = eval_chain(p, w, values);
    CHECK(eval_chain(q, w, values) == ep + ep * ep);
    CHECK(eval_chain(p * q, w, values) == ep * (ep + ep * ep));
    CHECK(eval_chain(-p, w, values) == -ep);
  }
}

TEST_CASE("one-point unions (reported)") {
  gen::Rng rng(33);
  int violations = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Multigraph a = gen::multigraph(rng, 3, 4);
    const Multigraph b = gen::multigraph(rng, 3, 4);
    const Multigraph joined = one_point_union(a, a.vertices().front(), b, b.vertices().front());
    const auto lg = LabelledGraph::with_distinct_labels(joined);
    // restrict the labelling of the union to each side
    const std::size_t qa = a.edge_count();
    std::vector<Edge> ea(joined.edges().begin(), joined.edges().begin() + static_cast<long>(qa));
    std::vector<Edge> eb(joined.edges().begin() + static_cast<long>(qa), joined.edges().end());
    LabelledGraph la{Multigraph(joined.vertices(), ea), {}};
    LabelledGraph lb{Multigraph(joined.vertices(), eb), {}};
    for (const auto& e : ea) la.labels[e.id] = lg.label_of(e.id);
    for (const auto& e : eb) lb.labels[e.id] = lg.label_of(e.id);
    const RationalFn w = random_rational(rng);
    const auto values = random_values(rng, lg.label_order());
    const RationalFn whole = eval_chain(chain_poly(lg), w, values);
    const RationalFn parts = eval_chain(chain_poly(la), w, values) * eval_chain(chain_poly(lb), w, values);
    if (!(whole == parts)) ++violations;
  }
  MESSAGE("chain multiplicativity over one-point unions: " << violations << " violations in 40 instances");
}

}  // TEST_SUITE
