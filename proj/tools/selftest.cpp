#include "selftest.hpp"

#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "yamada/chain.hpp"
#include "yamada/error.hpp"
#include "yamada/multigraph.hpp"
#include "yamada/replace.hpp"

namespace yamada::cli {

namespace {

LaurentPoly A(int e) { return LaurentPoly::monomial(1, e); }

struct Item {
  std::string name;
  std::function<bool()> check;
};

MultiPoly product_minus(const std::vector<std::string>& vars, bool per_factor_w) {
  MultiPoly w = MultiPoly::variable(vars, 0);
  MultiPoly acc = MultiPoly::constant(vars, 1);
  for (std::size_t i = 1; i < vars.size(); ++i) {
    MultiPoly a = MultiPoly::variable(vars, i);
    acc = acc * (per_factor_w ? a - w : a);
  }
  return per_factor_w ? acc : acc - w;
}

}  // namespace

int run_selftest(std::ostream& out, SmoothingConvention convention) {
  const LaurentPoly sigma = sigma_const();
  StateSumOptions opt;
  opt.convention = convention;
  auto R = [&](const DiagramCode& d) { return yamada_R(d, opt); };
  auto pw = [](const LaurentPoly& p, int e) { return p.pow(static_cast<unsigned>(e)); };

  std::vector<Item> items;
  items.push_back({"laurent.sigma", [&] { return sigma == LaurentPoly::parse("A + 1 + A^-1"); }});
  items.push_back({"multigraph.single_vertex", [&] {
                     return yamada_H(Multigraph::single_vertex()) == LaurentPoly(-1) &&
                            h_subset_oracle(Multigraph::single_vertex()) == LaurentPoly(-1);
                   }});
  items.push_back({"multigraph.cycle", [&] {
                     for (int n = 1; n <= 6; ++n) {
                       if (yamada_H(Multigraph::cycle(n)) != sigma) return false;
                     }
                     return true;
                   }});
  items.push_back({"multigraph.bouquet", [&] {
                     for (int q = 1; q <= 6; ++q) {
                       if (yamada_H(Multigraph::bouquet(q)) != LaurentPoly(q % 2 == 1 ? 1 : -1) * pw(sigma, q)) return false;
                     }
                     return true;
                   }});
  items.push_back({"multigraph.theta", [&] {
                     for (int s = 1; s <= 6; ++s) {
                       if ((sigma + 1) * yamada_H(Multigraph::theta(s)) != sigma + pw(-sigma, s)) return false;
                     }
                     return true;
                   }});
  items.push_back({"chain.cycle", [&] {
                     const auto lg = LabelledGraph::with_distinct_labels(Multigraph::cycle(4));
                     const MultiPoly ch = chain_poly(lg);
                     return ch == product_minus(ch.variables(), false);
                   }});
  items.push_back({"chain.bouquet", [&] {
                     const auto lg = LabelledGraph::with_distinct_labels(Multigraph::bouquet(3));
                     const MultiPoly ch = chain_poly(lg);
                     return ch == product_minus(ch.variables(), true);
                   }});
  items.push_back({"chain.theta", [&] {
                     for (int s = 1; s <= 4; ++s) {
                       const MultiPoly ch = chain_poly(LabelledGraph::with_distinct_labels(Multigraph::theta(s)));
                       const auto& v = ch.variables();
                       const MultiPoly one = MultiPoly::constant(v, 1);
                       const MultiPoly w = MultiPoly::variable(v, 0);
                       MultiPoly a = one;
                       MultiPoly b = one;
                       for (std::size_t i = 1; i < v.size(); ++i) {
                         a = a * (MultiPoly::variable(v, i) - w);
                         b = b * (MultiPoly::variable(v, i) - one);
                       }
                       if ((one - w) * ch != a - w * b) return false;
                     }
                     return true;
                   }});
  items.push_back({"diagram.calibration", [&] { return R(build_infinity(1, Twist::kPlus)) == sigma * A(-2); }});
  items.push_back({"diagram.crossing_free_cycle", [&] {
                     SweepBuilder b;
                     b.vertex(0, 0, 2);
                     b.vertex(1, 1, 1);
                     b.vertex(0, 2, 0);
                     return R(b.finish()) == sigma;
                   }});
  items.push_back({"diagram.infinity_powers", [&] {
                     for (int k = 1; k <= 5; ++k) {
                       if (R(build_infinity(k, Twist::kPlus)) != sigma * A(-2 * k)) return false;
                     }
                     return true;
                   }});
  items.push_back({"diagram.closed_infinity", [&] {
                     for (int k = 1; k <= 5; ++k) {
                       const LaurentPoly expect = LaurentPoly(k % 2 == 1 ? 1 : -1) * A(-k) * sigma * (A(1) + A(-1)) - A(-2 * k) * sigma;
                       if (R(close_piece(build_infinity(k, Twist::kPlus))) != expect) return false;
                     }
                     return true;
                   }});
  items.push_back({"diagram.mirror", [&] { return R(mirror(build_infinity(1, Twist::kPlus))) == sigma * A(2); }});
  items.push_back({"replace.cycle_of_infinity", [&] {
                     for (int n = 1; n <= 5; ++n) {
                       const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(n), infinity_closed_form(1, Twist::kPlus));
                       const LaurentPoly expect = pw(-(A(-2) * sigma), n) + sigma * pw(A(-2) + 1, n);
                       if (r_compose(Shape::kCycle, n, pieces) != expect) return false;
                     }
                     return true;
                   }});
  items.push_back({"replace.theta_of_infinity", [&] {
                     for (int s = 1; s <= 5; ++s) {
                       const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(s), infinity_closed_form(1, Twist::kPlus));
                       const LaurentPoly num = pw(-sigma, s) + sigma * pw((sigma + 1) * A(-2) + 1, s);
                       if ((sigma + 1) * r_compose(Shape::kTheta, s, pieces) != num) return false;
                     }
                     return true;
                   }});
  items.push_back({"replace.bouquet_of_infinity", [&] {
                     for (int q = 1; q <= 5; ++q) {
                       const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(q), infinity_closed_form(1, Twist::kPlus));
                       if (r_compose(Shape::kBouquet, q, pieces) != LaurentPoly(q % 2 == 1 ? 1 : -1) * pw(sigma, q)) return false;
                     }
                     return true;
                   }});
  items.push_back({"replace.cycle_of_theta_graphs", [&] {
                     for (int n = 1; n <= 3; ++n) {
                       for (int s = 1; s <= 3; ++s) {
                         const LaurentPoly h_theta = exact_div(sigma + pw(-sigma, s), sigma + 1);
                         const LaurentPoly h_bouquet = LaurentPoly(s % 2 == 1 ? 1 : -1) * pw(sigma, s);
                         const LaurentPoly expect =
                             pw(-h_theta, n) + exact_div(pw(h_theta + h_bouquet, n), pw(sigma, n - 1));
                         const auto lg = LabelledGraph::with_uniform_label(Multigraph::cycle(n), "a");
                         const LaurentPoly got = h_edge_replace(lg, {{"a", PieceInvariants{h_theta, h_bouquet}}});
                         if (got != expect) return false;
                         if (n * s <= 9 && yamada_H(cycle_of_thetas(n, s)) != expect) return false;
                       }
                     }
                     return true;
                   }});
  items.push_back({"replace.family_single_infinity", [&] {
                     for (int n = 1; n <= 5; ++n) {
                       if (family_polynomial(n, 1, 1, Twist::kPlus) != pw(-(A(-2) * sigma), n) + sigma * pw(A(-2) + 1, n)) return false;
                     }
                     return true;
                   }});
  items.push_back({"oracle.subset_expansion", [&] {
                     const std::vector<Multigraph> graphs{Multigraph::cycle(3), Multigraph::theta(4), Multigraph::bouquet(2),
                                                          Multigraph::path(3), cycle_of_thetas(3, 2)};
                     for (const auto& g : graphs) {
                       if (yamada_H(g) != h_subset_oracle(g)) return false;
                     }
                     return true;
                   }});
  items.push_back({"oracle.chain_flow", [&] {
                     for (const auto& g : {Multigraph::cycle(4), Multigraph::theta(3)}) {
                       const auto lg = LabelledGraph::with_distinct_labels(g);
                       if (chain_poly(lg) != chain_flow_oracle(lg)) return false;
                     }
                     return true;
                   }});
  items.push_back({"oracle.family_diagram", [&] {
                     for (const auto& [n, s, k] : std::vector<std::array<int, 3>>{{2, 1, 1}, {1, 2, 2}, {2, 2, 1}}) {
                       if (family_polynomial(n, s, k, Twist::kPlus) != R(build_family_diagram(n, s, k))) return false;
                     }
                     return true;
                   }});
  items.push_back({"cli.graph_h", [&] {
                     std::ostringstream o;
                     std::ostringstream e;
                     const int code = dispatch({"graph-h", "--json", R"({"vertices":[1,2,3],"edges":[[1,1,2],[2,2,3],[3,3,1]]})"}, o, e);
                     return code == 0 && o.str() == "A + 1 + A^-1\n";
                   }});

  int failures = 0;
  for (const auto& item : items) {
    bool ok = false;
    std::string note;
    try {
      ok = item.check();
    } catch (const Error& e) {
      note = std::string(" (") + e.what() + ")";
    }
    if (!ok) ++failures;
    out << (ok ? "PASS " : "FAIL ") << item.name << note << "\n";
  }
  out << (failures == 0 ? "selftest: all " + std::to_string(items.size()) + " items passed\n"
                        : "selftest: " + std::to_string(failures) + " of " + std::to_string(items.size()) + " items failed\n");
  return failures;
}

}  // namespace yamada::cli
