#include "yamada/chain.hpp"

#include <algorithm>
#include <sstream>

#include "yamada/error.hpp"

namespace yamada {

std::vector<std::string> LabelledGraph::label_order() const {
  std::vector<std::string> order;
  for (const Edge& e : graph.edges()) {
    const std::string& l = label_of(e.id);
    if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
  }
  return order;
}

const std::string& LabelledGraph::label_of(int edge_id) const {
  auto it = labels.find(edge_id);
  if (it == labels.end()) throw Error(ErrorKind::kMissingAssignment, "edge " + std::to_string(edge_id) + " has no label");
  return it->second;
}

LabelledGraph LabelledGraph::with_distinct_labels(Multigraph g) {
  LabelledGraph lg{std::move(g), {}};
  for (const Edge& e : lg.graph.edges()) lg.labels[e.id] = "a" + std::to_string(e.id);
  return lg;
}

LabelledGraph LabelledGraph::with_uniform_label(Multigraph g, const std::string& label) {
  LabelledGraph lg{std::move(g), {}};
  for (const Edge& e : lg.graph.edges()) lg.labels[e.id] = label;
  return lg;
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, const BigInt& c) {
  MultiPoly p(std::move(variables));
  if (c != 0) p.terms_[Exponents(p.variables_.size(), 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, std::size_t index) {
  MultiPoly p(std::move(variables));
  Exponents e(p.variables_.size(), 0);
  e.at(index) = 1;
  p.terms_[e] = 1;
  return p;
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (variables_ != other.variables_) throw Error(ErrorKind::kInvalidArgument, "MultiPoly variable sets differ");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MultiPoly::Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto [it, inserted] = r.terms_.try_emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Higher total degree first, then reverse lexicographic on exponents.
  std::vector<std::pair<Exponents, BigInt>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    int dx = 0;
    int dy = 0;
    for (int v : x.first) dx += v;
    for (int v : y.first) dy += v;
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  for (const auto& [e, c] : sorted) {
    const bool negative = c < 0;
    BigInt mag = abs(c);
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    bool any_var = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any_var) mono << '*';
      mono << variables_[i];
      if (e[i] != 1) mono << '^' << e[i];
      any_var = true;
    }
    if (!any_var) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << mono.str();
    }
  }
  return os.str();
}

namespace {

std::vector<std::string> chain_variables(const LabelledGraph& g) {
  std::vector<std::string> vars{"w"};
  for (auto& l : g.label_order()) {
    if (l == "w") throw Error(ErrorKind::kInvalidArgument, "label 'w' collides with the chain variable");
    vars.push_back(l);
  }
  return vars;
}

std::size_t var_index(const std::vector<std::string>& vars, const std::string& label) {
  return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), label) - vars.begin());
}

MultiPoly chain_rec(const Multigraph& g, const LabelledGraph& lg, const std::vector<std::string>& vars) {
  if (g.edge_count() == 0) return MultiPoly::constant(vars, 1);
  const Edge& e = g.edges().front();
  MultiPoly a = MultiPoly::variable(vars, var_index(vars, lg.label_of(e.id)));
  if (e.is_loop()) return (a - MultiPoly::variable(vars, 0)) * chain_rec(g.deleted(e.id), lg, vars);
  return (a - MultiPoly::constant(vars, 1)) * chain_rec(g.deleted(e.id), lg, vars) +
         chain_rec(g.contracted(e.id), lg, vars);
}

}  // namespace

MultiPoly chain_poly(const LabelledGraph& g, std::size_t edge_guard) {
  if (g.graph.edge_count() > edge_guard) {
    throw Error(ErrorKind::kTooLarge, "chain_poly: " + std::to_string(g.graph.edge_count()) + " edges");
  }
  const auto vars = chain_variables(g);
  return chain_rec(g.graph, g, vars);
}

MultiPoly chain_flow_oracle(const LabelledGraph& g, std::size_t edge_guard) {
  const std::size_t q = g.graph.edge_count();
  if (q > edge_guard) throw Error(ErrorKind::kTooLarge, "chain_flow_oracle: " + std::to_string(q) + " edges");
  const auto vars = chain_variables(g);
  const MultiPoly one_minus_w = MultiPoly::constant(vars, 1) - MultiPoly::variable(vars, 0);
  std::vector<MultiPoly> t_powers{MultiPoly::constant(vars, 1)};
  MultiPoly result(vars);
  for (std::size_t y = 0; y < (std::size_t{1} << q); ++y) {
    Multigraph rest = g.graph;
    MultiPoly labels = MultiPoly::constant(vars, 1);
    for (std::size_t i = 0; i < q; ++i) {
      if (!((y >> i) & 1U)) continue;
      const Edge& e = g.graph.edges()[i];
      rest = rest.deleted(e.id);
      labels = labels * MultiPoly::variable(vars, var_index(vars, g.label_of(e.id)));
    }
    const LaurentPoly flow = flow_poly(rest, q);
    MultiPoly flow_at(vars);
    for (const auto& t : flow.terms()) {
      while (t_powers.size() <= static_cast<std::size_t>(t.exp)) t_powers.push_back(t_powers.back() * one_minus_w);
      flow_at += t_powers[static_cast<std::size_t>(t.exp)] * MultiPoly::constant(vars, t.coef);
    }
    result += flow_at * labels;
  }
  return result;
}

RationalFn eval_chain(const MultiPoly& ch, const RationalFn& w_value,
                      const std::map<std::string, RationalFn>& label_values) {
  const auto& vars = ch.variables();
  std::vector<const RationalFn*> values{&w_value};
  for (std::size_t i = 1; i < vars.size(); ++i) {
    auto it = label_values.find(vars[i]);
    if (it == label_values.end()) throw Error(ErrorKind::kMissingAssignment, "no value for label '" + vars[i] + "'");
    values.push_back(&it->second);
  }
  std::vector<std::vector<RationalFn>> powers(vars.size(), std::vector<RationalFn>{RationalFn(1)});
  RationalFn sum;
  for (const auto& [e, c] : ch.terms()) {
    RationalFn term(LaurentPoly::monomial(c, 0));
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= static_cast<std::size_t>(e[i])) pw.push_back(pw.back() * *values[i]);
      if (e[i] > 0) term *= pw[static_cast<std::size_t>(e[i])];
    }
    sum += term;
  }
  return sum;
}

}  // namespace yamada
