#include "yamada/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace yamada {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

Json graph_json(const Multigraph& g) {
  Json j;
  j["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.id, e.u, e.v});
  j["edges"] = edges;
  return j;
}

Multigraph graph_from(const Json& j) {
  std::vector<int> vertices = j.at("vertices").get<std::vector<int>>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::kParse, "edge must be [id, u, v]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  return Multigraph(std::move(vertices), std::move(edges));
}

Json diagram_json(const DiagramCode& code) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : code.vertices) vs.push_back(Json{{"id", v.id}, {"ends", v.ends}});
  Json cs = Json::array();
  for (const auto& c : code.crossings) cs.push_back(Json{{"id", c.id}, {"ends", c.ends}, {"over", c.over}});
  Json arcs = Json::array();
  for (const auto& a : code.arcs) arcs.push_back({a[0], a[1]});
  j["vertices"] = vs;
  j["crossings"] = cs;
  j["arcs"] = arcs;
  if (code.attach) j["attach"] = {(*code.attach)[0], (*code.attach)[1]};
  return j;
}

DiagramCode diagram_from(const Json& j) {
  DiagramCode code;
  for (const auto& v : j.at("vertices")) code.vertices.push_back({v.at("id").get<int>(), v.at("ends").get<std::vector<int>>()});
  if (j.contains("crossings")) {
    for (const auto& c : j.at("crossings")) {
      const auto over = c.at("over").get<std::vector<int>>();
      if (over.size() != 2) throw Error(ErrorKind::kBadCrossingArity, "over pair must name two ends");
      code.crossings.push_back({c.at("id").get<int>(), c.at("ends").get<std::vector<int>>(), {over[0], over[1]}});
    }
  }
  for (const auto& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 2) throw Error(ErrorKind::kParse, "arc must be a pair");
    code.arcs.push_back({a[0].get<int>(), a[1].get<int>()});
  }
  if (j.contains("attach") && !j.at("attach").is_null()) {
    const auto at = j.at("attach").get<std::vector<int>>();
    if (at.size() != 2) throw Error(ErrorKind::kParse, "attach must be a pair");
    code.attach = std::array<int, 2>{at[0], at[1]};
  }
  code = canonical(std::move(code));
  validate(code);
  return code;
}

Json poly_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) terms.push_back({t.exp, t.coef.get_str()});
  return Json{{"poly", p.to_string()}, {"terms", terms}};
}

LaurentPoly poly_from(const Json& j) {
  if (j.is_string()) return LaurentPoly::parse(j.get<std::string>());
  if (j.contains("terms")) {
    std::vector<LaurentPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      BigInt c;
      if (c.set_str(t.at(1).get<std::string>(), 10) != 0) throw Error(ErrorKind::kParse, "bad coefficient");
      terms.push_back({t.at(0).get<int>(), c});
    }
    return LaurentPoly::from_terms(std::move(terms));
  }
  return LaurentPoly::parse(j.at("poly").get<std::string>());
}

Json record_json(const RootRecord& r) {
  return Json{{"re", r.root.real()}, {"im", r.root.imag()}, {"n", r.n}, {"s", r.s}, {"k", r.k},
              {"sign", twist_symbol(r.sign)}, {"residual", r.residual}, {"degree", r.degree}};
}

RootRecord record_from(const Json& j) {
  RootRecord r;
  r.root = Complex(j.at("re").get<double>(), j.at("im").get<double>());
  r.n = j.at("n").get<int>();
  r.s = j.at("s").get<int>();
  r.k = j.at("k").get<int>();
  r.sign = parse_twist(j.at("sign").get<std::string>());
  r.residual = j.at("residual").get<double>();
  r.degree = j.at("degree").get<int>();
  return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

Multigraph parse_graph(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] { return graph_from(j); });
}

std::string graph_to_json(const Multigraph& g) { return dump(graph_json(g)); }

LabelledGraph parse_labelled_graph(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] {
    LabelledGraph lg = LabelledGraph::with_distinct_labels(graph_from(j));
    if (j.contains("labels")) {
      for (const auto& [key, value] : j.at("labels").items()) {
        int id = 0;
        try {
          id = std::stoi(key);
        } catch (const std::exception&) {
          throw Error(ErrorKind::kParse, "label key '" + key + "' is not an edge id");
        }
        lg.graph.edge(id);
        lg.labels[id] = value.get<std::string>();
      }
    }
    return lg;
  });
}

std::string labelled_graph_to_json(const LabelledGraph& g) {
  Json j = graph_json(g.graph);
  Json labels = Json::object();
  for (const auto& [id, label] : g.labels) labels[std::to_string(id)] = label;
  j["labels"] = labels;
  return dump(j);
}

DiagramCode parse_diagram(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] { return diagram_from(j); });
}

std::string diagram_to_json(const DiagramCode& code) { return dump(diagram_json(code)); }

std::string poly_to_json(const LaurentPoly& p) { return dump(poly_json(p)); }

LaurentPoly parse_poly_json(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] { return poly_from(j); });
}

std::string multipoly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, c.get_str()});
  return dump(Json{{"variables", p.variables()}, {"poly", p.to_string()}, {"terms", terms}});
}

std::string pieces_to_json(const PieceInvariants& p) {
  return dump(Json{{"r", p.r.to_string()}, {"r_closed", p.r_closed.to_string()}});
}

PieceInvariants parse_pieces(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] { return PieceInvariants{poly_from(j.at("r")), poly_from(j.at("r_closed"))}; });
}

CompositionRequest parse_composition(std::string_view json, const StateSumOptions& options) {
  const Json j = parse_json(json);
  return guarded([&] {
    CompositionRequest req{};
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "cycle") {
      req.shape = Shape::kCycle;
    } else if (shape == "theta") {
      req.shape = Shape::kTheta;
    } else if (shape == "bouquet") {
      req.shape = Shape::kBouquet;
    } else {
      throw Error(ErrorKind::kParse, "unknown shape '" + shape + "'");
    }
    for (const auto& piece : j.at("pieces")) {
      if (piece.contains("family")) {
        const auto& f = piece.at("family");
        req.pieces.push_back(infinity_closed_form(f.at("k").get<int>(), parse_twist(f.value("sign", std::string("+")))));
      } else if (piece.contains("diagram")) {
        const DiagramCode code = diagram_from(piece.at("diagram"));
        req.pieces.push_back({yamada_R(code, options), yamada_R(close_piece(code), options)});
      } else {
        req.pieces.push_back({poly_from(piece.at("r")), poly_from(piece.at("r_closed"))});
      }
    }
    req.arity = j.contains("arity") ? j.at("arity").get<int>() : static_cast<int>(req.pieces.size());
    return req;
  });
}

std::string density_to_json(const DensityResult& r) {
  Json j;
  j["target"] = {{"re", r.target.real()}, {"im", r.target.imag()}};
  j["epsilon"] = r.epsilon;
  j["caps"] = {{"k_max", r.caps.k_max}, {"s_max", r.caps.s_max}, {"n_max", r.caps.n_max}, {"degree_cap", r.caps.degree_cap}};
  j["found"] = r.witness.has_value();
  if (r.witness) {
    j["witness"] = {{"root", record_json(r.witness->found)}, {"distance", r.witness->distance}};
  } else {
    j["witness"] = nullptr;
  }
  j["closest"] = r.closest ? record_json(*r.closest) : Json(nullptr);
  j["best_distance"] = r.closest ? Json(r.best_distance) : Json(nullptr);
  j["cells_searched"] = r.cells_searched;
  return dump(j);
}

DensityResult parse_density(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] {
    DensityResult r;
    r.target = Complex(j.at("target").at("re").get<double>(), j.at("target").at("im").get<double>());
    r.epsilon = j.at("epsilon").get<double>();
    const auto& c = j.at("caps");
    r.caps = {c.at("k_max").get<int>(), c.at("s_max").get<int>(), c.at("n_max").get<int>(), c.at("degree_cap").get<int>()};
    if (!j.at("witness").is_null()) {
      const auto& w = j.at("witness");
      r.witness = Witness{r.target, r.epsilon, record_from(w.at("root")), w.at("distance").get<double>()};
    }
    if (!j.at("closest").is_null()) {
      r.closest = record_from(j.at("closest"));
      r.best_distance = j.at("best_distance").get<double>();
    }
    r.cells_searched = j.at("cells_searched").get<int>();
    return r;
  });
}

std::string roots_to_json(const std::vector<RootRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return dump(Json{{"roots", arr}});
}

std::vector<RootRecord> parse_roots(std::string_view json) {
  const Json j = parse_json(json);
  return guarded([&] {
    std::vector<RootRecord> out;
    for (const auto& r : j.at("roots")) out.push_back(record_from(r));
    return out;
  });
}

Twist parse_twist(std::string_view text) {
  if (text == "+" || text == "plus") return Twist::kPlus;
  if (text == "-" || text == "minus") return Twist::kMinus;
  throw Error(ErrorKind::kParse, "sign must be + or -");
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  if (s.empty()) throw Error(ErrorKind::kParse, "empty complex number");
  auto number = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "bad number '" + part + "'");
    }
    if (used != part.size()) throw Error(ErrorKind::kParse, "bad number '" + part + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') {
    const std::string real = s;
    if (real == "+" || real == "-") throw Error(ErrorKind::kParse, "bad number '" + real + "'");
    return {number(real), 0.0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(s.substr(0, split)), number(s.substr(split))};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

}  // namespace yamada
