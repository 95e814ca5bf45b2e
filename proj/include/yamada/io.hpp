#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "yamada/chain.hpp"
#include "yamada/diagram.hpp"
#include "yamada/replace.hpp"
#include "yamada/roots.hpp"

namespace yamada {

// JSON readers throw Parse on malformed text and propagate the domain errors
// of the constructed objects. Writers emit keys in a fixed order.

Multigraph parse_graph(std::string_view json);
std::string graph_to_json(const Multigraph& g);

/// Graph JSON plus "labels": {"<edge id>": "<label>"}; unlabelled edges get
/// their own label "a<edge id>".
LabelledGraph parse_labelled_graph(std::string_view json);
std::string labelled_graph_to_json(const LabelledGraph& g);

DiagramCode parse_diagram(std::string_view json);
std::string diagram_to_json(const DiagramCode& code);

/// {"poly": "<text>", "terms": [[exp, "coef"], ...]}; the reader accepts either key.
std::string poly_to_json(const LaurentPoly& p);
LaurentPoly parse_poly_json(std::string_view json);

std::string multipoly_to_json(const MultiPoly& p);

std::string pieces_to_json(const PieceInvariants& p);
PieceInvariants parse_pieces(std::string_view json);

/// {"shape": "cycle"|"theta"|"bouquet", "arity": n, "pieces": [...]} where a
/// piece is {"family": {"k": 2, "sign": "+"}}, {"diagram": {...}} (with an
/// attach pair) or {"r": "...", "r_closed": "..."}.
struct CompositionRequest {
  Shape shape;
  int arity;
  std::vector<PieceInvariants> pieces;
};
CompositionRequest parse_composition(std::string_view json, const StateSumOptions& options = {});

std::string density_to_json(const DensityResult& r);
DensityResult parse_density(std::string_view json);

std::string roots_to_json(const std::vector<RootRecord>& records);
std::vector<RootRecord> parse_roots(std::string_view json);

Twist parse_twist(std::string_view text);
/// Accepts "0.5+0.5i", "0.5i", "-2", "1e-1-3i".
Complex parse_complex(std::string_view text);
std::string format_double(double v);
std::string format_complex(Complex z);

}  // namespace yamada
