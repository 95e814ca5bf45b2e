#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamada/multigraph.hpp"
#include "yamada/rational.hpp"

namespace yamada {

/// Multigraph whose edges carry labels; several edges may share a label.
struct LabelledGraph {
  Multigraph graph;
  std::map<int, std::string> labels;  // edge id -> label

  /// Distinct labels in order of first appearance by ascending edge id.
  std::vector<std::string> label_order() const;
  const std::string& label_of(int edge_id) const;

  /// Labels every edge with its own name "a<edge id>".
  static LabelledGraph with_distinct_labels(Multigraph g);
  /// Labels every edge with the same name.
  static LabelledGraph with_uniform_label(Multigraph g, const std::string& label);
};

/// Integer polynomial over a fixed variable list; variable 0 is always w.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(std::vector<std::string> variables, const BigInt& c);
  static MultiPoly variable(std::vector<std::string> variables, std::size_t index);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::map<Exponents, BigInt>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& other) const;

  std::vector<std::string> variables_;
  std::map<Exponents, BigInt> terms_;
};

/// Chain polynomial by the loop / non-loop recursion, pivoting on the
/// smallest edge id. Variables are w followed by label_order().
MultiPoly chain_poly(const LabelledGraph& g, std::size_t edge_guard = kDefaultEdgeGuard);

/// Chain polynomial from its subset expansion over flow polynomials.
MultiPoly chain_flow_oracle(const LabelledGraph& g, std::size_t edge_guard = 12);

/// Substitutes w and every label; MissingAssignment if a label has no value.
RationalFn eval_chain(const MultiPoly& ch, const RationalFn& w_value,
                      const std::map<std::string, RationalFn>& label_values);

}  // namespace yamada
