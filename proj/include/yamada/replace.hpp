#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamada/chain.hpp"
#include "yamada/diagram.hpp"
#include "yamada/rational.hpp"

namespace yamada {

/// Invariants of a replacement piece: r = R[g] (or H(K)) and r_closed = the
/// same invariant after identifying the two attachment vertices.
struct PieceInvariants {
  LaurentPoly r;
  LaurentPoly r_closed;
  friend bool operator==(const PieceInvariants&, const PieceInvariants&) = default;
};

class AlphaBetaGamma {
 public:
  explicit AlphaBetaGamma(const PieceInvariants& p);

  const RationalFn& alpha() const noexcept { return alpha_; }
  const RationalFn& beta() const noexcept { return beta_; }
  /// 1 - alpha/beta; BetaZero when beta = 0.
  RationalFn gamma() const;

 private:
  RationalFn alpha_;
  RationalFn beta_;
};

inline AlphaBetaGamma alpha_beta_gamma(const PieceInvariants& p) { return AlphaBetaGamma(p); }

/// Two graphs sharing exactly two vertices; h = H(G_i), k = H(K_i) with the
/// shared vertices identified.
LaurentPoly two_vertex_H(const LaurentPoly& h1, const LaurentPoly& h2, const LaurentPoly& k1, const LaurentPoly& k2);
/// Same formula for diagrams.
LaurentPoly two_vertex_R(const LaurentPoly& r1, const LaurentPoly& r2, const LaurentPoly& k1, const LaurentPoly& k2);

/// H(G(K_E)) from Ch(G): every edge with label a is replaced by a piece with
/// invariants pieces[a].
LaurentPoly h_edge_replace(const LabelledGraph& g, const std::map<std::string, PieceInvariants>& pieces,
                           std::size_t edge_guard = kDefaultEdgeGuard);

enum class Shape { kCycle, kTheta, kBouquet };

/// R of the cycle, theta or bouquet with its edges replaced by the pieces.
/// ArityMismatch if pieces.size() != arity.
LaurentPoly r_compose(Shape shape, int arity, const std::vector<PieceInvariants>& pieces);

/// Closed forms for the twisted piece with k crossings; k = 0 is the plain edge.
PieceInvariants infinity_closed_form(int k, Twist sign);

/// (-1)^(k-1) A^-k (A + A^-1).
LaurentPoly m_k(int k);

/// Invariants of the theta piece whose s edges are k-twisted pieces.
PieceInvariants theta_piece(int s, int k, Twist sign);

inline constexpr int kDefaultDegreeCap = 4000;

/// Span (max minus min exponent) of a Laurent polynomial; 0 for zero.
int span(const LaurentPoly& p);

/// R of the n-cycle whose edges are theta pieces of twisted pieces.
LaurentPoly family_polynomial(int n, int s, int k, Twist sign, int degree_cap = kDefaultDegreeCap);

/// The same family for n = 1, 2, 3, ... reusing powers between steps.
class FamilySequence {
 public:
  FamilySequence(int s, int k, Twist sign, int degree_cap = kDefaultDegreeCap);
  /// Degree bound of the member n (used to check the cap without computing).
  int degree_bound(int n) const;
  /// Polynomial for the next n; DegreeCap once the bound passes the cap.
  LaurentPoly next();
  int n() const noexcept { return n_; }

 private:
  PieceInvariants theta_;
  LaurentPoly beta_;          // (R + R')/sigma when exact
  bool beta_exact_ = false;
  LaurentPoly sum_;           // R + R'
  LaurentPoly neg_power_;     // (-R)^n
  LaurentPoly beta_power_;    // beta^n or (R + R')^n
  int n_ = 0;
  int cap_;
};

/// Theta_s of twisted pieces as a code, attach set to the two theta vertices.
DiagramCode build_theta_diagram(int s, int k, Twist sign);

/// Explicit code of the family member; TooLarge when n*s*k exceeds the guard.
DiagramCode build_family_diagram(int n, int s, int k, Twist sign = Twist::kPlus, std::size_t crossing_guard = 14);

/// Bouquet of q closed k-twisted pieces sharing one vertex.
DiagramCode build_bouquet_diagram(int q, int k, Twist sign);

/// Abstract C_n(Theta_s): n vertices in a cycle, consecutive ones joined by
/// s parallel edges (n*s edges).
Multigraph cycle_of_thetas(int n, int s);

}  // namespace yamada
