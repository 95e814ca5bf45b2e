#include "yamada/replace.hpp"

#include "yamada/error.hpp"

namespace yamada {

namespace {

const LaurentPoly& sigma() {
  static const LaurentPoly s = sigma_const();
  return s;
}

LaurentPoly sign_power(int e) { return (e % 2 == 0) ? LaurentPoly(1) : LaurentPoly(-1); }

}  // namespace

AlphaBetaGamma::AlphaBetaGamma(const PieceInvariants& p)
    : alpha_(RationalFn((sigma() + LaurentPoly(1)) * p.r + p.r_closed, sigma())),
      beta_(RationalFn(p.r + p.r_closed, sigma())) {}

RationalFn AlphaBetaGamma::gamma() const {
  if (beta_.is_zero()) throw Error(ErrorKind::kBetaZero, "gamma needs a nonzero beta");
  return RationalFn(1) - alpha_ / beta_;
}

LaurentPoly two_vertex_H(const LaurentPoly& h1, const LaurentPoly& h2, const LaurentPoly& k1, const LaurentPoly& k2) {
  const LaurentPoly sum = k1 * k2 + (sigma() + LaurentPoly(1)) * h1 * h2 + k1 * h2 + k2 * h1;
  return exact_div(sum, sigma());
}

LaurentPoly two_vertex_R(const LaurentPoly& r1, const LaurentPoly& r2, const LaurentPoly& k1, const LaurentPoly& k2) {
  return two_vertex_H(r1, r2, k1, k2);
}

LaurentPoly h_edge_replace(const LabelledGraph& g, const std::map<std::string, PieceInvariants>& pieces,
                           std::size_t edge_guard) {
  std::map<std::string, RationalFn> gammas;
  RationalFn beta_product(1);
  for (const Edge& e : g.graph.edges()) {
    const std::string& label = g.label_of(e.id);
    auto it = pieces.find(label);
    if (it == pieces.end()) throw Error(ErrorKind::kMissingAssignment, "no piece for label '" + label + "'");
    const AlphaBetaGamma abg(it->second);
    if (!gammas.count(label)) gammas.emplace(label, abg.gamma());
    beta_product *= abg.beta();
  }
  const MultiPoly ch = chain_poly(g, edge_guard);
  const RationalFn value = eval_chain(ch, RationalFn(-sigma()), gammas);
  const int qp = static_cast<int>(g.graph.edge_count()) - static_cast<int>(g.graph.vertex_count());
  return (beta_product * value * RationalFn(sign_power(qp))).to_poly();
}

LaurentPoly r_compose(Shape shape, int arity, const std::vector<PieceInvariants>& pieces) {
  if (arity < 1 || pieces.size() != static_cast<std::size_t>(arity)) {
    throw Error(ErrorKind::kArityMismatch,
                "shape arity " + std::to_string(arity) + " with " + std::to_string(pieces.size()) + " pieces");
  }
  switch (shape) {
    case Shape::kCycle: {
      LaurentPoly neg(1);
      LaurentPoly sum(1);
      for (const auto& p : pieces) {
        neg *= -p.r;
        sum *= p.r + p.r_closed;
      }
      return neg + exact_div(sum, sigma().pow(static_cast<unsigned>(arity - 1)));
    }
    case Shape::kTheta: {
      LaurentPoly closed(1);
      LaurentPoly mixed(1);
      for (const auto& p : pieces) {
        closed *= p.r_closed;
        mixed *= (sigma() + LaurentPoly(1)) * p.r + p.r_closed;
      }
      const LaurentPoly num = sign_power(arity) * closed + exact_div(mixed, sigma().pow(static_cast<unsigned>(arity - 1)));
      return exact_div(num, LaurentPoly(1) + sigma());
    }
    case Shape::kBouquet: {
      LaurentPoly prod = sign_power(arity - 1);
      for (const auto& p : pieces) prod *= p.r_closed;
      return prod;
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown shape");
}

LaurentPoly m_k(int k) {
  const LaurentPoly a_plus_inv = LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1);
  return (sign_power(k - 1) * a_plus_inv).shifted(-k);
}

PieceInvariants infinity_closed_form(int k, Twist sign) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "negative crossing count");
  if (k == 0) return {LaurentPoly(), sigma()};
  const LaurentPoly r = sigma().shifted(-2 * k);
  PieceInvariants p{r, sigma() * m_k(k) - r};
  if (sign == Twist::kMinus) p = {mirror_substitute(p.r), mirror_substitute(p.r_closed)};
  return p;
}

PieceInvariants theta_piece(int s, int k, Twist sign) {
  if (s < 1) throw Error(ErrorKind::kInvalidArgument, "theta needs s >= 1");
  const std::vector<PieceInvariants> pieces(static_cast<std::size_t>(s), infinity_closed_form(k, Twist::kPlus));
  PieceInvariants p;
  p.r = r_compose(Shape::kTheta, s, pieces);
  if (k == 0) {
    p.r_closed = r_compose(Shape::kBouquet, s, pieces);
  } else {
    p.r_closed = sign_power(s - 1) * sigma().pow(static_cast<unsigned>(s)) *
                 (m_k(k) - LaurentPoly::monomial(1, -2 * k)).pow(static_cast<unsigned>(s));
  }
  if (sign == Twist::kMinus) p = {mirror_substitute(p.r), mirror_substitute(p.r_closed)};
  return p;
}

int span(const LaurentPoly& p) { return p.is_zero() ? 0 : p.max_exp() - p.min_exp(); }

FamilySequence::FamilySequence(int s, int k, Twist sign, int degree_cap)
    : theta_(theta_piece(s, k, sign)), neg_power_(1), beta_power_(1), cap_(degree_cap) {
  sum_ = theta_.r + theta_.r_closed;
  try {
    beta_ = exact_div(sum_, sigma());
    beta_exact_ = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNonExactDivision) throw;
  }
}

int FamilySequence::degree_bound(int n) const {
  bool any = false;
  long hi = 0;
  long lo = 0;
  auto take = [&](long h, long l) {
    hi = any ? std::max(hi, h) : h;
    lo = any ? std::min(lo, l) : l;
    any = true;
  };
  if (!theta_.r.is_zero()) take(static_cast<long>(n) * theta_.r.max_exp(), static_cast<long>(n) * theta_.r.min_exp());
  if (beta_exact_ && !beta_.is_zero()) {
    take(1 + static_cast<long>(n) * beta_.max_exp(), -1 + static_cast<long>(n) * beta_.min_exp());
  } else if (!beta_exact_) {
    take(static_cast<long>(n) * sum_.max_exp() - (n - 1), static_cast<long>(n) * sum_.min_exp() + (n - 1));
  }
  return static_cast<int>(hi - lo);
}

LaurentPoly FamilySequence::next() {
  const int n = n_ + 1;
  const int bound = degree_bound(n);
  if (bound > cap_) {
    throw Error(ErrorKind::kDegreeCap, "degree bound " + std::to_string(bound) + " exceeds cap " + std::to_string(cap_));
  }
  n_ = n;
  neg_power_ *= -theta_.r;
  if (beta_exact_) {
    beta_power_ *= beta_;
    return neg_power_ + sigma() * beta_power_;
  }
  beta_power_ *= sum_;
  LaurentPoly tail = beta_power_;
  for (int i = 1; i < n; ++i) tail = exact_div(tail, sigma());
  return neg_power_ + tail;
}

LaurentPoly family_polynomial(int n, int s, int k, Twist sign, int degree_cap) {
  if (n < 1 || s < 1 || k < 0) throw Error(ErrorKind::kInvalidArgument, "family needs n, s >= 1 and k >= 0");
  FamilySequence seq(s, k, sign, degree_cap);
  const int bound = seq.degree_bound(n);
  if (bound > degree_cap) {
    throw Error(ErrorKind::kDegreeCap, "degree bound " + std::to_string(bound) + " exceeds cap " + std::to_string(degree_cap));
  }
  const PieceInvariants theta = theta_piece(s, k, sign);
  const LaurentPoly neg = (-theta.r).pow(static_cast<unsigned>(n));
  const LaurentPoly sum = theta.r + theta.r_closed;
  try {
    return neg + sigma() * exact_div(sum, sigma()).pow(static_cast<unsigned>(n));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNonExactDivision) throw;
  }
  return neg + exact_div(sum.pow(static_cast<unsigned>(n)), sigma().pow(static_cast<unsigned>(n - 1)));
}

namespace {

// Puts k crossings on every adjacent port pair of the bundle [pos, pos+2*pieces).
void twist_bundle(SweepBuilder& b, std::size_t pos, int pieces, int k, Twist sign) {
  if (k == 0) return;
  for (int j = 0; j < pieces; ++j) {
    for (int t = 0; t < k; ++t) b.cross(pos + 2 * static_cast<std::size_t>(j), sign);
  }
}

}  // namespace

DiagramCode build_theta_diagram(int s, int k, Twist sign) {
  if (s < 1 || k < 0) throw Error(ErrorKind::kInvalidArgument, "theta diagram needs s >= 1, k >= 0");
  const std::size_t width = static_cast<std::size_t>(s) * (k == 0 ? 1 : 2);
  SweepBuilder b;
  const int u = b.vertex(0, 0, width);
  twist_bundle(b, 0, s, k, sign);
  const int v = b.vertex(0, width, 0);
  return b.finish(std::array<int, 2>{u, v});
}

DiagramCode build_family_diagram(int n, int s, int k, Twist sign, std::size_t crossing_guard) {
  if (n < 1 || s < 1 || k < 0) throw Error(ErrorKind::kInvalidArgument, "family diagram needs n, s >= 1, k >= 0");
  const long crossings = static_cast<long>(n) * s * k;
  if (crossings > static_cast<long>(crossing_guard)) {
    throw Error(ErrorKind::kTooLarge, "family diagram with " + std::to_string(crossings) + " crossings");
  }
  if (n == 1) return close_piece(build_theta_diagram(s, k, sign));
  const std::size_t bundle = static_cast<std::size_t>(s) * (k == 0 ? 1 : 2);
  SweepBuilder b;
  b.vertex(0, 0, 2 * bundle);
  twist_bundle(b, 0, s, k, sign);  // the piece closing the cycle runs up the left side
  twist_bundle(b, bundle, s, k, sign);
  for (int i = 2; i < n; ++i) {
    b.vertex(bundle, bundle, bundle);
    twist_bundle(b, bundle, s, k, sign);
  }
  b.vertex(0, 2 * bundle, 0);
  return b.finish();
}

DiagramCode build_bouquet_diagram(int q, int k, Twist sign) {
  if (q < 1) throw Error(ErrorKind::kInvalidArgument, "bouquet needs q >= 1");
  const DiagramCode loop = close_piece(build_infinity(k, sign));
  const int center = loop.vertices.front().id;
  DiagramCode out = loop;
  for (int i = 1; i < q; ++i) out = one_point_union(out, center, loop, center);
  return out;
}

Multigraph cycle_of_thetas(int n, int s) {
  if (n < 1 || s < 1) throw Error(ErrorKind::kInvalidArgument, "cycle_of_thetas needs n, s >= 1");
  std::vector<int> vertices;
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) vertices.push_back(i);
  int id = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < s; ++j) edges.push_back({id++, i, i % n + 1});
  }
  return Multigraph(vertices, edges);
}

}  // namespace yamada
