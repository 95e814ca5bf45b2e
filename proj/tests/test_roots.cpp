#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "yamada/error.hpp"
#include "yamada/replace.hpp"
#include "yamada/roots.hpp"

using namespace yamada;

namespace {

// found by `yamada omega --scan` over [-2,2]^2
const Complex kOutsideOmega{-0.76, -1.19};

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

int width(const LaurentPoly& p) { return p.max_exp() - p.min_exp(); }

Complex sigma_at(Complex z) { return z + 1.0 + 1.0 / z; }

// Every point of `a` has a partner in `b` within tol, matched greedily.
bool same_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& x : a) {
    std::size_t best = b.size();
    double bd = tol;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && std::abs(x - b[j]) <= bd) {
        bd = std::abs(x - b[j]);
        best = j;
      }
    }
    if (best == b.size()) return false;
    used[best] = 1;
  }
  return true;
}

std::vector<Complex> points(const std::vector<RootRecord>& rs) {
  std::vector<Complex> out;
  for (const auto& r : rs) out.push_back(r.root);
  return out;
}

double nearest(Complex z, const std::vector<Complex>& curve) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : curve) best = std::min(best, std::abs(z - c));
  return best;
}

// The gap straight from the expanded theta invariants, without the factored
// closed form used by the library.
struct OracleGap {
  PieceInvariants theta;
  OracleGap(int s, int k) : theta(theta_piece(s, k, Twist::kPlus)) {}
  std::pair<Complex, Complex> lambdas(Complex z) const {
    return {-eval_complex(theta.r, z), (eval_complex(theta.r, z) + eval_complex(theta.r_closed, z)) / sigma_at(z)};
  }
  double operator()(Complex z) const {
    const auto [l1, l2] = lambdas(z);
    return std::abs(l1) - std::abs(l2);
  }
};

}  // namespace

TEST_SUITE("roots") {

TEST_CASE("find_roots examples") {
  const LaurentPoly a = LaurentPoly::var();
  CHECK(same_multiset(find_roots(a * a - 1), {1.0, -1.0}, 1e-12));
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  CHECK(same_multiset(find_roots(sigma_const()), {w, std::conj(w)}, 1e-12));
  CHECK(kind_of([] { find_roots(LaurentPoly()); }) == ErrorKind::kZeroPolynomial);
  CHECK(find_roots(LaurentPoly::monomial(3, -4)).empty());
  // the shift by A^2 adds no root at 0
  CHECK(find_roots(LaurentPoly::monomial(1, -2) * (a - 2)).size() == 1);
}

TEST_CASE("find_roots on products of known factors") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = gen::uniform(rng, 1, 9);
    std::vector<Complex> expect;
    LaurentPoly p(1);
    for (int i = 0; i < d; ++i) {
      int r = 0;
      while (r == 0) r = gen::uniform(rng, -4, 4);
      expect.push_back(r);
      p = p * (LaurentPoly::var() - r);
    }
    p = p * LaurentPoly::monomial(1, gen::uniform(rng, -3, 3));
    // repeated integer roots cluster at about eps^(1/m)
    CHECK(same_multiset(find_roots(p), expect, 1e-3));
  }
}

TEST_CASE("residual definition") {
  const LaurentPoly p = LaurentPoly::parse("2*A^2 - 3*A + 1");
  const Complex z(0.3, 0.2);
  CHECK(std::abs(residual(p, z) - std::abs(2.0 * z * z - 3.0 * z + 1.0) / 4.0) < 1e-15);
  const Complex big(3, -1);
  const Complex v = 2.0 * big * big - 3.0 * big + 1.0;
  CHECK(std::abs(residual(p, big) - std::abs(v) / std::norm(big) / 4.0) < 1e-14);
}

TEST_CASE("family residuals") {
  const LaurentPoly p = family_polynomial(4, 2, 2, Twist::kPlus);
  const auto rs = family_roots(4, 2, 2, Twist::kPlus);
  CHECK(static_cast<int>(rs.size()) == width(p));
  for (const auto& r : rs) {
    CHECK(r.residual <= 1e-9);
    CHECK(r.residual == doctest::Approx(residual(p, r.root)).epsilon(1e-6));
    CHECK(r.degree == width(p));
  }
  for (std::size_t i = 1; i < rs.size(); ++i) CHECK(std::arg(rs[i - 1].root) <= std::arg(rs[i].root));
}

TEST_CASE("limit lambdas match the expanded invariants") {
  gen::Rng rng(42);
  for (int s = 1; s <= 4; ++s) {
    for (int k = 1; k <= 4; ++k) {
      const OracleGap oracle(s, k);
      for (int trial = 0; trial < 20; ++trial) {
        const Complex z = std::polar(gen::uniform(rng, 30, 200) / 100.0, gen::uniform(rng, 0, 628) / 100.0);
        if (std::abs(sigma_at(z) + 1.0) < 0.05 || std::abs(sigma_at(z)) < 0.05) continue;
        const auto [l1, l2] = limit_lambdas(z, s, k);
        const auto [o1, o2] = oracle.lambdas(z);
        CHECK(std::abs(l1 - o1) <= 1e-9 * (1 + std::abs(o1)));
        CHECK(std::abs(l2 - o2) <= 1e-9 * (1 + std::abs(o2)));
      }
    }
  }
}

TEST_CASE("limit_curve_gap examples") {
  const double g = limit_curve_gap({0.5, 0.5}, 2, 2);
  CHECK(std::isfinite(g));
  CHECK(g == doctest::Approx(OracleGap(2, 2)({0.5, 0.5})).epsilon(1e-9));
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  CHECK(kind_of([] { limit_curve_gap(0.0, 2, 2); }) == ErrorKind::kPoleEncountered);
  CHECK(kind_of([] { limit_curve_gap(-1.0, 2, 2); }) == ErrorKind::kPoleEncountered);
  CHECK(kind_of([&] { limit_curve_gap(w, 2, 2); }) == ErrorKind::kPoleEncountered);
}

TEST_CASE("curve samples against an independent bisection") {
  CurveOptions o;
  const auto curve = sample_gap_curve(2, 2, o);
  REQUIRE(!curve.empty());
  const OracleGap oracle(2, 2);
  for (std::size_t i = 0; i < curve.size(); i += 7) {
    const auto [l1, l2] = oracle.lambdas(curve[i]);
    CHECK(std::abs(std::abs(l1) - std::abs(l2)) <= 1e-6 * (std::abs(l1) + std::abs(l2)));
  }
  // one grid row, bisected here
  const int row = 560;
  const double im = o.im_min + row * o.step;
  const int nx = static_cast<int>(std::floor((o.re_max - o.re_min) / o.step + 0.5)) + 1;
  int crossings = 0;
  for (int i = 0; i + 1 < nx; ++i) {
    Complex a(o.re_min + i * o.step, im);
    Complex b(o.re_min + (i + 1) * o.step, im);
    double ga = oracle(a);
    const double gb = oracle(b);
    if (!std::isfinite(ga) || !std::isfinite(gb) || (ga > 0) == (gb > 0)) continue;
    while (std::abs(b - a) > 1e-9) {
      const Complex m = 0.5 * (a + b);
      const double gm = oracle(m);
      if ((gm > 0) == (ga > 0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    CHECK(nearest(a, curve) < 1e-7);
    ++crossings;
  }
  CHECK(crossings > 0);
}

TEST_CASE("roots of a long member lie on the limit curve") {
  const auto curve = sample_gap_curve(2, 2);
  // largest distance over the roots in the sampled window, leaving out the
  // zeros of sigma (isolated limit points, not on the curve)
  auto worst = [&](int n, int& near, int& inside) {
    double w = 0;
    near = inside = 0;
    for (const auto& r : family_roots(n, 2, 2, Twist::kPlus)) {
      const Complex z = r.root;
      if (std::abs(z.real()) > 2.5 || std::abs(z.imag()) > 2.5 || std::abs(sigma_at(z)) < 1e-8) continue;
      ++inside;
      const double d = nearest(z, curve);
      if (d < 0.05) ++near;
      w = std::max(w, d);
    }
    return w;
  };
  int near = 0;
  int inside = 0;
  const double w20 = worst(20, near, inside);
  // two conjugate pairs near the positive real axis approach the curve
  // slowly (about 0.06 and 0.12 away at n = 20)
  CHECK(near >= inside - 4);
  CHECK(w20 < 0.12);
  const double w160 = worst(160, near, inside);
  CHECK(near == inside);
  CHECK(w160 < w20);
}

TEST_CASE("omega_member examples") {
  CHECK(omega_member(1.0));
  CHECK(omega_member(-1.0));
  CHECK(kind_of([] { omega_member(0.0); }) == ErrorKind::kPoleAtZero);
  CHECK_FALSE(omega_member(kOutsideOmega));
  int outside = 0;
  for (double x = -2; x <= 2; x += 0.05) {
    for (double y = -2; y <= 2; y += 0.05) {
      const Complex z(x, y);
      if (std::abs(z) > 1e-9 && !omega_member(z)) ++outside;
    }
  }
  CHECK(outside > 0);
}

TEST_CASE("density_witness examples") {
  const DensityCaps caps;
  RootCache cache;
  const auto a = density_witness({0, 0.5}, 0.1, caps, &cache);
  REQUIRE(a.witness);
  CHECK(a.witness->distance < 0.1);
  CHECK(a.witness->found.sign == Twist::kPlus);

  // Near the positive real axis the + family keeps its roots about 0.1 away
  // from 0.5 at these caps, so z0 = 2 has no witness; the closest root is
  // still the reciprocal of a + root.
  const auto b = density_witness(2.0, 0.1, caps, &cache, true);
  CHECK_FALSE(b.witness);
  REQUIRE(b.closest);
  const RootRecord& f = *b.closest;
  CHECK(f.sign == Twist::kMinus);
  CHECK(b.best_distance == doctest::Approx(0.4755).epsilon(1e-3));
  const Complex inv = 1.0 / f.root;
  CHECK(std::abs(inv - 0.5) < 0.15);
  CHECK(nearest(inv, points(family_roots(f.n, f.s, f.k, Twist::kPlus))) < 1e-8);

  const auto c = density_witness(std::polar(1.0, std::numbers::pi / 3), 0.1, caps, &cache);
  REQUIRE(c.witness);
  CHECK(c.witness->distance < 0.1);

  CHECK(kind_of([&] { density_witness(0.5, 0.0, caps); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([&] { density_witness(0.01, 0.1, caps); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([&] { density_witness(25.0, 0.1, caps); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("scan_family bookkeeping") {
  FamilyGrid grid{{2, 3, 4, 5, 6}, {1, 2}, {1, 2}, {Twist::kPlus}};
  const auto rs = scan_family(grid);
  int total = 0;
  for (int n : grid.ns) {
    for (int s : grid.ss) {
      for (int k : grid.ks) total += width(family_polynomial(n, s, k, Twist::kPlus));
    }
  }
  CHECK(static_cast<int>(rs.size()) == total);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const auto& x = rs[i - 1];
    const auto& y = rs[i];
    const auto kx = std::make_tuple(x.n, x.s, x.k);
    const auto ky = std::make_tuple(y.n, y.s, y.k);
    CHECK(kx <= ky);
    if (kx == ky) CHECK(std::arg(x.root) <= std::arg(y.root));
  }
  CHECK(scan_family(grid, {}, 3).size() == rs.size());

  grid.signs = {Twist::kMinus};
  const auto mirror = scan_family(grid);
  std::vector<Complex> inv;
  for (const auto& r : rs) inv.push_back(1.0 / r.root);
  CHECK(same_multiset(points(mirror), inv, 1e-8));

  CHECK(scan_family(FamilyGrid{}).empty());
}

TEST_CASE("csv and svg") {
  const auto rs = family_roots(2, 1, 1, Twist::kPlus);
  const std::string csv = roots_csv(rs);
  CHECK(csv.rfind("n,s,k,sign,re,im,residual,degree\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rs.size()) + 1);
  const std::string svg = roots_svg(rs);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("extra polishing leaves roots in place") {
  gen::Rng rng(43);
  RootOptions twice;
  twice.polish_steps *= 2;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = gen::uniform(rng, 1, 16);
    const int s = gen::uniform(rng, 1, 4);
    const int k = gen::uniform(rng, 1, 4);
    const Twist sign = gen::uniform(rng, 0, 1) ? Twist::kPlus : Twist::kMinus;
    const auto a = family_roots(n, s, k, sign);
    const auto b = family_roots(n, s, k, sign, twice);
    REQUIRE(a.size() == b.size());
    for (const auto& r : a) CHECK(r.residual <= 1e-9);
    CHECK(same_multiset(points(a), points(b), 1e-10));
  }
}

TEST_CASE("mirror family roots are reciprocals") {
  gen::Rng rng(44);
  RootCache cache;
  for (int trial = 0; trial < 15; ++trial) {
    const int n = gen::uniform(rng, 1, 12);
    const int s = gen::uniform(rng, 1, 4);
    const int k = gen::uniform(rng, 1, 4);
    const auto plus = family_roots(n, s, k, Twist::kPlus);
    const auto minus = family_roots(n, s, k, Twist::kMinus);
    std::vector<Complex> inv;
    for (const auto& r : plus) inv.push_back(1.0 / r.root);
    CHECK(same_multiset(points(minus), inv, 1e-8));
    const auto cached = cache.get(n, s, k, Twist::kMinus, kDefaultDegreeCap);
    REQUIRE(cached);
    CHECK(same_multiset(points(*cached), inv, 1e-8));
  }
}

TEST_CASE("distance to the limit curve does not grow with n") {
  const CurveOptions o;
  const auto curve = sample_gap_curve(2, 2, o);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 24, 32}) {
    // one-sided distance over the roots inside the sampled window
    double worst = 0;
    for (const auto& r : family_roots(n, 2, 2, Twist::kPlus)) {
      const Complex z = r.root;
      if (z.real() < o.re_min || z.real() > o.re_max || z.imag() < o.im_min || z.imag() > o.im_max) continue;
      worst = std::max(worst, nearest(z, curve));
    }
    CHECK(worst <= 1.1 * previous);
    previous = worst;
  }
}

TEST_CASE("best density distance shrinks as the caps grow") {
  RootCache cache;
  const std::vector<DensityCaps> ladder{{2, 1, 4, 4000}, {4, 2, 8, 4000}, {6, 3, 12, 4000}};
  for (const Complex z0 : {Complex(0.3, 0.4), Complex(-0.7, 0.1), Complex(0.9, -0.2), Complex(1.5, 1.5)}) {
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& caps : ladder) {
      const auto r = density_witness(z0, 0.15, caps, &cache, true);
      CHECK(r.best_distance <= previous);
      previous = r.best_distance;
    }
  }
}

TEST_CASE("omega overlap (reported)") {
  RootCache cache;
  const DensityCaps caps{6, 3, 12, 4000};
  int roots = 0;
  int in_omega = 0;
  for (int i = 0; i < 12; ++i) {
    const Complex z0 = std::polar(0.3 + 0.05 * i, 0.5 * i);
    const auto r = density_witness(z0, 0.15, caps, &cache);
    if (!r.witness || std::abs(r.witness->found.root) > 1) continue;
    ++roots;
    if (omega_member(r.witness->found.root)) ++in_omega;
  }
  MESSAGE("witness roots inside Omega: " << in_omega << " of " << roots);
  CHECK(roots > 0);
}

}  // TEST_SUITE
