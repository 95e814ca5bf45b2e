#include "yamada/roots.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "yamada/rational.hpp"

namespace yamada {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct ScaledPoly {
  std::vector<double> a;  // a[i] multiplies z^i, max |a[i]| = 1
  std::vector<double> log_abs;  // natural log of |c_i| (unscaled), -inf for zero
  double norm_factor = 1;  // M / (1 + M) with M the largest |c_i|
  int degree() const { return static_cast<int>(a.size()) - 1; }
};

ScaledPoly scale(const LaurentPoly& p) {
  ScaledPoly sp;
  const int low = p.min_exp();
  const int d = p.max_exp() - low;
  sp.a.assign(static_cast<std::size_t>(d) + 1, 0.0);
  sp.log_abs.assign(static_cast<std::size_t>(d) + 1, -std::numeric_limits<double>::infinity());
  std::vector<std::pair<double, long>> parts;
  long emax = std::numeric_limits<long>::min();
  for (const auto& t : p.terms()) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, t.coef.get_mpz_t());
    parts.emplace_back(m, e);
    emax = std::max(emax, e);
    sp.log_abs[static_cast<std::size_t>(t.exp - low)] = std::log(std::abs(m)) + static_cast<double>(e) * std::numbers::ln2;
  }
  double biggest = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& t = p.terms()[i];
    const double v = std::ldexp(parts[i].first, static_cast<int>(std::max(parts[i].second - emax, -2000L)));
    sp.a[static_cast<std::size_t>(t.exp - low)] = v;
    biggest = std::max(biggest, std::abs(v));
  }
  for (double& v : sp.a) v /= biggest;
  const double log_m = std::log(biggest) + static_cast<double>(emax) * std::numbers::ln2;
  sp.norm_factor = log_m > 40 ? 1.0 : std::exp(log_m) / (1 + std::exp(log_m));
  return sp;
}

struct Eval {
  Complex value;      // p(z), or q(1/z) for |z| > 1
  Complex ratio;      // p(z) / p'(z)
  double magnitude;   // sum |a_i| |z|^i on the same side
};

// Horner on the side of the unit circle that keeps powers bounded.
Eval evaluate(const ScaledPoly& sp, Complex z) {
  const int d = sp.degree();
  const double r = std::abs(z);
  if (r <= 1) {
    Complex p = sp.a[static_cast<std::size_t>(d)];
    Complex dp = 0;
    double mag = std::abs(sp.a[static_cast<std::size_t>(d)]);
    for (int i = d - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + sp.a[static_cast<std::size_t>(i)];
      mag = mag * r + std::abs(sp.a[static_cast<std::size_t>(i)]);
    }
    return {p, dp == Complex(0) ? Complex(0) : p / dp, mag};
  }
  const Complex w = 1.0 / z;
  const double rw = 1 / r;
  Complex q = sp.a[0];
  Complex dq = 0;
  double mag = std::abs(sp.a[0]);
  for (int i = 1; i <= d; ++i) {
    dq = dq * w + q;
    q = q * w + sp.a[static_cast<std::size_t>(i)];
    mag = mag * rw + std::abs(sp.a[static_cast<std::size_t>(i)]);
  }
  const Complex denom = static_cast<double>(d) - w * dq / q;
  return {q, q == Complex(0) ? Complex(0) : z / denom, mag};
}

double residual_scaled(const ScaledPoly& sp, Complex z) { return std::abs(evaluate(sp, z).value) * sp.norm_factor; }

// Initial guesses from the upper convex hull of (i, log|c_i|).
std::vector<Complex> initial_guesses(const ScaledPoly& sp) {
  const int d = sp.degree();
  std::vector<int> hull;
  for (int i = 0; i <= d; ++i) {
    if (!std::isfinite(sp.log_abs[static_cast<std::size_t>(i)])) continue;
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      const double la = sp.log_abs[static_cast<std::size_t>(a)];
      const double lb = sp.log_abs[static_cast<std::size_t>(b)];
      const double li = sp.log_abs[static_cast<std::size_t>(i)];
      if ((lb - la) * (i - a) <= (li - la) * (b - a)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<Complex> z;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int i = hull[h];
    const int j = hull[h + 1];
    const int count = j - i;
    const double radius =
        std::exp((sp.log_abs[static_cast<std::size_t>(i)] - sp.log_abs[static_cast<std::size_t>(j)]) / count);
    const double offset = 0.7 + 2.0 * std::numbers::pi * static_cast<double>(h) / static_cast<double>(d);
    for (int m = 0; m < count; ++m) {
      const double theta = 2.0 * std::numbers::pi * m / count + offset;
      z.push_back(std::polar(radius, theta));
    }
  }
  return z;
}

}  // namespace

std::vector<double> scaled_coefficients(const LaurentPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "no coefficients");
  return scale(p).a;
}

double residual(const LaurentPoly& p, Complex z) {
  if (p.is_zero()) return 0;
  return residual_scaled(scale(p), z);
}

RootSet solve(const LaurentPoly& p, const RootOptions& options) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "find_roots of the zero polynomial");
  RootSet out;
  const ScaledPoly sp = scale(p);
  const int d = sp.degree();
  if (d == 0) return out;
  std::vector<Complex> z = initial_guesses(sp);
  std::vector<char> active(z.size(), 1);
  std::size_t remaining = z.size();
  int iter = 0;
  for (; iter < options.max_iterations && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!active[i]) continue;
      const Eval e = evaluate(sp, z[i]);
      if (std::abs(e.value) <= 4.0 * kEps * (d + 1) * e.magnitude || e.ratio == Complex(0)) {
        active[i] = 0;
        --remaining;
        continue;
      }
      Complex sum = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Complex step = e.ratio / (1.0 - e.ratio * sum);
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) {
        active[i] = 0;
        --remaining;
      }
    }
  }
  out.converged = remaining == 0;
  out.iterations = iter;
  for (auto& root : z) {
    double res = residual_scaled(sp, root);
    for (int step = 0; step < options.polish_steps && res > 0; ++step) {
      const Eval e = evaluate(sp, root);
      const Complex candidate = root - e.ratio;
      const double r2 = residual_scaled(sp, candidate);
      if (!(r2 < res)) break;
      root = candidate;
      res = r2;
    }
    out.roots.push_back(root);
    out.residuals.push_back(res);
  }
  return out;
}

std::vector<Complex> find_roots(const LaurentPoly& p, double tol) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "find_roots of the zero polynomial");
  if (p.term_count() == 1) return {};
  RootOptions options;
  options.tol = tol;
  RootSet rs = solve(p, options);
  const bool residuals_ok = std::all_of(rs.residuals.begin(), rs.residuals.end(), [&](double r) { return r <= tol; });
  if (!rs.converged || !residuals_ok) {
    throw NoConvergenceError("root iteration did not reach the tolerance after " + std::to_string(rs.iterations) + " sweeps",
                             std::move(rs.roots));
  }
  return rs.roots;
}

// ---------------------------------------------------------------------------

namespace {

// A value with its first derivative; closed forms evaluated on these carry
// the derivative along.
struct Dual {
  Complex v;
  Complex d;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator-(Dual a) { return {-a.v, -a.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
Dual lift(Complex c) { return {c, 0}; }

template <class T>
T power(T base, int e, T one) {
  T acc = one;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// lambda_1 = -R[theta] and lambda_2 = (R[theta] + R[theta'])/sigma of the
// theta piece with s twisted edges. Away from sigma = -1 they come from the
// factored closed form
//   lambda_1 = -(b^s + sigma a^s)/(1 + sigma),  lambda_2 = (a^s - b^s)/(1 + sigma)
// with a = sigma A^-2k + M_k and b = sigma (A^-2k - M_k), which evaluates
// without the cancellation of the expanded coefficients. Near sigma = -1 the
// expanded polynomials are used.
class ThetaLambdas {
 public:
  ThetaLambdas(int s, int k) : s_(s), k_(k) {
    const PieceInvariants theta = theta_piece(s, k, Twist::kPlus);
    r_ = dense(theta.r);
    const LaurentPoly sum = theta.r + theta.r_closed;
    try {
      beta_ = dense(exact_div(sum, sigma_const()));
      beta_exact_ = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNonExactDivision) throw;
      beta_ = dense(sum);
    }
  }

  // The lambdas divided by a common power g = w^e of w, so that neither
  // overflows far from the unit circle; derivatives are those of the
  // lambdas, also divided by g. Ratios of these are the true ratios.
  struct Values {
    Dual l1;
    Dual l2;
    Dual sigma;
    int scale_exp = 0;
  };

  Values at(Dual w) const {
    const Dual one = lift(1);
    const Dual inv = one / w;
    const Dual sig = w + one + inv;
    if (std::abs(sig.v + 1.0) >= 1e-3 && k_ > 0) {
      // a and b times w^2k inside the unit disc, times w^(k-1) outside
      const bool inside = std::abs(w.v) <= 1;
      const int e = inside ? 2 * k_ : k_ - 1;
      Dual m = (inside ? power(w, k_, one) : inv) * (w + inv);
      if (k_ % 2 == 0) m = -m;
      const Dual u = inside ? one : power(inv, k_ + 1, one);
      const Dual a = sig * u + m;
      const Dual b = sig * (u - m);
      const Dual as = power(a, s_, one);
      const Dual bs = power(b, s_, one);
      const Dual den = one + sig;
      Dual l1 = -(bs + sig * as) / den;
      Dual l2 = (as - bs) / den;
      // d/dz (g l) = g (l' + e s l w'/w) with g = w^(-e s)
      const Complex shift = -static_cast<double>(e * s_) * w.d / w.v;
      l1.d += shift * l1.v;
      l2.d += shift * l2.v;
      return {l1, l2, sig, e * s_};
    }
    const Dual l1 = -horner(r_, w);
    Dual l2 = horner(beta_, w);
    if (!beta_exact_) l2 = l2 / sig;
    return {l1, l2, sig, 0};
  }

 private:
  struct Dense {
    int low = 0;
    std::vector<double> c;
  };
  static Dense dense(const LaurentPoly& p) {
    Dense d;
    d.low = p.min_exp();
    for (const auto& b : p.dense()) d.c.push_back(b.get_d());
    return d;
  }
  static Dual horner(const Dense& d, Dual w) {
    Dual acc = lift(0);
    for (auto it = d.c.rbegin(); it != d.c.rend(); ++it) acc = acc * w + lift(*it);
    const Dual one = lift(1);
    return d.low >= 0 ? acc * power(w, d.low, one) : acc * power(one / w, -d.low, one);
  }

  int s_;
  int k_;
  Dense r_, beta_;
  bool beta_exact_ = false;
};

class GapEvaluator {
 public:
  GapEvaluator(int s, int k) : lambdas_(s, k) {}

  std::pair<Complex, Complex> lambdas(Complex z) const {
    if (z == Complex(0)) throw Error(ErrorKind::kPoleEncountered, "z = 0");
    const Complex sig = z + 1.0 + 1.0 / z;
    if (std::abs(sig) < 1e-12 || std::abs(sig + 1.0) < 1e-12) {
      throw Error(ErrorKind::kPoleEncountered, "sigma(z) is 0 or -1");
    }
    const auto v = lambdas_.at({z, 1});
    const Complex g = std::pow(z, -v.scale_exp);
    return {v.l1.v * g, v.l2.v * g};
  }

 private:
  ThetaLambdas lambdas_;
};

// The family member is lambda_1^n + sigma lambda_2^n. Evaluating it in that
// form keeps full relative accuracy where the expanded coefficients cancel
// catastrophically.
class FamilyEvaluator {
 public:
  FamilyEvaluator(int n, int s, int k, Twist sign, int low) : lambdas_(s, k), n_(n), sign_(sign), low_(low) {}

  struct Step {
    Complex ratio;  // q / q' for the shifted polynomial q = z^-low p
    double rel;     // |p| over |lambda_1|^n + |lambda_2|^n
  };

  Step at(Complex z) const {
    const Dual w = sign_ == Twist::kPlus ? Dual{z, 1} : Dual{1.0 / z, -1.0 / (z * z)};
    const auto [l1, l2, sig, scale_exp] = lambdas_.at(w);
    if (l1.v == Complex(0) && l2.v == Complex(0)) return {0, 0};
    const double n = n_;
    Complex num, den;
    double size = 0;
    if (std::abs(l1.v) >= std::abs(l2.v)) {
      const Complex q = l2.v / l1.v;
      const Complex qn1 = power(q, n_ - 1, Complex(1));
      const Complex rho = qn1 * q;
      num = 1.0 + sig.v * rho;
      den = n * l1.d / l1.v + sig.d * rho + n * sig.v * qn1 * (l2.d / l1.v);
      size = 1 + std::abs(rho);
    } else {
      const Complex q = l1.v / l2.v;
      const Complex qn1 = power(q, n_ - 1, Complex(1));
      const Complex rho = qn1 * q;
      num = rho + sig.v;
      den = n * qn1 * (l1.d / l2.v) + sig.d + n * sig.v * l2.d / l2.v;
      size = 1 + std::abs(rho);
    }
    const Complex dq = den - num * static_cast<double>(low_) / z;
    return {dq == Complex(0) ? Complex(0) : num / dq, std::abs(num) / size};
  }

 private:
  ThetaLambdas lambdas_;
  int n_;
  Twist sign_;
  int low_;
};

// |lambda_1^n + sigma lambda_2^n| over |lambda_1|^n + |lambda_2|^n. Near
// common zeros of the lambdas this is only as good as their evaluation, so
// the bound is loose; it exists to reject points where the expanded
// coefficients cancel to a small but meaningless residual.
constexpr double kTwoTermTol = 1e-6;

struct FamilyRoots {
  std::vector<Complex> roots;
  std::vector<double> residuals;   // coefficient residual
  std::vector<double> structured;  // |p| over |lambda_1|^n + |lambda_2|^n
  bool converged = true;
};

Complex polish(const FamilyEvaluator& ev, Complex z, int steps, double& rel) {
  rel = ev.at(z).rel;
  for (int i = 0; i < steps && rel > 0; ++i) {
    const Complex candidate = z - ev.at(z).ratio;
    const double r2 = ev.at(candidate).rel;
    if (!(r2 < rel)) break;
    z = candidate;
    rel = r2;
  }
  return z;
}

// gcd(p, p') modulo a word-size prime. A constant gcd there means p is
// squarefree; the converse can fail only for primes dividing the
// discriminant, which just costs an exact check below.
bool maybe_repeated(const LaurentPoly& p) {
  using u64 = unsigned long long;
  constexpr u64 kPrime = 4294967291ULL;
  auto inverse = [](u64 b) {
    u64 r = 1;
    for (u64 e = kPrime - 2; e > 0; e >>= 1) {
      if (e & 1) r = r * b % kPrime;
      b = b * b % kPrime;
    }
    return r;
  };
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  std::vector<u64> a;
  for (const auto& c : p.dense()) a.push_back(mpz_fdiv_ui(c.get_mpz_t(), kPrime));
  if (a.empty() || a.back() == 0) return true;
  std::vector<u64> b;
  for (std::size_t i = 1; i < a.size(); ++i) b.push_back(a[i] * (i % kPrime) % kPrime);
  trim(b);
  while (!b.empty()) {
    const u64 inv = inverse(b.back());
    while (a.size() >= b.size()) {
      const u64 f = a.back() * inv % kPrime;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + kPrime - f * b[i] % kPrime) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() > 1;
}

LaurentPoly derivative(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> t;
  for (const auto& term : p.terms()) {
    if (term.exp != 0) t.push_back({term.exp - 1, term.coef * term.exp});
  }
  return LaurentPoly::from_terms(std::move(t));
}

// Roots of multiplicity m >= 2, each listed m times. With L_0 = p and
// L_{j+1} = gcd(L_j, L_j'), a root of multiplicity m divides L_0 .. L_{m-1},
// so it is a root of each squarefree quotient L_j / L_{j+1} for j < m.
std::vector<Complex> multiple_roots(const LaurentPoly& p) {
  std::vector<Complex> out;
  if (!maybe_repeated(p)) return out;
  std::vector<LaurentPoly> levels{p.shifted(-p.min_exp())};
  while (levels.back().max_exp() > 0) levels.push_back(poly_gcd(levels.back(), derivative(levels.back())));
  for (std::size_t j = 1; j + 1 < levels.size(); ++j) {
    const auto roots = find_roots(exact_div(levels[j], levels[j + 1]));
    out.insert(out.end(), roots.begin(), roots.end());
    if (j == 1) out.insert(out.end(), roots.begin(), roots.end());
  }
  return out;
}

// Moves the closest free entry of z onto each exactly known multiple root;
// double precision cannot place an m-fold root better than eps^(1/m).
std::vector<char> snap(std::vector<Complex>& z, const std::vector<Complex>& exact) {
  std::vector<char> fixed(z.size(), 0);
  for (const auto& e : exact) {
    std::size_t best = z.size();
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!fixed[i] && (best == z.size() || std::abs(z[i] - e) < std::abs(z[best] - e))) best = i;
    }
    if (best == z.size()) break;
    z[best] = e;
    fixed[best] = 1;
  }
  return fixed;
}

// Aberth-Ehrlich on the shifted polynomial with the Newton ratio taken from
// the two-term form; starting points come from the coefficients.
FamilyRoots solve_family(const LaurentPoly& p, int n, int s, int k, Twist sign, const RootOptions& options) {
  FamilyRoots out;
  const ScaledPoly sp = scale(p);
  if (sp.degree() == 0) return out;
  const FamilyEvaluator ev(n, s, k, sign, p.min_exp());
  std::vector<Complex> z = initial_guesses(sp);
  std::vector<char> active(z.size(), 1);
  std::size_t remaining = z.size();
  const double floor = 16.0 * kEps * (n + 1);
  for (int iter = 0; iter < options.max_iterations && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!active[i]) continue;
      const auto e = ev.at(z[i]);
      if (e.rel <= floor || e.ratio == Complex(0)) {
        active[i] = 0;
        --remaining;
        continue;
      }
      Complex sum = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Complex step = e.ratio / (1.0 - e.ratio * sum);
      z[i] -= step;
      if (std::abs(step) <= 64.0 * kEps * std::abs(z[i])) {
        active[i] = 0;
        --remaining;
      }
    }
  }
  const auto fixed = snap(z, multiple_roots(p));
  // Members of a tight cluster (near a common zero of the lambdas) can wander
  // at the evaluation noise level without settling; they count as converged
  // once both residuals are small.
  for (std::size_t i = 0; i < z.size(); ++i) {
    double rel = 0;
    const Complex root = fixed[i] ? z[i] : polish(ev, z[i], options.polish_steps, rel);
    const double res = residual_scaled(sp, root);
    if (active[i] && !fixed[i] && !(rel <= kTwoTermTol && res <= options.tol)) out.converged = false;
    out.roots.push_back(root);
    out.residuals.push_back(res);
    out.structured.push_back(rel);
  }
  return out;
}

// Roots of the mirror member from the reciprocals of the positive member's
// roots, each polished against the mirror member.
FamilyRoots mirror_family(const LaurentPoly& p_minus, int n, int s, int k, const std::vector<RootRecord>& plus,
                          const RootOptions& options) {
  FamilyRoots out;
  const ScaledPoly sp = scale(p_minus);
  const FamilyEvaluator ev(n, s, k, Twist::kMinus, p_minus.min_exp());
  std::vector<Complex> z;
  for (const auto& r : plus) z.push_back(1.0 / r.root);
  const auto fixed = snap(z, multiple_roots(p_minus));
  for (std::size_t i = 0; i < z.size(); ++i) {
    double rel = 0;
    const Complex root = fixed[i] ? z[i] : polish(ev, z[i], options.polish_steps, rel);
    out.roots.push_back(root);
    out.residuals.push_back(residual_scaled(sp, root));
    out.structured.push_back(rel);
  }
  return out;
}

}  // namespace

std::pair<Complex, Complex> limit_lambdas(Complex z, int s, int k) { return GapEvaluator(s, k).lambdas(z); }

double limit_curve_gap(Complex z, int s, int k) {
  const auto [l1, l2] = limit_lambdas(z, s, k);
  return std::abs(l1) - std::abs(l2);
}

bool omega_member(Complex z) {
  if (z == Complex(0)) throw Error(ErrorKind::kPoleAtZero, "omega_member at 0");
  const Complex w = 1.0 / z;
  const double sig = std::abs(z + 1.0 + w);
  const double a = std::abs(z * z * z + 2.0 * z * z + z + 1.0);
  const double b = std::abs(1.0 + w + 2.0 * w * w + w * w * w);
  return sig >= std::min({1.0, a, b});
}

std::string twist_symbol(Twist t) { return t == Twist::kPlus ? "+" : "-"; }

namespace {

void sort_by_angle(std::vector<RootRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const RootRecord& x, const RootRecord& y) {
    const double ax = std::arg(x.root);
    const double ay = std::arg(y.root);
    if (ax != ay) return ax < ay;
    return std::abs(x.root) < std::abs(y.root);
  });
}

void check_records(const std::vector<RootRecord>& records, double tol, int n, int s, int k) {
  for (const auto& r : records) {
    if (!(r.residual <= tol)) {
      throw NoConvergenceError("residual " + std::to_string(r.residual) + " above tolerance for (n,s,k) = (" + std::to_string(n) +
                                   "," + std::to_string(s) + "," + std::to_string(k) + ")",
                               {});
    }
  }
}

void check_structured(const std::vector<double>& rel, const std::vector<Complex>& roots, int n, int s, int k) {
  for (double r : rel) {
    if (!(r <= kTwoTermTol)) {
      std::ostringstream msg;
      msg << r;
      throw NoConvergenceError("two-term residual " + msg.str() + " above tolerance for (n,s,k) = (" +
                                   std::to_string(n) + "," + std::to_string(s) + "," + std::to_string(k) + ")",
                               roots);
    }
  }
}

template <class F>
void run_parallel(std::size_t count, int jobs, F&& work) {
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<RootRecord> family_roots(int n, int s, int k, Twist sign, const RootOptions& options, int degree_cap) {
  const LaurentPoly p = family_polynomial(n, s, k, sign, degree_cap);
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "family member is zero");
  const FamilyRoots fr = solve_family(p, n, s, k, sign, options);
  if (!fr.converged) throw NoConvergenceError("family root iteration did not converge", fr.roots);
  std::vector<RootRecord> out;
  for (std::size_t i = 0; i < fr.roots.size(); ++i) {
    out.push_back({fr.roots[i], n, s, k, sign, fr.residuals[i], span(p)});
  }
  check_records(out, options.tol, n, s, k);
  check_structured(fr.structured, fr.roots, n, s, k);
  sort_by_angle(out);
  return out;
}

std::vector<RootRecord> scan_family(const FamilyGrid& grid, const RootOptions& options, int jobs, int degree_cap) {
  std::vector<std::tuple<int, int, int, Twist>> cells;
  for (int n : grid.ns) {
    for (int s : grid.ss) {
      for (int k : grid.ks) {
        for (Twist t : grid.signs) cells.emplace_back(n, s, k, t);
      }
    }
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(std::get<0>(a), std::get<1>(a), std::get<2>(a), static_cast<int>(std::get<3>(a))) <
           std::make_tuple(std::get<0>(b), std::get<1>(b), std::get<2>(b), static_cast<int>(std::get<3>(b)));
  });
  std::vector<std::vector<RootRecord>> results(cells.size());
  run_parallel(cells.size(), jobs, [&](std::size_t i) {
    const auto [n, s, k, t] = cells[i];
    results[i] = family_roots(n, s, k, t, options, degree_cap);
  });
  std::vector<RootRecord> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::shared_ptr<const std::vector<RootRecord>> RootCache::get(int n, int s, int k, Twist sign, int degree_cap) {
  const Key key{n, s, k, static_cast<int>(sign)};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = roots_.find(key);
    if (it != roots_.end()) return it->second;
  }
  if (FamilySequence(s, k, Twist::kPlus, degree_cap).degree_bound(n) > degree_cap) return nullptr;
  std::shared_ptr<const std::vector<RootRecord>> value;
  if (sign == Twist::kPlus) {
    value = std::make_shared<const std::vector<RootRecord>>(family_roots(n, s, k, sign, options_, degree_cap));
  } else {
    const auto plus = get(n, s, k, Twist::kPlus, degree_cap);
    const LaurentPoly p = family_polynomial(n, s, k, Twist::kMinus, degree_cap);
    const FamilyRoots fr = mirror_family(p, n, s, k, *plus, options_);
    auto records = std::make_shared<std::vector<RootRecord>>();
    for (std::size_t i = 0; i < fr.roots.size(); ++i) {
      records->push_back({fr.roots[i], n, s, k, Twist::kMinus, fr.residuals[i], span(p)});
    }
    check_structured(fr.structured, fr.roots, n, s, k);
    check_records(*records, options_.tol, n, s, k);
    sort_by_angle(*records);
    value = records;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return roots_.emplace(key, value).first->second;
}

void RootCache::prefill(const DensityCaps& caps, Twist sign, int jobs) {
  std::vector<std::tuple<int, int, int>> cells;
  for (int k = 1; k <= caps.k_max; ++k) {
    for (int s = 1; s <= caps.s_max; ++s) {
      FamilySequence seq(s, k, Twist::kPlus, caps.degree_cap);
      for (int n = 1; n <= caps.n_max && seq.degree_bound(n) <= caps.degree_cap; ++n) cells.emplace_back(n, s, k);
    }
  }
  // Largest cells first so the threads finish together.
  std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) * std::get<1>(a) * (std::get<2>(a) + 3) > std::get<0>(b) * std::get<1>(b) * (std::get<2>(b) + 3);
  });
  run_parallel(cells.size(), jobs, [&](std::size_t i) {
    const auto [n, s, k] = cells[i];
    get(n, s, k, sign, caps.degree_cap);
  });
}

std::size_t RootCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return roots_.size();
}

DensityResult density_witness(Complex z0, double eps, const DensityCaps& caps, RootCache* cache, bool exhaustive) {
  if (!(eps > 0)) throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  const double m = std::abs(z0);
  if (!(m >= 0.05 && m <= 20)) throw Error(ErrorKind::kInvalidArgument, "|z0| must lie in [0.05, 20]");
  RootCache local;
  RootCache& c = cache ? *cache : local;
  const Twist sign = m <= 1 ? Twist::kPlus : Twist::kMinus;
  DensityResult result;
  result.target = z0;
  result.epsilon = eps;
  result.caps = caps;
  result.best_distance = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= caps.k_max; ++k) {
    for (int s = 1; s <= caps.s_max; ++s) {
      for (int n = 1; n <= caps.n_max; ++n) {
        const auto roots = c.get(n, s, k, sign, caps.degree_cap);
        if (!roots) break;
        ++result.cells_searched;
        for (const auto& r : *roots) {
          const double d = std::abs(r.root - z0);
          if (d < result.best_distance) {
            result.best_distance = d;
            result.closest = r;
          }
          if (d < eps && !result.witness) result.witness = Witness{z0, eps, r, d};
        }
        if (result.witness && !exhaustive) return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::vector<Complex> sample_gap_curve(int s, int k, const CurveOptions& o) {
  const GapEvaluator ev(s, k);
  auto gap = [&](Complex z) -> double {
    try {
      const auto [l1, l2] = ev.lambdas(z);
      return std::abs(l1) - std::abs(l2);
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const int nx = static_cast<int>(std::floor((o.re_max - o.re_min) / o.step + 0.5)) + 1;
  const int ny = static_cast<int>(std::floor((o.im_max - o.im_min) / o.step + 0.5)) + 1;
  auto node = [&](int i, int j) { return Complex(o.re_min + i * o.step, o.im_min + j * o.step); };
  std::vector<double> values(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) values[static_cast<std::size_t>(j) * nx + i] = gap(node(i, j));
  }
  auto value = [&](int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; };
  std::vector<Complex> curve;
  auto refine = [&](Complex a, double ga, Complex b) {
    for (int it = 0; it < 200 && std::abs(b - a) > o.bisection_tol; ++it) {
      const Complex mid = 0.5 * (a + b);
      const double gm = gap(mid);
      if (std::isnan(gm)) return;
      if ((gm > 0) == (ga > 0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    curve.push_back(0.5 * (a + b));
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double g = value(i, j);
      if (std::isnan(g)) continue;
      if (i + 1 < nx) {
        const double h = value(i + 1, j);
        if (!std::isnan(h) && (g > 0) != (h > 0)) refine(node(i, j), g, node(i + 1, j));
      }
      if (j + 1 < ny) {
        const double h = value(i, j + 1);
        if (!std::isnan(h) && (g > 0) != (h > 0)) refine(node(i, j), g, node(i, j + 1));
      }
    }
  }
  return curve;
}

double fraction_near(const std::vector<Complex>& points, const std::vector<Complex>& curve, double radius) {
  if (points.empty()) return 0;
  auto cell = [&](Complex z) {
    return std::make_pair(static_cast<long>(std::floor(z.real() / radius)), static_cast<long>(std::floor(z.imag() / radius)));
  };
  std::map<std::pair<long, long>, std::vector<Complex>> buckets;
  for (const auto& c : curve) buckets[cell(c)].push_back(c);
  std::size_t near = 0;
  for (const auto& p : points) {
    const auto [cx, cy] = cell(p);
    bool hit = false;
    for (long dx = -1; dx <= 1 && !hit; ++dx) {
      for (long dy = -1; dy <= 1 && !hit; ++dy) {
        auto it = buckets.find({cx + dx, cy + dy});
        if (it == buckets.end()) continue;
        for (const auto& c : it->second) {
          if (std::abs(c - p) <= radius) {
            hit = true;
            break;
          }
        }
      }
    }
    if (hit) ++near;
  }
  return static_cast<double>(near) / static_cast<double>(points.size());
}

std::string roots_csv(const std::vector<RootRecord>& records) {
  std::string out = "n,s,k,sign,re,im,residual,degree\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%s,%.15e,%.15e,%.6e,%d\n", r.n, r.s, r.k, twist_symbol(r.sign).c_str(),
                  r.root.real(), r.root.imag(), r.residual, r.degree);
    out += buf;
  }
  return out;
}

std::string roots_svg(const std::vector<RootRecord>& records, double extent) {
  const double size = 800;
  const double scale = size / (2 * extent);
  auto px = [&](double x) { return (x + extent) * scale; };
  auto py = [&](double y) { return (extent - y) * scale; };
  std::ostringstream os;
  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"0\" y1=\"%.2f\" x2=\"800\" y2=\"%.2f\" stroke=\"#ccc\"/>\n", py(0), py(0));
  os << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"800\" stroke=\"#ccc\"/>\n", px(0), px(0));
  os << buf;
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"#888\"/>\n", px(0), py(0), scale);
  os << buf;
  for (const auto& r : records) {
    if (std::abs(r.root.real()) > extent || std::abs(r.root.imag()) > extent) continue;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\" fill=\"%s\"/>\n", px(r.root.real()),
                  py(r.root.imag()), r.sign == Twist::kPlus ? "#1f4e9c" : "#b3261e");
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace yamada
