#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "yamada/diagram.hpp"
#include "yamada/error.hpp"
#include "yamada/laurent.hpp"
#include "yamada/replace.hpp"

namespace yamada {

using Complex = std::complex<double>;

struct RootOptions {
  double tol = 1e-9;
  int max_iterations = 800;
  int polish_steps = 4;
};

/// Backward-error style residual: |p(z)| / (1 + max |c|) on the shifted
/// polynomial for |z| <= 1, and the same on the reversed polynomial at 1/z
/// for |z| > 1 (that is, |p(z)| / |z|^deg).
double residual(const LaurentPoly& p, Complex z);

/// Double-precision image of the shifted polynomial, scaled so the largest
/// coefficient has modulus 1. coefs[i] multiplies z^i.
std::vector<double> scaled_coefficients(const LaurentPoly& p);

struct RootSet {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  bool converged = true;
  int iterations = 0;
};

/// Aberth-Ehrlich iteration followed by Newton polishing. Never throws on
/// non-convergence; `converged` is false instead.
RootSet solve(const LaurentPoly& p, const RootOptions& options = {});

/// Thrown by find_roots; carries whatever the iteration produced.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, std::vector<Complex> partial)
      : Error(ErrorKind::kNoConvergence, message), partial_(std::move(partial)) {}
  const std::vector<Complex>& partial() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// All nonzero roots of p, each with residual <= tol. ZeroPolynomial for
/// p = 0; a monomial has no nonzero roots and gives an empty list.
std::vector<Complex> find_roots(const LaurentPoly& p, double tol = 1e-9);

// ---------------------------------------------------------------------------

struct RootRecord {
  Complex root;
  int n = 0;
  int s = 0;
  int k = 0;
  Twist sign = Twist::kPlus;
  double residual = 0;
  int degree = 0;
};

struct Witness {
  Complex target;
  double epsilon = 0;
  RootRecord found;
  double distance = 0;
};

/// -R[theta] and (R[theta] + R[theta'])/sigma at z, evaluated from the exact
/// closed forms. PoleEncountered at z = 0, sigma(z) = 0 or sigma(z) = -1.
std::pair<Complex, Complex> limit_lambdas(Complex z, int s, int k);
/// |lambda_1(z)| - |lambda_2(z)|.
double limit_curve_gap(Complex z, int s, int k);

/// |sigma(z)| >= min{1, |z^3 + 2z^2 + z + 1|, |1 + z^-1 + 2z^-2 + z^-3|}.
bool omega_member(Complex z);

struct FamilyGrid {
  std::vector<int> ns;
  std::vector<int> ss;
  std::vector<int> ks;
  std::vector<Twist> signs{Twist::kPlus};
};

/// Roots of every family member in the grid, ordered by (n, s, k, sign,
/// argument of the root). Cells run on `jobs` threads.
std::vector<RootRecord> scan_family(const FamilyGrid& grid, const RootOptions& options = {}, int jobs = 1,
                                    int degree_cap = kDefaultDegreeCap);

/// Root records of one family member, sorted by argument. The Newton
/// corrections use lambda_1^n + sigma lambda_2^n directly, since the expanded
/// coefficients cancel badly once n grows. Throws NoConvergence if the
/// iteration fails or a residual exceeds the tolerance.
std::vector<RootRecord> family_roots(int n, int s, int k, Twist sign, const RootOptions& options = {},
                                     int degree_cap = kDefaultDegreeCap);

struct DensityCaps {
  int k_max = 12;
  int s_max = 6;
  int n_max = 24;
  int degree_cap = kDefaultDegreeCap;
};

/// Thread-safe memo of family roots keyed by (n, s, k, sign). Roots of the
/// mirror family are the reciprocals of the positive family's roots; they are
/// derived that way and re-checked against the mirror polynomial.
class RootCache {
 public:
  explicit RootCache(RootOptions options = {}) : options_(options) {}
  /// Empty when the degree bound exceeds the cap.
  std::shared_ptr<const std::vector<RootRecord>> get(int n, int s, int k, Twist sign, int degree_cap);
  /// Fills the cache for the whole capped grid of one sign using `jobs` threads.
  void prefill(const DensityCaps& caps, Twist sign, int jobs);
  std::size_t size() const;

 private:
  using Key = std::tuple<int, int, int, int>;
  RootOptions options_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const std::vector<RootRecord>>> roots_;
};

struct DensityResult {
  Complex target;
  double epsilon = 0;
  DensityCaps caps;
  std::optional<Witness> witness;
  /// Closest root seen over the searched cells (the whole grid when no
  /// witness was found or when `exhaustive` was requested).
  std::optional<RootRecord> closest;
  double best_distance = 0;
  int cells_searched = 0;
};

/// Searches the + family for |z0| <= 1 and the - family otherwise, k
/// ascending, then s, then n, stopping at the first root within eps unless
/// `exhaustive`. Cells past the degree cap are skipped. InvalidArgument unless
/// eps > 0 and 0.05 <= |z0| <= 20.
DensityResult density_witness(Complex z0, double eps, const DensityCaps& caps, RootCache* cache = nullptr,
                              bool exhaustive = false);

// ---------------------------------------------------------------------------

struct CurveOptions {
  double re_min = -2.5;
  double re_max = 2.5;
  double im_min = -2.5;
  double im_max = 2.5;
  double step = 0.005;
  double bisection_tol = 1e-8;
};

/// Points of the zero set of limit_curve_gap found by sign changes along the
/// edges of a square grid, each refined by bisection. Grid nodes that hit a
/// pole are skipped.
std::vector<Complex> sample_gap_curve(int s, int k, const CurveOptions& options = {});

/// Fraction of `points` within `radius` of some curve sample.
double fraction_near(const std::vector<Complex>& points, const std::vector<Complex>& curve, double radius);

/// CSV with header n,s,k,sign,re,im,residual,degree.
std::string roots_csv(const std::vector<RootRecord>& records);
/// Scatter plot with the unit circle.
std::string roots_svg(const std::vector<RootRecord>& records, double extent = 2.5);

std::string twist_symbol(Twist t);

}  // namespace yamada
