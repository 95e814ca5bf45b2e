#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace yamada {

using BigInt = mpz_class;

/// Exact Laurent polynomial in one variable with arbitrary-precision integer
/// coefficients. Terms are kept sorted by ascending exponent with no zero
/// coefficients, so the zero polynomial is the empty term list and equality
/// is structural.
class LaurentPoly {
 public:
  struct Term {
    int exp;
    BigInt coef;

    friend bool operator==(const Term& a, const Term& b) { return a.exp == b.exp && a.coef == b.coef; }
  };

  LaurentPoly() = default;
  LaurentPoly(long constant);  // NOLINT(google-explicit-constructor): integers are polynomials

  static LaurentPoly monomial(const BigInt& coef, int exp);
  /// The variable itself, A.
  static LaurentPoly var() { return monomial(1, 1); }
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static LaurentPoly from_terms(std::vector<Term> terms);
  /// Builds from dense coefficients: coefs[i] multiplies A^(low + i).
  static LaurentPoly from_dense(int low, const std::vector<BigInt>& coefs);
  /// Parses the text rendering produced by to_string, e.g. "A^2 + 2*A + 3 - A^-1".
  static LaurentPoly parse(std::string_view text, char var = 'A');

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  /// Lowest / highest exponent; 0 for the zero polynomial.
  int min_exp() const noexcept { return terms_.empty() ? 0 : terms_.front().exp; }
  int max_exp() const noexcept { return terms_.empty() ? 0 : terms_.back().exp; }
  BigInt coeff(int exp) const;
  const BigInt& leading_coeff() const;
  /// Dense coefficient vector from min_exp() to max_exp().
  std::vector<BigInt> dense() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  LaurentPoly pow(unsigned k) const;
  /// Multiplication by A^d.
  LaurentPoly shifted(int d) const;
  LaurentPoly scaled(const BigInt& c) const;

  /// Descending exponents, e.g. "A^2 + 2*A + 3 + 2*A^-1 + A^-2"; "0" for zero.
  std::string to_string(char var = 'A') const;

 private:
  std::vector<Term> terms_;
};

enum class ArithKind { kAdd, kSub, kMul, kNeg, kPow };

/// Generic entry point for ring arithmetic; `q` is ignored for kNeg and
/// `k` is the exponent for kPow.
LaurentPoly arith(const LaurentPoly& p, const LaurentPoly& q, ArithKind kind, unsigned k = 0);

/// A + 1 + A^-1, the value of H on every cycle.
LaurentPoly sigma_const();

/// Returns r with p = q * r. Throws NonExactDivision when q does not divide p
/// and DivisionByZero when q is zero.
LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q);

/// Horner evaluation of the shifted ordinary polynomial times z^min_exp.
std::complex<double> eval_complex(const LaurentPoly& p, std::complex<double> z);

/// n such that p = (-A)^n q, if any. Returns 0 when both are zero.
std::optional<int> compare_up_to_unit(const LaurentPoly& p, const LaurentPoly& q);

/// Substitutes A -> A^-1.
LaurentPoly mirror_substitute(const LaurentPoly& p);

/// Substitutes A -> value for a polynomial with nonnegative exponents.
LaurentPoly compose(const LaurentPoly& p, const LaurentPoly& value);

/// Content (gcd of coefficients, positive); 0 for the zero polynomial.
BigInt content(const LaurentPoly& p);

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace yamada
