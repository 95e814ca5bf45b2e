#pragma once

#include <string>

#include "yamada/laurent.hpp"

namespace yamada {

/// Quotient of two Laurent polynomials, always stored reduced: no common
/// nonmonomial factor, the denominator is an ordinary polynomial with nonzero
/// constant term and positive leading coefficient, and the integer contents
/// of numerator and denominator are coprime.
class RationalFn {
 public:
  RationalFn() : den_(1) {}
  RationalFn(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFn(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFn(const LaurentPoly& num, const LaurentPoly& den);

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == LaurentPoly(1); }
  /// The numerator when the denominator is 1; NonExactDivision otherwise.
  LaurentPoly to_poly() const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  RationalFn& operator+=(const RationalFn& b) { return *this = *this + b; }
  RationalFn& operator*=(const RationalFn& b) { return *this = *this * b; }
  RationalFn pow(unsigned k) const;

  /// Cross-multiplication equality.
  friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

  std::string to_string() const;

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

/// Greatest common divisor over Q of two ordinary polynomials, returned
/// primitive with positive leading coefficient. Laurent inputs are shifted to
/// ordinary polynomials first, so monomial factors are ignored.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace yamada
