#include "yamada/rational.hpp"

#include "yamada/error.hpp"

namespace yamada {

namespace {

LaurentPoly to_ordinary(const LaurentPoly& p) { return p.shifted(-p.min_exp()); }

LaurentPoly primitive_part(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  BigInt c = content(p);
  if (p.leading_coeff() < 0) c = -c;
  return exact_div(p, LaurentPoly::monomial(c, 0));
}

// Pseudo-remainder of ordinary polynomials a, b (b nonzero).
LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b) {
  const int db = b.max_exp();
  const BigInt& lb = b.leading_coeff();
  while (!a.is_zero() && a.max_exp() >= db) {
    const int shift = a.max_exp() - db;
    LaurentPoly sub = b.shifted(shift).scaled(a.leading_coeff());
    a = a.scaled(lb) - sub;
  }
  return a;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return primitive_part(to_ordinary(b));
  if (b.is_zero()) return primitive_part(to_ordinary(a));
  LaurentPoly x = primitive_part(to_ordinary(a));
  LaurentPoly y = primitive_part(to_ordinary(b));
  if (x.max_exp() < y.max_exp()) std::swap(x, y);
  while (!y.is_zero()) {
    LaurentPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part(to_ordinary(r));
  }
  return primitive_part(x);
}

RationalFn::RationalFn(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::kDivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  const int shift = num.min_exp() - den.min_exp();
  LaurentPoly n = to_ordinary(num);
  LaurentPoly d = to_ordinary(den);
  LaurentPoly g = poly_gcd(n, d);
  if (g.max_exp() > 0) {
    n = exact_div(n, g);
    d = exact_div(d, g);
  }
  BigInt cn = content(n);
  BigInt cd = content(d);
  BigInt common;
  mpz_gcd(common.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (d.leading_coeff() < 0) common = -common;
  if (common != 1) {
    n = exact_div(n, LaurentPoly::monomial(common, 0));
    d = exact_div(d, LaurentPoly::monomial(common, 0));
  }
  num_ = n.shifted(shift);
  den_ = std::move(d);
}

LaurentPoly RationalFn::to_poly() const {
  if (!is_polynomial()) {
    throw Error(ErrorKind::kNonExactDivision, "rational function " + to_string() + " is not a polynomial");
  }
  return num_;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_polynomial() && b.is_polynomial()) return RationalFn(a.num_ * b.num_);
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) throw Error(ErrorKind::kDivisionByZero, "division by zero rational function");
  return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn RationalFn::pow(unsigned k) const {
  RationalFn r;
  r.num_ = num_.pow(k);
  r.den_ = den_.pow(k);
  return r;
}

std::string RationalFn::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace yamada
