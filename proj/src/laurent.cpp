#include "yamada/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "yamada/error.hpp"

namespace yamada {

namespace {

void sort_and_merge(std::vector<LaurentPoly::Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.exp < b.exp; });
  std::vector<LaurentPoly::Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coef += t.coef;
    } else {
      if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
  terms = std::move(merged);
}

}  // namespace

LaurentPoly::LaurentPoly(long constant) {
  if (constant != 0) terms_.push_back({0, BigInt(constant)});
}

LaurentPoly LaurentPoly::monomial(const BigInt& coef, int exp) {
  LaurentPoly p;
  if (coef != 0) p.terms_.push_back({exp, coef});
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  LaurentPoly p;
  sort_and_merge(terms);
  p.terms_ = std::move(terms);
  return p;
}

LaurentPoly LaurentPoly::from_dense(int low, const std::vector<BigInt>& coefs) {
  LaurentPoly p;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    if (coefs[i] != 0) p.terms_.push_back({low + static_cast<int>(i), coefs[i]});
  }
  return p;
}

BigInt LaurentPoly::coeff(int exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, int e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp) return it->coef;
  return 0;
}

const BigInt& LaurentPoly::leading_coeff() const {
  if (terms_.empty()) throw Error(ErrorKind::kInvalidArgument, "leading coefficient of zero polynomial");
  return terms_.back().coef;
}

std::vector<BigInt> LaurentPoly::dense() const {
  if (terms_.empty()) return {};
  std::vector<BigInt> out(static_cast<std::size_t>(max_exp() - min_exp() + 1));
  for (const auto& t : terms_) out[static_cast<std::size_t>(t.exp - min_exp())] = t.coef;
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->exp < b->exp)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp < a->exp) {
      out.push_back(*b++);
    } else {
      BigInt c = a->coef + b->coef;
      if (c != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) { return *this += -rhs; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const long span = static_cast<long>(a.max_exp() - a.min_exp()) + (b.max_exp() - b.min_exp()) + 1;
  const long products = static_cast<long>(a.terms_.size()) * static_cast<long>(b.terms_.size());
  LaurentPoly r;
  if (span <= 4 * products) {
    // Dense accumulation; the coefficient vector is short compared to the
    // number of partial products.
    std::vector<BigInt> acc(static_cast<std::size_t>(span));
    const int low = a.min_exp() + b.min_exp();
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        mpz_addmul(acc[static_cast<std::size_t>(ta.exp + tb.exp - low)].get_mpz_t(), ta.coef.get_mpz_t(),
                   tb.coef.get_mpz_t());
      }
    }
    return LaurentPoly::from_dense(low, acc);
  }
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(static_cast<std::size_t>(products));
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) terms.push_back({ta.exp + tb.exp, ta.coef * tb.coef});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) { return *this = *this * rhs; }

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(int d) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.exp += d;
  return r;
}

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

std::string LaurentPoly::to_string(char var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const bool negative = it->coef < 0;
    BigInt mag = abs(it->coef);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (it->exp == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << var;
    if (it->exp != 1) os << '^' << it->exp;
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(std::string_view text, char var) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::kParse, "empty polynomial text");
  std::vector<Term> terms;
  std::size_t i = 0;
  auto fail = [&](const char* why) {
    throw Error(ErrorKind::kParse, std::string(why) + " at offset " + std::to_string(i) + " in '" + s + "'");
  };
  auto read_int = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected digits");
    return BigInt(s.substr(start, i - start));
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    BigInt coef = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = read_int();
      have_coef = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
        if (i >= s.size() || s[i] != var) fail("expected variable after '*'");
      }
    }
    int exp = 0;
    if (i < s.size() && s[i] == var) {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int esign = 1;
        if (i < s.size() && s[i] == '-') {
          esign = -1;
          ++i;
        }
        BigInt e = read_int();
        if (!e.fits_sint_p()) fail("exponent out of range");
        exp = esign * static_cast<int>(e.get_si());
      }
    } else if (!have_coef) {
      fail("expected coefficient or variable");
    }
    terms.push_back({exp, sign * coef});
  }
  return from_terms(std::move(terms));
}

LaurentPoly arith(const LaurentPoly& p, const LaurentPoly& q, ArithKind kind, unsigned k) {
  switch (kind) {
    case ArithKind::kAdd:
      return p + q;
    case ArithKind::kSub:
      return p - q;
    case ArithKind::kMul:
      return p * q;
    case ArithKind::kNeg:
      return -p;
    case ArithKind::kPow:
      return p.pow(k);
  }
  return {};
}

LaurentPoly sigma_const() {
  return LaurentPoly::from_terms({{-1, 1}, {0, 1}, {1, 1}});
}

LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw Error(ErrorKind::kDivisionByZero, "exact_div by zero polynomial");
  if (p.is_zero()) return {};
  const int pd = p.max_exp() - p.min_exp();
  const int qd = q.max_exp() - q.min_exp();
  if (pd < qd) throw Error(ErrorKind::kNonExactDivision, "divisor has larger span than dividend");
  if (q.term_count() == 1) {
    const BigInt& c = q.terms().front().coef;
    std::vector<LaurentPoly::Term> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) {
      if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) {
        throw Error(ErrorKind::kNonExactDivision, "coefficient not divisible by monomial divisor");
      }
      out.push_back({t.exp - q.min_exp(), t.coef / c});
    }
    return LaurentPoly::from_terms(std::move(out));
  }
  std::vector<BigInt> rem = p.dense();
  const std::vector<BigInt> den = q.dense();
  const BigInt& lead = den.back();
  std::vector<BigInt> quot(static_cast<std::size_t>(pd - qd + 1));
  for (int i = pd; i >= qd; --i) {
    BigInt& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw Error(ErrorKind::kNonExactDivision, "leading coefficient does not divide");
    }
    BigInt c = top / lead;
    for (int j = 0; j <= qd; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(i - qd + j)].get_mpz_t(), c.get_mpz_t(),
                 den[static_cast<std::size_t>(j)].get_mpz_t());
    }
    quot[static_cast<std::size_t>(i - qd)] = std::move(c);
  }
  for (int i = 0; i < qd; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) throw Error(ErrorKind::kNonExactDivision, "nonzero remainder");
  }
  return LaurentPoly::from_dense(p.min_exp() - q.min_exp(), quot);
}

std::complex<double> eval_complex(const LaurentPoly& p, std::complex<double> z) {
  if (p.is_zero()) return 0.0;
  if (z == 0.0) {
    if (p.min_exp() < 0) throw Error(ErrorKind::kPoleAtZero, "evaluation at 0 with negative exponents");
    return p.min_exp() == 0 ? std::complex<double>(p.terms().front().coef.get_d(), 0.0) : 0.0;
  }
  std::complex<double> acc = 0.0;
  int e = p.max_exp();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    for (; e > it->exp; --e) acc *= z;
    acc += it->coef.get_d();
  }
  for (; e > p.min_exp(); --e) acc *= z;
  return acc * std::pow(z, p.min_exp());
}

std::optional<int> compare_up_to_unit(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() && q.is_zero()) return 0;
  if (p.is_zero() || q.is_zero() || p.term_count() != q.term_count()) return std::nullopt;
  const int n = p.min_exp() - q.min_exp();
  if (p.max_exp() - q.max_exp() != n) return std::nullopt;
  LaurentPoly candidate = q.shifted(n);
  if (n % 2 != 0) candidate = -candidate;
  if (candidate == p) return n;
  return std::nullopt;
}

LaurentPoly mirror_substitute(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> terms(p.terms().begin(), p.terms().end());
  for (auto& t : terms) t.exp = -t.exp;
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly compose(const LaurentPoly& p, const LaurentPoly& value) {
  if (p.is_zero()) return {};
  if (p.min_exp() < 0) throw Error(ErrorKind::kInvalidArgument, "compose needs nonnegative exponents");
  LaurentPoly acc;
  int e = p.max_exp();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    for (; e > it->exp; --e) acc *= value;
    acc += LaurentPoly::monomial(it->coef, 0);
  }
  for (; e > 0; --e) acc *= value;
  return acc;
}

BigInt content(const LaurentPoly& p) {
  BigInt g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace yamada
