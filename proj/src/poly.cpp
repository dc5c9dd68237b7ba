#include "hyperel/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hyperel/errors.hpp"

namespace hyperel {

Poly::Poly(std::vector<ExactRational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly::Poly(std::initializer_list<ExactRational> coefficients) : coeffs_(coefficients) { trim(); }

Poly Poly::constant(const ExactRational& c) { return Poly(std::vector<ExactRational>{c}); }

Poly Poly::monomial(const ExactRational& c, long degree) {
  if (degree < 0) throw std::invalid_argument("Poly::monomial: negative degree");
  std::vector<ExactRational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return Poly(std::move(coeffs));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

ExactRational Poly::coeff(long i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const ExactRational& Poly::leading() const {
  if (is_zero()) throw ZeroPolynomial("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

ExactRational Poly::operator()(const ExactRational& point) const {
  ExactRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= point;
    acc += *it;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<ExactRational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Poly r = *this;
  const ExactRational inv = ExactRational(1) / leading();
  return r *= inv;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<ExactRational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const ExactRational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

PolyDivision divmod(const Poly& dividend, const Poly& divisor) {
  if (divisor.is_zero()) throw ZeroPolynomial("divmod: division by the zero polynomial");
  const long dd = divisor.degree();
  std::vector<ExactRational> rem = dividend.coefficients();
  if (static_cast<long>(rem.size()) - 1 < dd) return {Poly{}, dividend};
  std::vector<ExactRational> quot(rem.size() - static_cast<std::size_t>(dd));
  const ExactRational inv_lead = ExactRational(1) / divisor.leading();
  const auto& dc = divisor.coefficients();
  for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
    const ExactRational& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    const ExactRational factor = top * inv_lead;
    quot[static_cast<std::size_t>(i - dd)] = factor;
    for (long j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(i - dd + j)] -= factor * dc[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

namespace {

using IntPoly = std::vector<BigInt>;

void trim_int(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(IntPoly& p) {
  if (p.empty()) return;
  BigInt content = 0;
  for (const auto& c : p) {
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content == 1) break;
  }
  if (p.back() < 0) content = -content;
  if (content != 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
}

IntPoly to_primitive_integer(const Poly& p) {
  BigInt lcm = 1;
  for (const auto& c : p.coefficients()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  IntPoly out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) {
    BigInt v = lcm / c.get_den() * c.get_num();
    out.push_back(std::move(v));
  }
  make_primitive(out);
  return out;
}

// Pseudo-remainder of a by b (both nonzero, deg a >= deg b), in place.
void pseudo_remainder(IntPoly& a, const IntPoly& b) {
  const BigInt& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const BigInt la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
    trim_int(a);
  }
}

}  // namespace

Poly gcd(const Poly& p, const Poly& q) {
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.is_constant() || q.is_constant()) return Poly::constant(1);
  IntPoly a = to_primitive_integer(p);
  IntPoly b = to_primitive_integer(q);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    pseudo_remainder(a, b);
    make_primitive(a);
    std::swap(a, b);
    if (a.size() == 1) return Poly::constant(1);
  }
  std::vector<ExactRational> coeffs;
  coeffs.reserve(a.size());
  for (auto& c : a) coeffs.emplace_back(c);
  return Poly(std::move(coeffs)).monic();
}

Poly compose_affine(const Poly& p, const ExactRational& scale, const ExactRational& shift) {
  const Poly inner{shift, scale};
  Poly acc;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * inner + Poly::constant(*it);
  }
  return acc;
}

std::string to_string(const Poly& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    ExactRational c = p.coeff(i);
    if (c == 0) continue;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    const bool unit = c == 1;
    if (!unit || i == 0) {
      const bool paren = !is_integer(c) && i > 0;
      if (paren) out << "(";
      out << to_string(c);
      if (paren) out << ")";
      if (i > 0) out << "*";
    }
    if (i >= 1) out << var;
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroPolynomial("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    const Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divmod(num_, g).quotient;
      den_ = divmod(den_, g).quotient;
    }
  }
  const ExactRational lead = den_.leading();
  if (lead != 1) {
    const ExactRational inv = ExactRational(1) / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

ExactRational RatFunc::eval(const ExactRational& point) const {
  const ExactRational d = den_(point);
  if (d == 0) {
    throw PoleAtPoint("rational function " + to_string(*this) + " has a pole at " + to_string(point));
  }
  return num_(point) / d;
}

RatFunc RatFunc::derivative() const {
  if (den_.is_constant()) return RatFunc(num_.derivative() * (ExactRational(1) / den_.leading()));
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc& RatFunc::operator+=(const RatFunc& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
    normalize();
    return *this;
  }
  if (den_.is_constant()) {
    *this = RatFunc(num_ * rhs.den_ + rhs.num_, rhs.den_);
    return *this;
  }
  if (rhs.den_.is_constant()) {
    *this = RatFunc(num_ + rhs.num_ * den_, den_);
    return *this;
  }
  const Poly g = gcd(den_, rhs.den_);
  const Poly lhs_cofactor = divmod(rhs.den_, g).quotient;
  const Poly rhs_cofactor = divmod(den_, g).quotient;
  *this = RatFunc(num_ * lhs_cofactor + rhs.num_ * rhs_cofactor, den_ * lhs_cofactor);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& rhs) { return *this += -rhs; }

RatFunc& RatFunc::operator*=(const RatFunc& rhs) {
  if (is_zero() || rhs.is_zero()) return *this = RatFunc();
  // Cross-cancel so the product is already reduced.
  Poly n1 = num_, d1 = den_, n2 = rhs.num_, d2 = rhs.den_;
  const Poly g1 = gcd(n1, d2);
  if (!g1.is_constant()) {
    n1 = divmod(n1, g1).quotient;
    d2 = divmod(d2, g1).quotient;
  }
  const Poly g2 = gcd(n2, d1);
  if (!g2.is_constant()) {
    n2 = divmod(n2, g2).quotient;
    d1 = divmod(d1, g2).quotient;
  }
  Poly num = n1 * n2;
  Poly den = d1 * d2;
  const ExactRational inv = ExactRational(1) / den.leading();
  num *= inv;
  den *= inv;
  *this = RatFunc(std::move(num), std::move(den), Reduced{});
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& rhs) {
  if (rhs.is_zero()) throw ZeroPolynomial("RatFunc: division by zero");
  return *this *= RatFunc(rhs.den_, rhs.num_);
}

RatFunc compose_affine(const RatFunc& f, const ExactRational& scale, const ExactRational& shift) {
  return RatFunc(compose_affine(f.num(), scale, shift), compose_affine(f.den(), scale, shift));
}

std::string to_string(const RatFunc& f, std::string_view var) {
  if (f.is_polynomial()) return to_string(f.num() * (ExactRational(1) / f.den().leading()), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

XFactorization strip_x_and_1mx(const Poly& p) {
  if (p.is_zero()) throw ZeroPolynomial("strip_x_and_1mx: zero polynomial");
  const auto& c = p.coefficients();
  const auto first_nonzero = std::find_if(c.begin(), c.end(), [](const ExactRational& v) { return v != 0; });
  XFactorization out;
  out.v0 = first_nonzero - c.begin();
  out.core = Poly(std::vector<ExactRational>(first_nonzero, c.end()));
  const Poly one_minus_x = Poly::one_minus_x();
  while (out.core(1) == 0) {
    out.core = divmod(out.core, one_minus_x).quotient;
    ++out.v1;
  }
  return out;
}

XFactorizationRational strip_x_and_1mx(const RatFunc& f) {
  const XFactorization num = strip_x_and_1mx(f.num());
  const XFactorization den = strip_x_and_1mx(f.den());
  return {num.v0 - den.v0, num.v1 - den.v1, RatFunc(num.core, den.core)};
}

}  // namespace hyperel
