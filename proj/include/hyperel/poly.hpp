#pragma once

// Dense univariate polynomials and reduced rational functions over Q in x.

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperel/exact_num.hpp"

namespace hyperel {

/// Coefficients indexed by degree, trailing zeros trimmed. The zero
/// polynomial has an empty coefficient vector and degree kZeroDegree.
class Poly {
 public:
  static constexpr long kZeroDegree = -1;

  Poly() = default;
  explicit Poly(std::vector<ExactRational> coefficients);
  Poly(std::initializer_list<ExactRational> coefficients);

  static Poly constant(const ExactRational& c);
  static Poly monomial(const ExactRational& c, long degree);
  static Poly x() { return monomial(1, 1); }
  /// 1 - x
  static Poly one_minus_x() { return Poly{1, -1}; }

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Coefficient of x^i; zero past the degree.
  ExactRational coeff(long i) const;
  const std::vector<ExactRational>& coefficients() const { return coeffs_; }
  const ExactRational& leading() const;

  ExactRational operator()(const ExactRational& point) const;

  Poly derivative() const;
  Poly monic() const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const ExactRational& s);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly p, const ExactRational& s) { return p *= s; }
  friend Poly operator*(const ExactRational& s, Poly p) { return p *= s; }
  friend Poly operator-(Poly p) { return p *= ExactRational(-1); }
  friend bool operator==(const Poly& lhs, const Poly& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

 private:
  void trim();

  std::vector<ExactRational> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& dividend, const Poly& divisor);

/// Monic gcd, computed with a primitive pseudo-remainder sequence over Z.
/// gcd(0, 0) = 0.
Poly gcd(const Poly& p, const Poly& q);

/// p(scale * x + shift)
Poly compose_affine(const Poly& p, const ExactRational& scale, const ExactRational& shift);

std::string to_string(const Poly& p, std::string_view var = "x");

/// A reduced quotient num / den: gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);
  RatFunc(const ExactRational& c) : RatFunc(Poly::constant(c)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Poly::constant(c)) {}                  // NOLINT

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// Throws PoleAtPoint when den(point) = 0.
  ExactRational eval(const ExactRational& point) const;
  RatFunc derivative() const;

  RatFunc& operator+=(const RatFunc& rhs);
  RatFunc& operator-=(const RatFunc& rhs);
  RatFunc& operator*=(const RatFunc& rhs);
  RatFunc& operator/=(const RatFunc& rhs);

  friend RatFunc operator+(RatFunc lhs, const RatFunc& rhs) { return lhs += rhs; }
  friend RatFunc operator-(RatFunc lhs, const RatFunc& rhs) { return lhs -= rhs; }
  friend RatFunc operator*(RatFunc lhs, const RatFunc& rhs) { return lhs *= rhs; }
  friend RatFunc operator/(RatFunc lhs, const RatFunc& rhs) { return lhs /= rhs; }
  friend RatFunc operator-(const RatFunc& f) { return RatFunc(-f.num_, f.den_); }
  friend bool operator==(const RatFunc& lhs, const RatFunc& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

RatFunc compose_affine(const RatFunc& f, const ExactRational& scale, const ExactRational& shift);

std::string to_string(const RatFunc& f, std::string_view var = "x");

/// p = x^v0 (1 - x)^v1 core with core(0) != 0 and core(1) != 0.
struct XFactorization {
  long v0 = 0;
  long v1 = 0;
  Poly core;
};

/// Same split for a rational function; v0, v1 may be negative and core is a
/// rational function with no zero or pole at 0 or 1.
struct XFactorizationRational {
  long v0 = 0;
  long v1 = 0;
  RatFunc core;
};

/// Throws ZeroPolynomial for p = 0.
XFactorization strip_x_and_1mx(const Poly& p);
XFactorizationRational strip_x_and_1mx(const RatFunc& f);

}  // namespace hyperel
