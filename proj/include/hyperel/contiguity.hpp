#pragma once

// Differential operators over Q(x), the six contiguity operators of the
// Gauss equation, their compositions H(k, l, m), and the three-term
// relations obtained by right division by the hypergeometric operator.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperel/exact_num.hpp"
#include "hyperel/hyper_core.hpp"
#include "hyperel/poly.hpp"

namespace hyperel {

/// sum_i coeffs[i] * d^i with d = d/dx.
class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(std::vector<RatFunc> coeffs);

  static DiffOp identity() { return DiffOp({RatFunc(1)}); }
  static DiffOp d() { return DiffOp({RatFunc(), RatFunc(1)}); }
  /// theta = x d
  static DiffOp theta() { return DiffOp({RatFunc(), RatFunc(Poly::x())}); }
  static DiffOp multiplication(const RatFunc& f) { return DiffOp({f}); }

  /// Highest power of d; -1 for the zero operator.
  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  RatFunc coeff(long i) const;
  const std::vector<RatFunc>& coefficients() const { return coeffs_; }

  /// Applies the operator to a function given as a rational function.
  RatFunc apply(const RatFunc& f) const;

  DiffOp& operator+=(const DiffOp& rhs);
  DiffOp& operator-=(const DiffOp& rhs);
  friend DiffOp operator+(DiffOp lhs, const DiffOp& rhs) { return lhs += rhs; }
  friend DiffOp operator-(DiffOp lhs, const DiffOp& rhs) { return lhs -= rhs; }
  /// Left multiplication by a function.
  friend DiffOp operator*(const RatFunc& f, const DiffOp& op);
  friend bool operator==(const DiffOp&, const DiffOp&) = default;

 private:
  void trim();

  std::vector<RatFunc> coeffs_;
};

/// outer o inner, with d f = f d + f'.
DiffOp compose(const DiffOp& outer, const DiffOp& inner);

std::string to_string(const DiffOp& op);

/// Specialized (a, b, c), with the integrality of the quantities whose
/// integer values make the generic structure collapse.
struct ParamPoint {
  ExactRational a;
  ExactRational b;
  ExactRational c;

  struct Flags {
    bool a = false, b = false, c = false, c_minus_a = false, c_minus_b = false, a_minus_b = false;
  };

  Flags degeneracy() const;
  /// No degeneracy flag set.
  bool generic() const;
  ParamPoint shifted(long da, long db, long dc) const;
};

std::string to_string(const ParamPoint& p);

/// d^2 + (c - (a+b+1)x)/(x(1-x)) d - ab/(x(1-x))
DiffOp make_L(const ParamPoint& p);

enum class Step { H1, B1, H2, B2, H3, B3 };

std::string to_string(Step s);

/// The first-order operator; throws DegenerateParameter naming the
/// vanishing factor for B1 ((1-a)(c-a)), B2 ((1-b)(c-b)), H3 ((c-a)(c-b)).
DiffOp step_operator(Step which, const ParamPoint& p);

/// The constant s with step(p) 2F1(p) = s 2F1(p shifted):
/// a, 1/(a-1), b, 1/(b-1), 1/c, c-1.
ExactRational step_factor(Step which, const ParamPoint& p);

/// Parameter shift produced by one step.
ParamPoint apply_shift(Step which, const ParamPoint& p);

enum class ShiftCase { i, ii, iii, iv };

std::string to_string(ShiftCase c);

/// (v0, v1, degree) in f = x^v0 (1-x)^v1 f0 with deg f0 = degree. A degree
/// of -1 stands for f = 0.
struct OrderDegree {
  long v0 = 0;
  long v1 = 0;
  long degree = 0;
  friend bool operator==(const OrderDegree&, const OrderDegree&) = default;
};

ShiftCase classify_shift(long k, long l, long m);

/// (k, l, m) with k <= l, its case and the predicted shapes of q and r.
struct ShiftTriple {
  long k;
  long l;
  long m;
  ShiftCase case_id;
  OrderDegree predicted_q;
  OrderDegree predicted_r;

  /// Throws std::invalid_argument when k > l.
  static ShiftTriple make(long k, long l, long m);
};

/// Default composition order for H(k, l, m): c-steps, then b-steps, then
/// a-steps, listed in application order.
std::vector<Step> composition_path(long k, long l, long m);

/// Composes the steps of `path` (first element applied first) starting at p.
DiffOp build_H(std::span<const Step> path, const ParamPoint& p);
DiffOp build_H(const ShiftTriple& shift, const ParamPoint& p);

/// (a, k)(b, l)/(c, m), the constant of the composed action.
ExactRational composed_factor(long k, long l, long m, const ParamPoint& p);

struct OreDivision {
  DiffOp quotient;
  RatFunc q;  // coefficient of d in the remainder
  RatFunc r;
};

/// P = quotient o L + q d + r for an L of order 2.
OreDivision ore_right_divide(const DiffOp& P, const DiffOp& L);

struct Remainder {
  RatFunc q;
  RatFunc r;
  friend bool operator==(const Remainder&, const Remainder&) = default;
};

/// Remainder of build_H(path, p) modulo L(p), reducing after every step so
/// the operator never exceeds order 2.
Remainder reduced_H(std::span<const Step> path, const ParamPoint& p);

struct ThreeTermRelation {
  RatFunc Q;
  RatFunc R;
  RatFunc q;
  RatFunc r;
};

/// Q, R with 2F1(a+k, b+l; c+m; x) = Q 2F1(a+1, b+1; c+1; x) + R 2F1(a, b; c; x).
///
/// Any k, l is accepted: for k > l the roles of (a, k) and (b, l) are
/// swapped by the a <-> b symmetry and the result is reported in the
/// caller's labels.
ThreeTermRelation three_term_QR(long k, long l, long m, const ParamPoint& p);

struct StructureReport {
  ShiftTriple shift;
  OrderDegree observed_q;
  OrderDegree observed_r;
  bool q_matches = false;
  bool r_matches = false;
  bool matches() const { return q_matches && r_matches; }
};

/// Observed (v0, v1, deg) of q and r at p against the tables. p must be
/// generic.
StructureReport structure_check(const ShiftTriple& shift, const ParamPoint& p);

/// Observed shape of a rational function: -1 degree for zero; throws
/// std::runtime_error if the stripped core still has a non-constant
/// denominator.
OrderDegree observed_shape(const RatFunc& f);

/// The case-(i) product-of-series expression for q0 evaluated at x0.
///
/// The four factors are handled as formal power series in x; the combination
/// is a polynomial of degree predicted_q.degree, which is checked by
/// requiring the next `guard_terms` coefficients to vanish. Throws
/// std::invalid_argument outside case (i), DegenerateParameter on a zero
/// denominator (1 - c, Pochhammer symbols, series lower parameters), and
/// std::runtime_error if the series does not truncate.
ExactRational q0_case_i_formula(const ShiftTriple& shift, const ParamPoint& p,
                                const ExactRational& x0, long guard_terms = 8);

/// q0 from the engine: the stripped core of q.
RatFunc engine_q0(const ShiftTriple& shift, const ParamPoint& p);

struct Lemma42Data {
  ExactRational Qpp;
  ExactRational Rpp;
  BigInt Q0pp;
  BigInt R0pp;
};

/// Three-term data for (a, b, c) = (-2n2, -2n2, 1), (k, l, m) = (-2n1, 2n1, 0)
/// evaluated at x = -1, with the integer numerators
///   Q0'' = -Q'' (-2n2, 2n1)(2n2+1, 2n1) / (8 n2^2),
///   R0'' =  R'' (-2n2, 2n1)(2n2+1, 2n1).
/// Throws IntegralityViolation if either is not an integer, and
/// std::logic_error if the relation fails to reproduce l1(n1, n2).
Lemma42Data lemma42(const PairN& pair);

/// (-1)^n2 2^n2 (2n2-1)!! (2n2 Q0'' + R0'') / ((-2n2, 2n1)(2n2+1, 2n1) n2!)
ExactRational lemma42_reassembly(const PairN& pair, const Lemma42Data& data);

}  // namespace hyperel
