#pragma once

// Terminating Gauss hypergeometric sums and the l/r quantities built from
// them, with every alternative representation kept available for
// cross-checking.

#include <string>
#include <vector>

#include "hyperel/exact_num.hpp"
#include "hyperel/poly.hpp"

namespace hyperel {

struct F21Instance {
  ExactRational a;
  ExactRational b;
  ExactRational c;
  ExactRational x;
};

/// Index N of the last term: min over the nonpositive-integer members of
/// {-a, -b}. Throws NonTerminating if neither a nor b is a nonpositive
/// integer, DegenerateParameter if (c, n) vanishes for some n <= N.
long termination_index(const ExactRational& a, const ExactRational& b, const ExactRational& c);

/// Exact value of 2F1(a, b; c; x) for a terminating instance.
ExactRational f21(const F21Instance& inst);

/// The terminating series as a polynomial in x.
Poly f21_poly(const ExactRational& a, const ExactRational& b, const ExactRational& c);

/// (n1, n2) with 1 <= n1 <= n2; kappa = 4n.
struct PairN {
  long n1;
  long n2;

  PairN(long n1_, long n2_);

  long kappa1() const { return 4 * n1; }
  long kappa2() const { return 4 * n2; }
  /// 2n2 - 2n1, the degree of the terminating sums.
  long degree() const { return 2 * n2 - 2 * n1; }

  friend bool operator==(const PairN&, const PairN&) = default;
  friend auto operator<=>(const PairN& lhs, const PairN& rhs) {
    if (auto c = lhs.n2 <=> rhs.n2; c != 0) return c;
    return lhs.n1 <=> rhs.n1;
  }
};

std::string to_string(const PairN& p);

enum class Variant { one = 1, three = 3 };

struct EllR {
  BigInt ell;
  BigInt r;
};

/// l via the binomial expansion in exact integers, r from its definition.
EllR ell_and_r(Variant variant, const PairN& pair);
BigInt ell_value(Variant variant, const PairN& pair);
BigInt r_value(Variant variant, const PairN& pair);

enum class EllRep { definition, flipped, pfaff, jacobi };

/// l through one of its equivalent hypergeometric forms:
///  definition  C(2n2+2n1, 2n2-2n1) 2F1(-N, -N; 4n1+1; x0) with N = 2n2-2n1,
///              x0 = -1 or -3;
///  flipped     2F1(-N, -2n2-2n1; 1; -1), resp. 3^N 2F1(.., ..; 1; -1/3);
///  pfaff       2^N 2F1(-N, 2n2+2n1+1; 1; 1/2), resp. 4^N (.., 1/4);
///  jacobi      2^N P_N^(0,4n1)(0), resp. 4^N P_N^(0,4n1)(1/2).
ExactRational ell_via(Variant variant, const PairN& pair, EllRep rep);

/// P_n^(alpha,beta)(x) = (alpha+1, n)/n! 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2).
/// Throws DegenerateParameter when alpha is in {-1, ..., -n}.
ExactRational jacobi_P(long n, const ExactRational& alpha, const ExactRational& beta,
                       const ExactRational& x);

/// Compares, coefficient by coefficient, the degree-N polynomial
/// 2F1(-N, -N; 4n1+1; x) with C(2n2+2n1, N)^-1 (-x)^N 2F1(-N, -2n2-2n1; 1; 1/x).
bool check_inversion_identity(const PairN& pair);

/// (-1)^n2 (2n2-1)!! 2^n2 / n2!, the value of 2F1(-2n2, -2n2; 1; -1).
ExactRational ell1_at_n1_zero_closed_form(long n2);

/// (-1)^(n2+1) (2n2-1)!! 2^(n2-2) / (n2! n2), the value of
/// 2F1(-2n2+1, -2n2+1; 2; -1).
ExactRational raised_f21_closed_form(long n2);

/// Kummer's value of 2F1(a, b; a+1-b; -1) at a = -2N, reduced to
/// 2^(2N) (1/2 - N, N) / (1 - 2N - b, N).
///
/// Throws DegenerateParameter when the denominator Pochhammer vanishes or
/// when b is a nonpositive integer above -2N (the sum then stops at -b and
/// the Gamma form no longer describes it).
ExactRational kummer_minus1(long N, const ExactRational& b);

struct IdentityCheck {
  std::string name;
  long checked = 0;
  std::vector<std::string> failures;
};

struct IdentitySuiteOptions {
  long inversion_n2_max = 10;
  long representation_n2_max = 30;
  long closed_form_n2_max = 50;
  long kummer_N_max = 25;
};

/// The cross-checks between the hypergeometric representations and closed
/// forms: inversion identity, four-way agreement of l, the two closed forms
/// against direct sums, and Kummer's value on its admissible grid.
std::vector<IdentityCheck> run_identity_suite(const IdentitySuiteOptions& options = {});

}  // namespace hyperel
