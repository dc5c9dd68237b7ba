#pragma once

// Exact scalars and the number-theoretic kernels everything else is built on.
//
// BigInt and ExactRational are GMP's mpz_class / mpq_class. Every
// ExactRational produced by this library is canonical (gcd(num, den) = 1,
// den > 0); values built by hand must go through make_rational().

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperel {

using BigInt = mpz_class;
using ExactRational = mpq_class;

ExactRational make_rational(const BigInt& num, const BigInt& den);
ExactRational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
ExactRational parse_rational(std::string_view text);
std::string to_string(const BigInt& v);
std::string to_string(const ExactRational& v);

bool is_integer(const ExactRational& v);
// Integer value of v, or nullopt if v is not an integer.
std::optional<long> as_small_integer(const ExactRational& v);
bool is_nonpositive_integer(const ExactRational& v);

ExactRational ipow(const ExactRational& base, long exponent);
BigInt ipow(const BigInt& base, unsigned long exponent);
BigInt pow2(unsigned long exponent);

/// Rising factorial (a, n) = Gamma(a + n) / Gamma(a), for either sign of n.
///
/// For n >= 0 this is a (a+1) ... (a+n-1). For n < 0 it is
/// 1 / ((a+n)(a+n+1) ... (a-1)) = 1 / (a+n, -n); throws DegenerateParameter
/// when one of those factors is zero.
ExactRational pochhammer(const ExactRational& a, long n);

/// C(n, k); zero when k < 0 or k > n.
BigInt binomial(unsigned long n, long k);
BigInt factorial(unsigned long n);
/// 1 * 3 * 5 * ... * (2n - 1); 1 for n = 0.
BigInt odd_double_factorial(unsigned long n);

inline constexpr std::uint64_t kDefaultSieveLimit = 2'000'000;

/// Eratosthenes bit-set over [0, limit] plus cumulative prime counts.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit = kDefaultSieveLimit);

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const;
  std::uint64_t pi(std::uint64_t x) const;

 private:
  std::uint64_t limit_;
  std::vector<bool> composite_;
  std::vector<std::uint32_t> cumulative_;
};

std::uint64_t pi_of(std::uint64_t x, const PrimeTable& table);

/// Smallest prime p with lo < p < hi, if any.
std::optional<std::uint64_t> prime_in_open_interval(std::int64_t lo, std::int64_t hi,
                                                    const PrimeTable& table);

// ---------------------------------------------------------------------------
// Certified real arithmetic for the prime-counting bounds.

struct RationalInterval {
  ExactRational lo;
  ExactRational hi;

  ExactRational width() const { return hi - lo; }
  bool contains(const ExactRational& v) const { return lo <= v && v <= hi; }
};

/// floor(v * 2^bits) / 2^bits and the matching ceiling.
ExactRational round_down_dyadic(const ExactRational& v, unsigned bits);
ExactRational round_up_dyadic(const ExactRational& v, unsigned bits);

/// Enclosure of ln(x) for x > 0 at a fixed working precision.
///
/// x is reduced to 2^e * y with y in [1, 2); ln y and ln 2 come from the
/// atanh series 2 sum z^(2j+1)/(2j+1) with every partial term rounded
/// outward to `bits` fractional bits and the truncated tail bounded by
/// z^(2K+1) / ((2K+1)(1 - z^2)).
RationalInterval log_enclosure(const ExactRational& x, unsigned bits);

/// As above, doubling the precision from 64 bits until the width is below
/// 2^-64 times the lower endpoint. Requires x >= 2 so that ln x > 0.
RationalInterval log_enclosure(const ExactRational& x);

enum class BoundDirection { lower, upper };

struct CertifiedBound {
  ExactRational value;
  BoundDirection direction;
};

/// 922/1000 for the lower bound, 12762/10000 for the upper one.
ExactRational dusart_constant(BoundDirection direction);
inline constexpr long kDusartThreshold = 599;

/// x / ln x * (1 + C / ln x) with C = 0.922 (lower) or 1.2762 (upper),
/// rounded in the stated direction. precision_bits = 0 selects the adaptive
/// log enclosure. Throws OutOfDomain for x < 599.
CertifiedBound dusart_bound(const ExactRational& x, BoundDirection direction,
                            unsigned precision_bits = 0);

}  // namespace hyperel
