#pragma once

// The two questions about l = r: the bound-chain proof for variant 3, the
// prime-gap criterion with Dusart's bounds for variant 1, and brute-force
// sweeps over (n1, n2).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperel/exact_num.hpp"
#include "hyperel/hyper_core.hpp"

namespace hyperel {

enum class Magnitude { ell_less, equal_abs, ell_greater };

std::string to_string(Magnitude m);
Magnitude parse_magnitude(std::string_view text);

struct SearchRecord {
  PairN pair;
  Variant variant;
  BigInt ell;
  BigInt r;
  bool equal;
  Magnitude magnitude;

  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

SearchRecord evaluate_pair(Variant variant, const PairN& pair);

/// Equality pairs for variant 1 with n2 <= 20: (1,1), (1,2), (1,4), (3,4).
const std::vector<PairN>& known_equality_pairs();
/// The six variant-1 pairs with |l1| > |r1|.
const std::vector<PairN>& known_greater_pairs();

/// Below this n2 the variant-1 magnitude comparison has known exceptions.
inline constexpr long kMagnitudeConjectureFrom = 13;

struct SearchSummary {
  std::vector<PairN> equality_pairs;
  std::vector<PairN> greater_pairs;
  /// Equality or |l| > |r| pairs not in the known lists; for variant 3 any
  /// equality at all.
  std::vector<PairN> unexpected;
  /// Variant 1 pairs with n2 >= 13 whose magnitude is not ell_less.
  std::vector<PairN> conjecture_violations;

  bool has_findings() const { return !unexpected.empty() || !conjecture_violations.empty(); }
};

SearchSummary summarize(Variant variant, std::span<const SearchRecord> records);

/// Records for all 1 <= n1 <= n2 with n2 in [n2_from, n2_to], ordered by n2
/// then n1 regardless of how rows are distributed over threads.
std::vector<SearchRecord> search_rows(Variant variant, long n2_from, long n2_to, unsigned threads);

struct SearchResult {
  std::vector<SearchRecord> records;
  SearchSummary summary;
};

SearchResult search(Variant variant, long n2_max, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Variant 3: |l3| <= 2^(4n2) 3^(-2n1) < 2^(4n2-1) = |r3|.

struct Q4Check {
  PairN pair;
  BigInt abs_ell3;
  ExactRational bound;
  BigInt abs_r3;
  bool equal;  // l3 = r3
  bool chain_holds;
};

Q4Check q4_bound_check(const PairN& pair);

/// 2^(4n2) 3^(-2n1) < 2^(4n2-1) reduces to 3^(2n1) > 2; true at n1 = 1 and
/// 3^(2n1) is increasing, so it holds for every n1 >= 1.
bool q4_tail_certified();

struct Q4Answer {
  std::vector<Q4Check> checks;
  std::vector<PairN> equality_pairs;
  bool all_chains_hold = true;
  bool tail_certified = false;
};

Q4Answer answer_q4(long n2_max, unsigned threads = 1);

/// w(x) P_n^(0,b)(x)^2 <= w(1) P_n^(0,b)(1)^2 with w = (1+x)^b at
/// grid_points equally spaced rational points of [-1, 1].
bool szego_grid_check(long b_exponent, long degree, long grid_points);

// ---------------------------------------------------------------------------
// Variant 1 with 4n1 <= n2.

struct GapCertificate {
  PairN pair;
  std::int64_t lo;  // n2 + n1
  std::int64_t hi;  // 2n2 - 2n1
  std::optional<std::uint64_t> witness_prime;
  bool divisibility_checked = false;
  bool witness_divides = false;
};

GapCertificate prime_gap_certificate(const PairN& pair, const PrimeTable& table,
                                     bool check_divisibility);
/// Same, reusing an already computed l1.
GapCertificate prime_gap_certificate(const PairN& pair, const PrimeTable& table, const BigInt& ell1);

/// dusart_bound(6x/5, lower) - dusart_bound(x, upper) > 0. Throws
/// OutOfDomain for x < 599.
bool dusart_gap_positive(const ExactRational& x);

/// Primes strictly between x and 6x/5 exist by exact count:
/// pi(ceil(6x/5) - 1) > pi(floor(x)).
bool sieve_gap_positive(const ExactRational& x, const PrimeTable& table);

struct Prop44Options {
  /// Integers x in [599, cross_check_max] get the exact sieve check.
  std::uint64_t cross_check_max = 1'000'000;
  /// Geometric grid x = 599 (11/10)^j for the certified Dusart check.
  ExactRational grid_max = 100'000'000;
  unsigned threads = 1;
};

struct Prop44Report {
  // (A) finite region 4n1 <= n2, n1 + n2 <= 599.
  long pairs_swept = 0;
  std::vector<PairN> equality_pairs;
  std::vector<GapCertificate> certificates;
  long witnesses_found = 0;
  std::vector<PairN> divisibility_failures;
  std::vector<PairN> witness_on_equality_pair;
  // (B) 2n2 - 2n1 >= 6/5 (n1 + n2) for n2 >= 4n1, and certified Dusart positivity.
  bool implication_holds = false;
  bool dusart_at_threshold = false;
  long dusart_grid_points = 0;
  std::vector<ExactRational> dusart_grid_failures;
  // (C) exact sieve check on [599, cross_check_max].
  std::uint64_t sieve_checked_to = 0;
  std::vector<std::uint64_t> sieve_failures;
  // (B) and (C) on the grid points where both apply.
  long agreement_points = 0;
  std::vector<ExactRational> disagreements;

  bool finite_region_as_expected() const;
  bool verified() const;
};

/// Throws TableTooSmall unless the table covers 2 * 599 and the sieve check
/// range.
Prop44Report verify_prop44(const PrimeTable& table, const Prop44Options& options = {});

/// Runs `work(i)` for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& work);

}  // namespace hyperel
