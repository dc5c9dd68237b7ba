#include "hyperel/question_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hyperel/errors.hpp"

namespace hyperel {

std::string to_string(Magnitude m) {
  switch (m) {
    case Magnitude::ell_less: return "ell_less";
    case Magnitude::equal_abs: return "equal_abs";
    case Magnitude::ell_greater: return "ell_greater";
  }
  return "?";
}

Magnitude parse_magnitude(std::string_view text) {
  if (text == "ell_less") return Magnitude::ell_less;
  if (text == "equal_abs") return Magnitude::equal_abs;
  if (text == "ell_greater") return Magnitude::ell_greater;
  throw std::invalid_argument("unknown magnitude '" + std::string(text) + "'");
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& work) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = std::min<std::size_t>(threads, count);
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

SearchRecord evaluate_pair(Variant variant, const PairN& pair) {
  EllR v = ell_and_r(variant, pair);
  const int cmp = mpz_cmpabs(v.ell.get_mpz_t(), v.r.get_mpz_t());
  const Magnitude mag = cmp < 0 ? Magnitude::ell_less : cmp == 0 ? Magnitude::equal_abs : Magnitude::ell_greater;
  const bool equal = v.ell == v.r;
  return {pair, variant, std::move(v.ell), std::move(v.r), equal, mag};
}

const std::vector<PairN>& known_equality_pairs() {
  static const std::vector<PairN> pairs{{1, 1}, {1, 2}, {1, 4}, {3, 4}};
  return pairs;
}

const std::vector<PairN>& known_greater_pairs() {
  static const std::vector<PairN> pairs{{1, 3}, {2, 3}, {3, 6}, {4, 6}, {6, 9}, {8, 12}};
  return pairs;
}

SearchSummary summarize(Variant variant, std::span<const SearchRecord> records) {
  const auto listed = [](const std::vector<PairN>& list, const PairN& p) {
    return std::find(list.begin(), list.end(), p) != list.end();
  };
  SearchSummary s;
  for (const auto& rec : records) {
    if (rec.equal) {
      s.equality_pairs.push_back(rec.pair);
      if (variant == Variant::three || !listed(known_equality_pairs(), rec.pair)) s.unexpected.push_back(rec.pair);
    } else if (rec.magnitude == Magnitude::ell_greater) {
      s.greater_pairs.push_back(rec.pair);
      if (variant == Variant::one && !listed(known_greater_pairs(), rec.pair)) s.unexpected.push_back(rec.pair);
    }
    if (variant == Variant::one && rec.pair.n2 >= kMagnitudeConjectureFrom &&
        rec.magnitude != Magnitude::ell_less) {
      s.conjecture_violations.push_back(rec.pair);
    }
  }
  for (auto* list : {&s.equality_pairs, &s.greater_pairs, &s.unexpected, &s.conjecture_violations}) {
    std::sort(list->begin(), list->end());
  }
  return s;
}

std::vector<SearchRecord> search_rows(Variant variant, long n2_from, long n2_to, unsigned threads) {
  if (n2_from < 1 || n2_to < n2_from - 1) throw std::invalid_argument("search_rows: bad n2 range");
  const auto rows = static_cast<std::size_t>(n2_to - n2_from + 1);
  std::vector<std::vector<SearchRecord>> by_row(rows);
  // Largest rows first so the pool drains evenly.
  parallel_for(rows, threads, [&](std::size_t i) {
    const std::size_t row = rows - 1 - i;
    const long n2 = n2_from + static_cast<long>(row);
    auto& out = by_row[row];
    out.reserve(static_cast<std::size_t>(n2));
    for (long n1 = 1; n1 <= n2; ++n1) out.push_back(evaluate_pair(variant, PairN(n1, n2)));
  });
  std::vector<SearchRecord> records;
  for (auto& row : by_row) {
    std::move(row.begin(), row.end(), std::back_inserter(records));
  }
  return records;
}

SearchResult search(Variant variant, long n2_max, unsigned threads) {
  if (n2_max < 1) throw std::invalid_argument("search: n2_max must be positive");
  SearchResult result;
  result.records = search_rows(variant, 1, n2_max, threads);
  result.summary = summarize(variant, result.records);
  return result;
}

// ---------------------------------------------------------------------------

Q4Check q4_bound_check(const PairN& pair) {
  const BigInt ell = ell_value(Variant::three, pair);
  const BigInt r = r_value(Variant::three, pair);
  Q4Check c{pair, abs(ell), make_rational(pow2(static_cast<unsigned long>(4 * pair.n2)),
                                          ipow(BigInt(3), static_cast<unsigned long>(2 * pair.n1))),
            abs(r), ell == r, false};
  c.chain_holds = ExactRational(c.abs_ell3) <= c.bound && c.bound < ExactRational(c.abs_r3);
  return c;
}

bool q4_tail_certified() {
  // base case n1 = 1, and 3^(2(n1+1)) = 9 * 3^(2n1) >= 3^(2n1).
  const BigInt base = ipow(BigInt(3), 2UL);
  return base > 2 && base >= 1;
}

Q4Answer answer_q4(long n2_max, unsigned threads) {
  if (n2_max < 1) throw std::invalid_argument("answer_q4: n2_max must be positive");
  std::vector<PairN> pairs;
  for (long n2 = 1; n2 <= n2_max; ++n2) {
    for (long n1 = 1; n1 <= n2; ++n1) pairs.emplace_back(n1, n2);
  }
  std::vector<std::optional<Q4Check>> slots(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { slots[i] = q4_bound_check(pairs[i]); });

  Q4Answer answer;
  answer.checks.reserve(pairs.size());
  for (auto& slot : slots) {
    Q4Check& c = *slot;
    if (c.equal) answer.equality_pairs.push_back(c.pair);
    answer.all_chains_hold = answer.all_chains_hold && c.chain_holds;
    answer.checks.push_back(std::move(c));
  }
  answer.tail_certified = q4_tail_certified();
  return answer;
}

bool szego_grid_check(long b_exponent, long degree, long grid_points) {
  if (b_exponent < 1 || degree < 0 || grid_points < 1) {
    throw std::invalid_argument("szego_grid_check: bad arguments");
  }
  const ExactRational beta(b_exponent);
  const ExactRational p_at_one = jacobi_P(degree, 0, beta, 1);
  const ExactRational rhs = ipow(ExactRational(2), b_exponent) * p_at_one * p_at_one;
  const Poly p = [&] {
    // P_n^(0,b)(x) as a polynomial in x: compose the 2F1 in (1-x)/2.
    const Poly in_t = f21_poly(ExactRational(-degree), ExactRational(degree + b_exponent + 1), 1);
    return compose_affine(in_t, make_rational(-1, 2), make_rational(1, 2));
  }();
  for (long i = 0; i < grid_points; ++i) {
    const ExactRational x = grid_points == 1 ? ExactRational(1) : -1 + make_rational(2 * i, grid_points - 1);
    const ExactRational px = p(x);
    const ExactRational lhs = ipow(ExactRational(1 + x), b_exponent) * px * px;
    if (lhs > rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

GapCertificate prime_gap_certificate(const PairN& pair, const PrimeTable& table, const BigInt& ell1) {
  GapCertificate cert{pair, pair.n2 + pair.n1, 2 * pair.n2 - 2 * pair.n1, std::nullopt, false, false};
  cert.witness_prime = prime_in_open_interval(cert.lo, cert.hi, table);
  if (cert.witness_prime) {
    cert.divisibility_checked = true;
    cert.witness_divides = mpz_divisible_ui_p(ell1.get_mpz_t(), *cert.witness_prime) != 0;
  }
  return cert;
}

GapCertificate prime_gap_certificate(const PairN& pair, const PrimeTable& table,
                                     bool check_divisibility) {
  if (static_cast<std::uint64_t>(2 * pair.n2 - 2 * pair.n1) > table.limit()) {
    throw TableTooSmall("prime_gap_certificate: sieve limit " + std::to_string(table.limit()) +
                        " below 2n2-2n1 for " + to_string(pair));
  }
  if (check_divisibility) return prime_gap_certificate(pair, table, ell_value(Variant::one, pair));
  GapCertificate cert{pair, pair.n2 + pair.n1, 2 * pair.n2 - 2 * pair.n1, std::nullopt, false, false};
  cert.witness_prime = prime_in_open_interval(cert.lo, cert.hi, table);
  return cert;
}

bool dusart_gap_positive(const ExactRational& x) {
  if (x < kDusartThreshold) {
    throw OutOfDomain("dusart_gap_positive: requires x >= 599, got " + to_string(x));
  }
  const ExactRational scaled = x * make_rational(6, 5);
  const CertifiedBound lower = dusart_bound(scaled, BoundDirection::lower);
  const CertifiedBound upper = dusart_bound(x, BoundDirection::upper);
  return lower.value - upper.value > 0;
}

bool sieve_gap_positive(const ExactRational& x, const PrimeTable& table) {
  const ExactRational scaled = x * make_rational(6, 5);
  BigInt ceil_scaled;
  mpz_cdiv_q(ceil_scaled.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  BigInt floor_x;
  mpz_fdiv_q(floor_x.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  const BigInt below = ceil_scaled - 1;
  if (!below.fits_ulong_p() || below.get_ui() > table.limit()) {
    throw TableTooSmall("sieve_gap_positive: 6x/5 exceeds the sieve limit");
  }
  return table.pi(below.get_ui()) > table.pi(floor_x.get_ui());
}

bool Prop44Report::finite_region_as_expected() const {
  return equality_pairs == std::vector<PairN>{PairN(1, 4)};
}

bool Prop44Report::verified() const {
  return finite_region_as_expected() && divisibility_failures.empty() &&
         witness_on_equality_pair.empty() && implication_holds && dusart_at_threshold &&
         dusart_grid_failures.empty() && sieve_failures.empty() && disagreements.empty();
}

Prop44Report verify_prop44(const PrimeTable& table, const Prop44Options& options) {
  constexpr long threshold = kDusartThreshold;
  if (table.limit() < 2 * threshold) {
    throw TableTooSmall("verify_prop44: sieve limit must be at least 1198");
  }
  const ExactRational cross_top = ExactRational(options.cross_check_max) * make_rational(6, 5);
  if (cross_top > ExactRational(table.limit())) {
    throw TableTooSmall("verify_prop44: sieve limit must cover 6/5 of cross_check_max");
  }

  Prop44Report report;

  // (A) every pair with n2 >= 4n1 and n1 + n2 <= 599.
  std::vector<PairN> pairs;
  for (long n1 = 1; 5 * n1 <= threshold; ++n1) {
    for (long n2 = 4 * n1; n1 + n2 <= threshold; ++n2) pairs.emplace_back(n1, n2);
  }
  struct Slot {
    bool equal = false;
    std::optional<GapCertificate> cert;
  };
  std::vector<Slot> slots(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t i) {
    const SearchRecord rec = evaluate_pair(Variant::one, pairs[i]);
    slots[i].equal = rec.equal;
    slots[i].cert = prime_gap_certificate(pairs[i], table, rec.ell);
  });
  report.pairs_swept = static_cast<long>(pairs.size());
  // 2n2 - 2n1 - 6/5 (n1 + n2) = 4/5 (n2 - 4n1): check the coefficients, then
  // the sign on every swept pair.
  const ExactRational c_n1 = -2 - make_rational(6, 5);
  const ExactRational c_n2 = 2 - make_rational(6, 5);
  report.implication_holds = c_n1 == make_rational(-16, 5) && c_n2 == make_rational(4, 5);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairN& p = pairs[i];
    GapCertificate& cert = *slots[i].cert;
    if (slots[i].equal) report.equality_pairs.push_back(p);
    if (cert.witness_prime) {
      ++report.witnesses_found;
      if (!cert.witness_divides) report.divisibility_failures.push_back(p);
      if (slots[i].equal) report.witness_on_equality_pair.push_back(p);
    }
    if (ExactRational(2 * p.n2 - 2 * p.n1) < make_rational(6, 5) * (p.n1 + p.n2)) {
      report.implication_holds = false;
    }
    report.certificates.push_back(std::move(cert));
  }
  std::sort(report.equality_pairs.begin(), report.equality_pairs.end());

  // (B) certified Dusart positivity on a geometric grid from the threshold.
  std::vector<ExactRational> grid;
  for (ExactRational x(threshold); x <= options.grid_max; x *= make_rational(11, 10)) grid.push_back(x);
  std::vector<char> positive(grid.size(), 0);
  parallel_for(grid.size(), options.threads,
               [&](std::size_t i) { positive[i] = dusart_gap_positive(grid[i]) ? 1 : 0; });
  report.dusart_at_threshold = positive.front() != 0;
  report.dusart_grid_points = static_cast<long>(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!positive[i]) report.dusart_grid_failures.push_back(grid[i]);
  }

  // (C) exact counts for every integer x in [599, cross_check_max].
  for (std::uint64_t x = threshold; x <= options.cross_check_max; ++x) {
    // ceil(6x/5) - 1
    const std::uint64_t below = (6 * x + 4) / 5 - 1;
    if (table.pi(below) <= table.pi(x)) report.sieve_failures.push_back(x);
  }
  report.sieve_checked_to = options.cross_check_max;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > ExactRational(options.cross_check_max)) break;
    ++report.agreement_points;
    if (sieve_gap_positive(grid[i], table) != (positive[i] != 0)) report.disagreements.push_back(grid[i]);
  }
  return report;
}

}  // namespace hyperel
