#include "hyperel/exact_num.hpp"

#include <cctype>
#include <stdexcept>

#include "hyperel/errors.hpp"

namespace hyperel {

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

ExactRational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

ExactRational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  BigInt num(std::string(num_text), 10);
  BigInt den(std::string(den_text), 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return make_rational(num, den);
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const ExactRational& v) { return v.get_str(10); }

bool is_integer(const ExactRational& v) { return v.get_den() == 1; }

std::optional<long> as_small_integer(const ExactRational& v) {
  if (!is_integer(v) || !v.get_num().fits_slong_p()) return std::nullopt;
  return v.get_num().get_si();
}

bool is_nonpositive_integer(const ExactRational& v) { return is_integer(v) && v <= 0; }

ExactRational ipow(const ExactRational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("ipow: zero to a negative power");
    return ipow(ExactRational(1) / base, -exponent);
  }
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  ExactRational r(num, den);  // already coprime
  return r;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt pow2(unsigned long exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
  return r;
}

ExactRational pochhammer(const ExactRational& a, long n) {
  ExactRational product(1);
  if (n >= 0) {
    for (long j = 0; j < n; ++j) product *= a + j;
    return product;
  }
  for (long j = n; j < 0; ++j) {
    ExactRational factor = a + j;
    if (factor == 0) {
      throw DegenerateParameter("pochhammer(" + to_string(a) + ", " + std::to_string(n) +
                                "): zero factor in the negative-shift denominator");
    }
    product *= factor;
  }
  return ExactRational(1) / product;
}

BigInt binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt odd_double_factorial(unsigned long n) {
  if (n == 0) return 1;
  BigInt r;
  mpz_2fac_ui(r.get_mpz_t(), 2 * n - 1);
  return r;
}

// ---------------------------------------------------------------------------

PrimeTable::PrimeTable(std::uint64_t limit)
    : limit_(limit), composite_(limit + 1, false), cumulative_(limit + 1, 0) {
  if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be at least 2");
  composite_[0] = composite_[1] = true;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (composite_[p]) continue;
    for (std::uint64_t q = p * p; q <= limit; q += p) composite_[q] = true;
  }
  std::uint32_t count = 0;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    if (!composite_[n]) ++count;
    cumulative_[n] = count;
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw TableTooSmall("PrimeTable: " + std::to_string(n) + " exceeds limit " +
                                      std::to_string(limit_));
  return !composite_[n];
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  if (x > limit_) throw TableTooSmall("PrimeTable: " + std::to_string(x) + " exceeds limit " +
                                      std::to_string(limit_));
  return cumulative_[x];
}

std::uint64_t pi_of(std::uint64_t x, const PrimeTable& table) { return table.pi(x); }

std::optional<std::uint64_t> prime_in_open_interval(std::int64_t lo, std::int64_t hi,
                                                    const PrimeTable& table) {
  if (hi > 0 && static_cast<std::uint64_t>(hi) > table.limit()) {
    throw TableTooSmall("prime_in_open_interval: upper end " + std::to_string(hi) +
                        " exceeds sieve limit " + std::to_string(table.limit()));
  }
  const std::int64_t first = lo < 1 ? 2 : lo + 1;
  for (std::int64_t n = first; n < hi; ++n) {
    if (table.is_prime(static_cast<std::uint64_t>(n))) return static_cast<std::uint64_t>(n);
  }
  return std::nullopt;
}

}  // namespace hyperel
