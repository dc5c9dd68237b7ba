#pragma once

// Independent reference computations for the tests. Deliberately naive:
// nothing here calls into the library's arithmetic kernels.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Row-by-row Pascal triangle up to row n.
inline std::vector<std::vector<mpz_class>> pascal(unsigned n) {
  std::vector<std::vector<mpz_class>> rows(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    rows[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t trial_division_pi(std::uint64_t x) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 2; n <= x; ++n) count += trial_division_prime(n) ? 1 : 0;
  return count;
}

inline mpq_class rising(const mpq_class& a, long n) {
  mpq_class p = 1;
  for (long i = 0; i < n; ++i) p *= a + i;
  return p;
}

inline mpz_class factorial(long n) {
  mpz_class f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// sum_{n=0}^{terms-1} (a)_n (b)_n / ((c)_n n!) x^n, each term built from scratch.
inline mpq_class f21_sum(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& x,
                         long terms) {
  mpq_class sum = 0;
  mpq_class xn = 1;
  for (long n = 0; n < terms; ++n) {
    const mpq_class top = rising(a, n) * rising(b, n);
    if (top == 0) break;
    mpq_class term = top / (rising(c, n) * mpq_class(factorial(n))) * xn;
    term.canonicalize();
    sum += term;
    xn *= x;
  }
  return sum;
}

// l from its defining expression C(2n2+2n1, N) 2F1(-N, -N; 4n1+1; x0).
inline mpq_class ell_definition(int variant, long n1, long n2) {
  const long N = 2 * n2 - 2 * n1;
  const auto rows = pascal(static_cast<unsigned>(2 * n2 + 2 * n1));
  const mpq_class prefactor(rows[static_cast<std::size_t>(2 * n2 + 2 * n1)][static_cast<std::size_t>(N)]);
  return prefactor * f21_sum(-N, -N, 4 * n1 + 1, variant == 1 ? -1 : -3, N + 1);
}

inline mpz_class r_definition(int variant, long n1, long n2) {
  mpz_class two = 2;
  mpz_class v;
  if (variant == 1) {
    mpz_pow_ui(v.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(2 * n2 - 2));
    return (n1 + 1) % 2 == 0 ? v : mpz_class(-v);
  }
  mpz_pow_ui(v.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(4 * n2 - 1));
  return -v;
}

inline mpq_class random_rational(std::mt19937_64& rng, long num_range, long den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace oracle
