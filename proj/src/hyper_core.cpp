#include "hyperel/hyper_core.hpp"

#include <stdexcept>

#include "hyperel/errors.hpp"

namespace hyperel {

long termination_index(const ExactRational& a, const ExactRational& b, const ExactRational& c) {
  long n = -1;
  for (const ExactRational* p : {&a, &b}) {
    if (!is_nonpositive_integer(*p)) continue;
    const auto v = as_small_integer(*p);
    if (!v) throw std::overflow_error("termination index does not fit in a long");
    const long candidate = -*v;
    if (n < 0 || candidate < n) n = candidate;
  }
  if (n < 0) {
    throw NonTerminating("2F1(" + to_string(a) + ", " + to_string(b) + "; " + to_string(c) +
                         "; x) does not terminate");
  }
  // (c, j) for j <= n vanishes iff c is one of 0, -1, ..., -(n-1).
  if (is_nonpositive_integer(c) && -*as_small_integer(c) <= n - 1) {
    throw DegenerateParameter("2F1 lower parameter c = " + to_string(c) +
                              " hits a zero Pochhammer factor before the series terminates");
  }
  return n;
}

ExactRational f21(const F21Instance& inst) {
  const long n_max = termination_index(inst.a, inst.b, inst.c);
  ExactRational sum(0);
  ExactRational term(1);
  for (long n = 0; n <= n_max; ++n) {
    sum += term;
    if (n == n_max) break;
    term *= (inst.a + n) * (inst.b + n) * inst.x / ((inst.c + n) * (n + 1));
  }
  return sum;
}

Poly f21_poly(const ExactRational& a, const ExactRational& b, const ExactRational& c) {
  const long n_max = termination_index(a, b, c);
  std::vector<ExactRational> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n_max) + 1);
  ExactRational term(1);
  for (long n = 0; n <= n_max; ++n) {
    coeffs.push_back(term);
    if (n == n_max) break;
    term *= (a + n) * (b + n) / ((c + n) * (n + 1));
  }
  return Poly(std::move(coeffs));
}

PairN::PairN(long n1_, long n2_) : n1(n1_), n2(n2_) {
  if (n1 < 1 || n1 > n2) {
    throw std::invalid_argument("PairN requires 1 <= n1 <= n2, got (" + std::to_string(n1) + ", " +
                                std::to_string(n2) + ")");
  }
}

std::string to_string(const PairN& p) {
  return "(" + std::to_string(p.n1) + "," + std::to_string(p.n2) + ")";
}

namespace {

// sum_i C(N, i) C(M, i) (-1)^i w^(N-i), where the term ratio
// C(N,i+1)C(M,i+1) / C(N,i)C(M,i) = (N-i)(M-i)/(i+1)^2 keeps everything in
// exact integer division.
BigInt binomial_pair_sum(unsigned long N, unsigned long M, unsigned long weight) {
  BigInt sum = 0;
  BigInt product = 1;  // C(N, i) C(M, i)
  const BigInt w = weight;
  BigInt wpow = weight == 1 ? BigInt(1) : ipow(w, N);
  for (unsigned long i = 0; i <= N; ++i) {
    if (weight == 1) {
      if (i % 2 == 0) sum += product; else sum -= product;
    } else {
      if (i % 2 == 0) sum += product * wpow; else sum -= product * wpow;
      if (i < N) mpz_divexact_ui(wpow.get_mpz_t(), wpow.get_mpz_t(), weight);
    }
    if (i == N) break;
    product *= (N - i);
    product *= (M - i);
    mpz_divexact_ui(product.get_mpz_t(), product.get_mpz_t(), (i + 1) * (i + 1));
  }
  return sum;
}

}  // namespace

BigInt ell_value(Variant variant, const PairN& pair) {
  const auto N = static_cast<unsigned long>(pair.degree());
  const auto M = static_cast<unsigned long>(2 * pair.n2 + 2 * pair.n1);
  return binomial_pair_sum(N, M, variant == Variant::one ? 1 : 3);
}

BigInt r_value(Variant variant, const PairN& pair) {
  if (variant == Variant::one) {
    BigInt r = pow2(static_cast<unsigned long>(2 * pair.n2 - 2));
    return pair.n1 % 2 == 1 ? r : BigInt(-r);
  }
  return -pow2(static_cast<unsigned long>(4 * pair.n2 - 1));
}

EllR ell_and_r(Variant variant, const PairN& pair) {
  return {ell_value(variant, pair), r_value(variant, pair)};
}

ExactRational jacobi_P(long n, const ExactRational& alpha, const ExactRational& beta,
                       const ExactRational& x) {
  if (n < 0) throw std::invalid_argument("jacobi_P: negative degree");
  const ExactRational lower = alpha + 1;
  if (is_nonpositive_integer(lower) && -*as_small_integer(lower) <= n - 1) {
    throw DegenerateParameter("jacobi_P: alpha = " + to_string(alpha) + " is in {-1, ..., -n}");
  }
  const ExactRational prefactor = pochhammer(lower, n) / ExactRational(factorial(static_cast<unsigned long>(n)));
  return prefactor * f21({ExactRational(-n), n + alpha + beta + 1, lower, (1 - x) / 2});
}

ExactRational ell_via(Variant variant, const PairN& pair, EllRep rep) {
  const long N = pair.degree();
  const long M = 2 * pair.n2 + 2 * pair.n1;
  const bool one = variant == Variant::one;
  switch (rep) {
    case EllRep::definition: {
      const ExactRational prefactor(binomial(static_cast<unsigned long>(M), N));
      return prefactor * f21({ExactRational(-N), ExactRational(-N), ExactRational(4 * pair.n1 + 1),
                              ExactRational(one ? -1 : -3)});
    }
    case EllRep::flipped: {
      if (one) return f21({ExactRational(-N), ExactRational(-M), 1, -1});
      return ipow(ExactRational(3), N) *
             f21({ExactRational(-N), ExactRational(-M), 1, make_rational(-1, 3)});
    }
    case EllRep::pfaff: {
      const long base = one ? 2 : 4;
      return ipow(ExactRational(base), N) *
             f21({ExactRational(-N), ExactRational(M + 1), 1, make_rational(1, base)});
    }
    case EllRep::jacobi: {
      const long base = one ? 2 : 4;
      const ExactRational point = one ? ExactRational(0) : make_rational(1, 2);
      return ipow(ExactRational(base), N) * jacobi_P(N, 0, ExactRational(4 * pair.n1), point);
    }
  }
  throw std::invalid_argument("ell_via: unknown representation");
}

bool check_inversion_identity(const PairN& pair) {
  const long N = pair.degree();
  const long M = 2 * pair.n2 + 2 * pair.n1;
  const Poly lhs = f21_poly(ExactRational(-N), ExactRational(-N), ExactRational(4 * pair.n1 + 1));

  // (-x)^N sum_j t_j x^-j = (-1)^N sum_j t_j x^(N-j)
  const Poly inner = f21_poly(ExactRational(-N), ExactRational(-M), 1);
  std::vector<ExactRational> coeffs(static_cast<std::size_t>(N) + 1);
  const ExactRational scale = (N % 2 == 0 ? ExactRational(1) : ExactRational(-1)) /
                              ExactRational(binomial(static_cast<unsigned long>(M), N));
  for (long j = 0; j <= inner.degree(); ++j) {
    coeffs[static_cast<std::size_t>(N - j)] = scale * inner.coeff(j);
  }
  return lhs == Poly(std::move(coeffs));
}

ExactRational ell1_at_n1_zero_closed_form(long n2) {
  if (n2 < 0) throw std::invalid_argument("ell1_at_n1_zero_closed_form: n2 must be nonnegative");
  const auto n = static_cast<unsigned long>(n2);
  ExactRational v = make_rational(odd_double_factorial(n) * pow2(n), factorial(n));
  return n2 % 2 == 0 ? v : ExactRational(-v);
}

ExactRational raised_f21_closed_form(long n2) {
  if (n2 < 1) throw std::invalid_argument("raised_f21_closed_form: n2 must be positive");
  const auto n = static_cast<unsigned long>(n2);
  // 2^(n2-2) may be 1/2 when n2 = 1.
  ExactRational v = ExactRational(odd_double_factorial(n)) * ipow(ExactRational(2), n2 - 2) /
                    ExactRational(factorial(n) * n2);
  return n2 % 2 == 1 ? v : ExactRational(-v);
}

ExactRational kummer_minus1(long N, const ExactRational& b) {
  if (N < 0) throw std::invalid_argument("kummer_minus1: N must be nonnegative");
  if (N > 0 && is_nonpositive_integer(b) && b > -2 * N) {
    throw DegenerateParameter("kummer_minus1: b = " + to_string(b) +
                              " truncates the sum before a = -2N does");
  }
  const ExactRational den = pochhammer(1 - 2 * N - b, N);
  if (den == 0) {
    throw DegenerateParameter("kummer_minus1: (1 - 2N - b, N) vanishes at b = " + to_string(b));
  }
  return ExactRational(pow2(static_cast<unsigned long>(2 * N))) *
         pochhammer(make_rational(1, 2) - N, N) / den;
}

std::vector<IdentityCheck> run_identity_suite(const IdentitySuiteOptions& options) {
  std::vector<IdentityCheck> out;

  IdentityCheck inversion{"inversion identity", 0, {}};
  for (long n2 = 1; n2 <= options.inversion_n2_max; ++n2) {
    for (long n1 = 1; n1 <= n2; ++n1) {
      ++inversion.checked;
      if (!check_inversion_identity(PairN(n1, n2))) inversion.failures.push_back(to_string(PairN(n1, n2)));
    }
  }
  out.push_back(std::move(inversion));

  IdentityCheck reps{"representation agreement", 0, {}};
  for (long n2 = 1; n2 <= options.representation_n2_max; ++n2) {
    for (long n1 = 1; n1 <= n2; ++n1) {
      const PairN pair(n1, n2);
      for (Variant v : {Variant::one, Variant::three}) {
        const ExactRational expected(ell_value(v, pair));
        for (EllRep rep : {EllRep::definition, EllRep::flipped, EllRep::pfaff, EllRep::jacobi}) {
          ++reps.checked;
          if (ell_via(v, pair, rep) != expected) {
            reps.failures.push_back("variant " + std::to_string(static_cast<int>(v)) + " " +
                                    to_string(pair) + " rep " + std::to_string(static_cast<int>(rep)));
          }
        }
      }
    }
  }
  out.push_back(std::move(reps));

  IdentityCheck closed{"closed forms", 0, {}};
  for (long n2 = 0; n2 <= options.closed_form_n2_max; ++n2) {
    ++closed.checked;
    const ExactRational a(-2 * n2);
    if (ell1_at_n1_zero_closed_form(n2) != f21({a, a, 1, -1})) {
      closed.failures.push_back("l1(0, " + std::to_string(n2) + ")");
    }
    if (n2 == 0) continue;
    ++closed.checked;
    const ExactRational a1(-2 * n2 + 1);
    if (raised_f21_closed_form(n2) != f21({a1, a1, 2, -1})) {
      closed.failures.push_back("2F1(-2n2+1, -2n2+1; 2; -1) at n2 = " + std::to_string(n2));
    }
  }
  out.push_back(std::move(closed));

  IdentityCheck kummer{"Kummer value at -1", 0, {}};
  for (long N = 0; N <= options.kummer_N_max; ++N) {
    std::vector<ExactRational> bs;
    for (long j = -6; j <= 2 * N + 6; ++j) {
      bs.emplace_back(-2 * N + j);
      bs.push_back(-2 * N + j + make_rational(1, 2));
      bs.push_back(-2 * N + j + make_rational(1, 3));
    }
    for (const auto& b : bs) {
      ExactRational closed_value;
      ExactRational direct;
      try {
        closed_value = kummer_minus1(N, b);
        direct = f21({ExactRational(-2 * N), b, ExactRational(-2 * N + 1 - b), -1});
      } catch (const DegenerateParameter&) {
        continue;
      }
      ++kummer.checked;
      if (closed_value != direct) {
        kummer.failures.push_back("N=" + std::to_string(N) + " b=" + to_string(b));
      }
    }
  }
  out.push_back(std::move(kummer));
  return out;
}

}  // namespace hyperel
