#include <stdexcept>
#include <string>

#include "hyperel/errors.hpp"
#include "hyperel/exact_num.hpp"

namespace hyperel {

ExactRational round_down_dyadic(const ExactRational& v, unsigned bits) {
  BigInt scaled = v.get_num() << bits;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), v.get_den_mpz_t());
  return make_rational(q, pow2(bits));
}

ExactRational round_up_dyadic(const ExactRational& v, unsigned bits) {
  BigInt scaled = v.get_num() << bits;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), v.get_den_mpz_t());
  return make_rational(q, pow2(bits));
}

namespace {

constexpr unsigned kGuardBits = 16;

// Enclosure of atanh(z) = sum_{j>=0} z^(2j+1) / (2j+1) for 0 <= z < 1/2.
RationalInterval atanh_enclosure(const ExactRational& z, unsigned bits) {
  if (z == 0) return {0, 0};
  const unsigned work = bits + kGuardBits;
  const ExactRational z2 = z * z;
  const ExactRational one_minus_z2 = ExactRational(1) - z2;
  const ExactRational eps = make_rational(BigInt(1), pow2(work));

  ExactRational power_lo = round_down_dyadic(z, work);
  ExactRational power_hi = round_up_dyadic(z, work);
  ExactRational sum_lo(0);
  ExactRational sum_hi(0);
  for (long j = 0;; ++j) {
    const long odd = 2 * j + 1;
    sum_lo += round_down_dyadic(power_lo / odd, work);
    sum_hi += round_up_dyadic(power_hi / odd, work);
    power_lo = round_down_dyadic(power_lo * z2, work);
    power_hi = round_up_dyadic(power_hi * z2, work);
    // power_hi now bounds z^(2j+3); the omitted tail is at most
    // z^(2j+3) / ((2j+3)(1 - z^2)).
    const ExactRational tail = power_hi / (ExactRational(odd + 2) * one_minus_z2);
    if (tail < eps) {
      sum_hi += round_up_dyadic(tail, work);
      break;
    }
  }
  return {sum_lo, sum_hi};
}

}  // namespace

RationalInterval log_enclosure(const ExactRational& x, unsigned bits) {
  if (x <= 0) throw OutOfDomain("log_enclosure: argument must be positive, got " + to_string(x));
  if (bits == 0) throw std::invalid_argument("log_enclosure: precision must be positive");

  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  ExactRational y = x;
  if (e >= 0) {
    y /= ExactRational(pow2(static_cast<unsigned long>(e)));
  } else {
    y *= ExactRational(pow2(static_cast<unsigned long>(-e)));
  }
  while (y < 1) {
    y *= 2;
    --e;
  }
  while (y >= 2) {
    y /= 2;
    ++e;
  }

  const ExactRational z = (y - 1) / (y + 1);
  const RationalInterval series = atanh_enclosure(z, bits);
  RationalInterval result{2 * series.lo, 2 * series.hi};
  if (e != 0) {
    const RationalInterval half_ln2 = atanh_enclosure(make_rational(1, 3), bits);
    const ExactRational ln2_lo = 2 * half_ln2.lo;
    const ExactRational ln2_hi = 2 * half_ln2.hi;
    if (e > 0) {
      result.lo += e * ln2_lo;
      result.hi += e * ln2_hi;
    } else {
      result.lo += e * ln2_hi;
      result.hi += e * ln2_lo;
    }
  }
  return result;
}

RationalInterval log_enclosure(const ExactRational& x) {
  if (x < 2) throw OutOfDomain("adaptive log_enclosure needs x >= 2, got " + to_string(x));
  const ExactRational relative = make_rational(BigInt(1), pow2(64));
  for (unsigned bits = 64; bits <= (1U << 16); bits *= 2) {
    RationalInterval enclosure = log_enclosure(x, bits);
    if (enclosure.width() < relative * enclosure.lo) return enclosure;
  }
  throw std::runtime_error("log_enclosure: precision limit reached for " + to_string(x));
}

ExactRational dusart_constant(BoundDirection direction) {
  return direction == BoundDirection::lower ? make_rational(922, 1000) : make_rational(12762, 10000);
}

CertifiedBound dusart_bound(const ExactRational& x, BoundDirection direction,
                            unsigned precision_bits) {
  if (x < kDusartThreshold) {
    throw OutOfDomain("dusart_bound: requires x >= 599, got " + to_string(x));
  }
  const RationalInterval ln =
      precision_bits == 0 ? log_enclosure(x) : log_enclosure(x, precision_bits);
  const unsigned out_bits = precision_bits == 0 ? 64 : precision_bits;
  const ExactRational c = dusart_constant(direction);
  // x/L (1 + c/L) decreases in L > 0, so the lower bound takes the upper end
  // of the log enclosure and vice versa.
  if (direction == BoundDirection::lower) {
    const ExactRational& big = ln.hi;
    return {round_down_dyadic(x / big * (1 + c / big), out_bits), direction};
  }
  const ExactRational& small = ln.lo;
  return {round_up_dyadic(x / small * (1 + c / small), out_bits), direction};
}

}  // namespace hyperel
