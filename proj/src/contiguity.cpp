#include "hyperel/contiguity.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "hyperel/errors.hpp"

namespace hyperel {

DiffOp::DiffOp(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void DiffOp::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RatFunc DiffOp::coeff(long i) const {
  if (i < 0 || i > order()) return {};
  return coeffs_[static_cast<std::size_t>(i)];
}

RatFunc DiffOp::apply(const RatFunc& f) const {
  RatFunc result;
  RatFunc derivative = f;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) derivative = derivative.derivative();
    if (!coeffs_[i].is_zero()) result += coeffs_[i] * derivative;
  }
  return result;
}

DiffOp& DiffOp::operator+=(const DiffOp& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

DiffOp operator*(const RatFunc& f, const DiffOp& op) {
  std::vector<RatFunc> coeffs;
  coeffs.reserve(op.coeffs_.size());
  for (const auto& c : op.coeffs_) coeffs.push_back(f * c);
  return DiffOp(std::move(coeffs));
}

DiffOp compose(const DiffOp& outer, const DiffOp& inner) {
  if (outer.is_zero() || inner.is_zero()) return {};
  const long n_out = outer.order();
  const long n_in = inner.order();
  std::vector<RatFunc> result(static_cast<std::size_t>(n_out + n_in) + 1);
  for (long j = 0; j <= n_in; ++j) {
    // d^i o (B d^j) = sum_t C(i, t) B^(t) d^(i - t + j)
    std::vector<RatFunc> derivs{inner.coeff(j)};
    if (derivs.front().is_zero()) continue;
    for (long t = 1; t <= n_out; ++t) derivs.push_back(derivs.back().derivative());
    for (long i = 0; i <= n_out; ++i) {
      const RatFunc a = outer.coeff(i);
      if (a.is_zero()) continue;
      for (long t = 0; t <= i; ++t) {
        const RatFunc& bt = derivs[static_cast<std::size_t>(t)];
        if (bt.is_zero()) continue;
        result[static_cast<std::size_t>(i - t + j)] +=
            a * bt * RatFunc(ExactRational(binomial(static_cast<unsigned long>(i), t)));
      }
    }
  }
  return DiffOp(std::move(result));
}

std::string to_string(const DiffOp& op) {
  if (op.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long i = op.order(); i >= 0; --i) {
    const RatFunc c = op.coeff(i);
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "[" << to_string(c) << "]";
    if (i >= 1) out << "*D";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

ParamPoint::Flags ParamPoint::degeneracy() const {
  Flags f;
  f.a = is_integer(a);
  f.b = is_integer(b);
  f.c = is_integer(c);
  f.c_minus_a = is_integer(ExactRational(c - a));
  f.c_minus_b = is_integer(ExactRational(c - b));
  f.a_minus_b = is_integer(ExactRational(a - b));
  return f;
}

bool ParamPoint::generic() const {
  const Flags f = degeneracy();
  return !(f.a || f.b || f.c || f.c_minus_a || f.c_minus_b || f.a_minus_b);
}

ParamPoint ParamPoint::shifted(long da, long db, long dc) const { return {a + da, b + db, c + dc}; }

std::string to_string(const ParamPoint& p) {
  return "(a,b,c)=(" + to_string(p.a) + "," + to_string(p.b) + "," + to_string(p.c) + ")";
}

DiffOp make_L(const ParamPoint& p) {
  const Poly x_one_minus_x = Poly::x() * Poly::one_minus_x();
  const RatFunc p1(Poly{p.c, -(p.a + p.b + 1)}, x_one_minus_x);
  const RatFunc p0(Poly::constant(-(p.a * p.b)), x_one_minus_x);
  return DiffOp({p0, p1, RatFunc(1)});
}

std::string to_string(Step s) {
  switch (s) {
    case Step::H1: return "H1";
    case Step::B1: return "B1";
    case Step::H2: return "H2";
    case Step::B2: return "B2";
    case Step::H3: return "H3";
    case Step::B3: return "B3";
  }
  return "?";
}

namespace {

ExactRational nonzero_or_throw(const ExactRational& v, Step s, const ParamPoint& p,
                               const char* factor) {
  if (v == 0) {
    throw DegenerateParameter(to_string(s) + " at " + to_string(p) + ": factor " + factor +
                              " vanishes");
  }
  return v;
}

// -x(1-x) d + (u x + v)
DiffOp lowering_core(const ExactRational& u, const ExactRational& v) {
  return DiffOp({RatFunc(Poly{v, u}), RatFunc(Poly{0, -1, 1})});
}

}  // namespace

DiffOp step_operator(Step which, const ParamPoint& p) {
  const auto& [a, b, c] = p;
  switch (which) {
    case Step::H1:
      return DiffOp({RatFunc(a), RatFunc(Poly::x())});
    case Step::H2:
      return DiffOp({RatFunc(b), RatFunc(Poly::x())});
    case Step::B3:
      return DiffOp({RatFunc(ExactRational(c - 1)), RatFunc(Poly::x())});
    case Step::B1: {
      nonzero_or_throw(1 - a, which, p, "1-a");
      nonzero_or_throw(c - a, which, p, "c-a");
      const ExactRational scale = 1 / ((1 - a) * (c - a));
      return RatFunc(scale) * lowering_core(b, a - c);
    }
    case Step::B2: {
      nonzero_or_throw(1 - b, which, p, "1-b");
      nonzero_or_throw(c - b, which, p, "c-b");
      const ExactRational scale = 1 / ((1 - b) * (c - b));
      return RatFunc(scale) * lowering_core(a, b - c);
    }
    case Step::H3: {
      nonzero_or_throw(c - a, which, p, "c-a");
      nonzero_or_throw(c - b, which, p, "c-b");
      const ExactRational scale = 1 / ((c - a) * (c - b));
      return RatFunc(scale) * DiffOp({RatFunc(ExactRational(c - a - b)), RatFunc(Poly::one_minus_x())});
    }
  }
  throw std::invalid_argument("step_operator: unknown step");
}

ExactRational step_factor(Step which, const ParamPoint& p) {
  switch (which) {
    case Step::H1: return p.a;
    case Step::B1: return 1 / nonzero_or_throw(p.a - 1, which, p, "a-1");
    case Step::H2: return p.b;
    case Step::B2: return 1 / nonzero_or_throw(p.b - 1, which, p, "b-1");
    case Step::H3: return 1 / nonzero_or_throw(p.c, which, p, "c");
    case Step::B3: return p.c - 1;
  }
  throw std::invalid_argument("step_factor: unknown step");
}

ParamPoint apply_shift(Step which, const ParamPoint& p) {
  switch (which) {
    case Step::H1: return p.shifted(1, 0, 0);
    case Step::B1: return p.shifted(-1, 0, 0);
    case Step::H2: return p.shifted(0, 1, 0);
    case Step::B2: return p.shifted(0, -1, 0);
    case Step::H3: return p.shifted(0, 0, 1);
    case Step::B3: return p.shifted(0, 0, -1);
  }
  throw std::invalid_argument("apply_shift: unknown step");
}

std::string to_string(ShiftCase c) {
  switch (c) {
    case ShiftCase::i: return "i";
    case ShiftCase::ii: return "ii";
    case ShiftCase::iii: return "iii";
    case ShiftCase::iv: return "iv";
  }
  return "?";
}

ShiftCase classify_shift(long k, long l, long m) {
  const bool m_positive = m >= 1;
  const bool low_total = m - k - l <= -1;
  if (m_positive) return low_total ? ShiftCase::i : ShiftCase::ii;
  return low_total ? ShiftCase::iii : ShiftCase::iv;
}

ShiftTriple ShiftTriple::make(long k, long l, long m) {
  if (k > l) throw std::invalid_argument("ShiftTriple requires k <= l");
  ShiftTriple t{k, l, m, classify_shift(k, l, m), {}, {}};
  switch (t.case_id) {
    case ShiftCase::i:
      t.predicted_q = {1 - m, m + 1 - k - l, l - 1};
      t.predicted_r = {1 - m, m + 1 - k - l, l - 2};
      break;
    case ShiftCase::ii:
      t.predicted_q = {1 - m, 1, m - k - 1};
      t.predicted_r = {1 - m, 0, m - k - 1};
      break;
    case ShiftCase::iii:
      t.predicted_q = {1, m + 1 - k - l, l - m - 1};
      t.predicted_r = {0, m + 1 - k - l, l - m - 1};
      break;
    case ShiftCase::iv:
      t.predicted_q = {1, 1, -k - 1};
      t.predicted_r = {0, 0, -k};
      break;
  }
  return t;
}

std::vector<Step> composition_path(long k, long l, long m) {
  std::vector<Step> path;
  const auto append = [&path](long count, Step up, Step down) {
    for (long i = 0; i < (count < 0 ? -count : count); ++i) path.push_back(count > 0 ? up : down);
  };
  append(m, Step::H3, Step::B3);
  append(l, Step::H2, Step::B2);
  append(k, Step::H1, Step::B1);
  return path;
}

DiffOp build_H(std::span<const Step> path, const ParamPoint& p) {
  DiffOp op = DiffOp::identity();
  ParamPoint current = p;
  for (Step s : path) {
    op = compose(step_operator(s, current), op);
    current = apply_shift(s, current);
  }
  return op;
}

DiffOp build_H(const ShiftTriple& shift, const ParamPoint& p) {
  const auto path = composition_path(shift.k, shift.l, shift.m);
  return build_H(path, p);
}

ExactRational composed_factor(long k, long l, long m, const ParamPoint& p) {
  return pochhammer(p.a, k) * pochhammer(p.b, l) / pochhammer(p.c, m);
}

OreDivision ore_right_divide(const DiffOp& P, const DiffOp& L) {
  if (L.order() != 2) throw std::invalid_argument("ore_right_divide: divisor must have order 2");
  const RatFunc lead = L.coeff(2);
  DiffOp rem = P;
  std::vector<RatFunc> quotient(static_cast<std::size_t>(std::max<long>(P.order() - 1, 0)));
  while (rem.order() >= 2) {
    const long shift = rem.order() - 2;
    const RatFunc factor = rem.coeff(rem.order()) / lead;
    quotient[static_cast<std::size_t>(shift)] += factor;
    std::vector<RatFunc> mono(static_cast<std::size_t>(shift) + 1);
    mono.back() = factor;
    rem -= compose(DiffOp(std::move(mono)), L);
  }
  return {DiffOp(std::move(quotient)), rem.coeff(1), rem.coeff(0)};
}

Remainder reduced_H(std::span<const Step> path, const ParamPoint& p) {
  // q = qn / w^s, r = rn / w^s after s steps, w = x(1-x), so that every step
  // stays in polynomial arithmetic; L = d^2 + (P1/w) d + P0/w.
  const Poly w{0, 1, -1};
  const Poly dw = w.derivative();
  const Poly P1{p.c, -(p.a + p.b + 1)};
  const Poly P0{-p.a * p.b};
  Poly qn;
  Poly rn = Poly::constant(1);
  long s = 0;
  ParamPoint current = p;
  for (Step st : path) {
    const DiffOp step = step_operator(st, current);
    if (!step.coeff(1).is_polynomial() || !step.coeff(0).is_polynomial()) {
      throw std::logic_error("reduced_H: step operator with non-polynomial coefficients");
    }
    const Poly alpha = step.coeff(1).num();
    const Poly beta = step.coeff(0).num();
    // (alpha d + beta)(q d + r) with d^2 replaced by -(P1/w) d - P0/w.
    const Poly alpha_q = alpha * qn;
    const ExactRational sw(s);
    Poly next_q = alpha * (qn.derivative() * w - sw * qn * dw) + alpha * rn * w + beta * qn * w - alpha_q * P1;
    Poly next_r = alpha * (rn.derivative() * w - sw * rn * dw) + beta * rn * w - alpha_q * P0;
    qn = std::move(next_q);
    rn = std::move(next_r);
    ++s;
    current = apply_shift(st, current);
  }
  Poly ws = Poly::constant(1);
  for (long i = 0; i < s; ++i) ws *= w;
  return {RatFunc(std::move(qn), ws), RatFunc(std::move(rn), std::move(ws))};
}

ThreeTermRelation three_term_QR(long k, long l, long m, const ParamPoint& p) {
  if (k > l) return three_term_QR(l, k, m, ParamPoint{p.b, p.a, p.c});

  if (p.c == 0) throw DegenerateParameter("three_term_QR: c = 0");
  if (p.a * p.b == 0) throw DegenerateParameter("three_term_QR: ab = 0 at " + to_string(p));
  const ExactRational factor = composed_factor(k, l, m, p);
  if (factor == 0) {
    throw DegenerateParameter("three_term_QR: (a,k)(b,l)/(c,m) vanishes at " + to_string(p));
  }
  const auto path = composition_path(k, l, m);
  Remainder rem = reduced_H(path, p);
  // H F = q F' + r F, F' = (ab/c) F(a+1, b+1; c+1), H F = factor F(a+k, b+l; c+m).
  const ExactRational q_scale = p.a * p.b / (p.c * factor);
  const ExactRational r_scale = 1 / factor;
  RatFunc Q = RatFunc(q_scale) * rem.q;
  RatFunc R = RatFunc(r_scale) * rem.r;
  return {std::move(Q), std::move(R), std::move(rem.q), std::move(rem.r)};
}

OrderDegree observed_shape(const RatFunc& f) {
  if (f.is_zero()) return {0, 0, -1};
  const XFactorizationRational split = strip_x_and_1mx(f);
  if (!split.core.is_polynomial()) {
    throw std::runtime_error("observed_shape: " + to_string(f) +
                             " has poles away from 0 and 1");
  }
  return {split.v0, split.v1, split.core.num().degree()};
}

namespace {

bool shape_matches(const OrderDegree& predicted, const OrderDegree& observed) {
  if (predicted.degree < 0) return observed.degree < 0;
  return predicted == observed;
}

}  // namespace

StructureReport structure_check(const ShiftTriple& shift, const ParamPoint& p) {
  if (!p.generic()) {
    throw DegenerateParameter("structure_check needs a generic point, got " + to_string(p));
  }
  const ThreeTermRelation rel = three_term_QR(shift.k, shift.l, shift.m, p);
  StructureReport report{shift, observed_shape(rel.q), observed_shape(rel.r), false, false};
  report.q_matches = shape_matches(shift.predicted_q, report.observed_q);
  report.r_matches = shape_matches(shift.predicted_r, report.observed_r);
  return report;
}

RatFunc engine_q0(const ShiftTriple& shift, const ParamPoint& p) {
  const ThreeTermRelation rel = three_term_QR(shift.k, shift.l, shift.m, p);
  if (rel.q.is_zero()) return {};
  return strip_x_and_1mx(rel.q).core;
}

namespace {

// First `count` coefficients of 2F1(a, b; c; x) as a formal power series.
std::vector<ExactRational> f21_series(const ExactRational& a, const ExactRational& b,
                                      const ExactRational& c, long count) {
  std::vector<ExactRational> out;
  out.reserve(static_cast<std::size_t>(count));
  ExactRational term(1);
  for (long n = 0; n < count; ++n) {
    out.push_back(term);
    if (term == 0) continue;
    const ExactRational den = (c + n) * (n + 1);
    if (den == 0) {
      throw DegenerateParameter("series 2F1(" + to_string(a) + ", " + to_string(b) + "; " +
                                to_string(c) + "; x) has a zero lower Pochhammer factor");
    }
    term *= (a + n) * (b + n) / den;
  }
  return out;
}

std::vector<ExactRational> truncated_product(const std::vector<ExactRational>& f,
                                             const std::vector<ExactRational>& g, long shift) {
  const auto count = f.size();
  std::vector<ExactRational> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; i + j + static_cast<std::size_t>(shift) < count; ++j) {
      out[i + j + static_cast<std::size_t>(shift)] += f[i] * g[j];
    }
  }
  return out;
}

}  // namespace

ExactRational q0_case_i_formula(const ShiftTriple& shift, const ParamPoint& p,
                                const ExactRational& x0, long guard_terms) {
  if (shift.case_id != ShiftCase::i) {
    throw std::invalid_argument("q0_case_i_formula applies to case (i) only");
  }
  const auto& [a, b, c] = p;
  const long k = shift.k, l = shift.l, m = shift.m;
  if (c == 1) throw DegenerateParameter("q0_case_i_formula: 1 - c vanishes");

  const long degree = shift.predicted_q.degree;
  const long count = degree + 1 + guard_terms;

  const ExactRational first_scale = -(pochhammer(a, k) * pochhammer(b, l)) /
                                    ((1 - c) * pochhammer(c, m));
  const ExactRational second_scale = pochhammer(a + 1 - c, k - m) * pochhammer(b + 1 - c, l - m) /
                                     ((1 - c) * pochhammer(2 - c, -m));

  const auto t1 = truncated_product(f21_series(c - a + m - k, c - b + m - l, c + m, count),
                                    f21_series(a + 1 - c, b + 1 - c, 2 - c, count), m);
  const auto t2 = truncated_product(f21_series(a, b, c, count),
                                    f21_series(1 - a - k, 1 - b - l, 2 - c - m, count), 0);

  std::vector<ExactRational> combined(static_cast<std::size_t>(count));
  for (std::size_t n = 0; n < combined.size(); ++n) combined[n] = first_scale * t1[n] + second_scale * t2[n];
  for (long n = degree + 1; n < count; ++n) {
    if (combined[static_cast<std::size_t>(n)] != 0) {
      throw std::runtime_error("q0_case_i_formula: series does not truncate at degree " +
                               std::to_string(degree));
    }
  }
  combined.resize(static_cast<std::size_t>(degree) + 1);
  return Poly(std::move(combined))(x0);
}

Lemma42Data lemma42(const PairN& pair) {
  const long n1 = pair.n1;
  const long n2 = pair.n2;
  const ParamPoint p{ExactRational(-2 * n2), ExactRational(-2 * n2), 1};
  const ThreeTermRelation rel = three_term_QR(-2 * n1, 2 * n1, 0, p);

  Lemma42Data out;
  out.Qpp = rel.Q.eval(-1);
  out.Rpp = rel.R.eval(-1);
  const ExactRational den = pochhammer(ExactRational(-2 * n2), 2 * n1) *
                            pochhammer(ExactRational(2 * n2 + 1), 2 * n1);
  const ExactRational q0 = -out.Qpp * den / (8 * n2 * n2);
  const ExactRational r0 = out.Rpp * den;
  if (!is_integer(q0) || !is_integer(r0)) {
    throw IntegralityViolation("lemma42" + to_string(pair) + ": Q0''=" + to_string(q0) +
                               ", R0''=" + to_string(r0) + " not both integers");
  }
  out.Q0pp = q0.get_num();
  out.R0pp = r0.get_num();

  const ExactRational raised = f21({ExactRational(-2 * n2 + 1), ExactRational(-2 * n2 + 1), 2, -1});
  const ExactRational base = f21({ExactRational(-2 * n2), ExactRational(-2 * n2), 1, -1});
  const ExactRational reproduced = out.Qpp * raised + out.Rpp * base;
  if (reproduced != ExactRational(ell_value(Variant::one, pair))) {
    throw std::logic_error("lemma42" + to_string(pair) + ": three-term relation gives " +
                           to_string(reproduced) + " instead of l1");
  }
  return out;
}

ExactRational lemma42_reassembly(const PairN& pair, const Lemma42Data& data) {
  const long n1 = pair.n1;
  const long n2 = pair.n2;
  const auto un2 = static_cast<unsigned long>(n2);
  const ExactRational den = pochhammer(ExactRational(-2 * n2), 2 * n1) *
                            pochhammer(ExactRational(2 * n2 + 1), 2 * n1) *
                            ExactRational(factorial(un2));
  ExactRational num(pow2(un2) * odd_double_factorial(un2) * (2 * n2 * data.Q0pp + data.R0pp));
  if (n2 % 2 == 1) num = -num;
  return num / den;
}

}  // namespace hyperel
