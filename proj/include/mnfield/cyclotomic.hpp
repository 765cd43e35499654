// Copyright 2026 The mnfield Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MNFIELD_CYCLOTOMIC_HPP
#define MNFIELD_CYCLOTOMIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mnfield/transfinite_newton.hpp"

namespace mnfield {

inline std::int64_t int_pow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > INT64_MAX / b) throw UnsupportedRange("integer power overflow");
    r *= b;
  }
  return r;
}

inline void check_level(int n) {
  if (n < 1) throw InvalidInput("cyclotomic level n must be >= 1");
  if (n > 6) throw UnsupportedRange("cyclotomic level n must be <= 6");
}

// zeta_{2(p-1)}: first element of order 2(p-1) in code order.
inline FqElem zeta_2pm1(const FieldCtx& k) {
  return k.primitive_root_of_order(2 * (k.p() - 1));
}

// Phi_{p^n}(T) = sum_{j<p} T^{j p^{n-1}} with exact coefficients.
inline PolySeries cyclotomic_poly(const FieldPtr& k, int n) {
  check_level(n);
  int p = k->p();
  std::int64_t step = int_pow(p, n - 1);
  std::vector<HahnSeries> by_power(static_cast<std::size_t>(step * (p - 1) + 1),
                                   HahnSeries::zero(k));
  for (int j = 0; j < p; ++j) by_power[j * step] = HahnSeries::one(k);
  return PolySeries::from_powers(k, std::move(by_power));
}

// Exponent 1/(p^{n-2}(p-1)) where the first omega digits accumulate; +inf
// for n = 1.
inline Bound first_limit_exponent(int p, int n) {
  if (n < 2) return Bound::infinity();
  return Exponent(1, int_pow(p, n - 2) * (p - 1));
}

inline int default_digit_budget(int p) { return (p - 1) + 3; }

struct CyclotomicOptions {
  FieldOptions field;
  NewtonOptions newton;
};

inline ExpansionReport zeta_pn_expand(int p, int n, int digits,
                                      const CyclotomicOptions& opts = {}) {
  check_level(n);
  if (digits < 0) throw InvalidInput("negative digit count");
  auto k = make_field(p, 2, opts.field);
  return newton_run(cyclotomic_poly(k, n), RootPolicy::canonical_cyclotomic(n),
                    digits, first_limit_exponent(p, n), opts.newton);
}

// Teichmüller digit (-1)^{kn} zeta^k / k! of the closed form.
inline FqElem lambda_digit(const FieldCtx& k, int n, int j) {
  FqElem z = zeta_2pm1(k);
  FqElem c = k.div(k.pow(z, j), k.from_int(static_cast<std::int64_t>(
                                     factorial(j) % k.p())));
  if ((static_cast<std::int64_t>(j) * n) % 2 != 0) c = k.neg(c);
  return c;
}

// Lambda_{i,n}: the closed form predicted for the first i+1 digits.
inline HahnSeries lambda_approx(const FieldPtr& k, int n, int i) {
  check_level(n);
  if (n < 2) throw UnsupportedRange("closed form needs n >= 2");
  if (i < 0) throw InvalidInput("negative index");
  int p = k->p();
  std::int64_t den = int_pow(p, n - 1) * (p - 1);
  std::vector<Digit> ds;
  for (int j = 0; j <= std::min(i, p - 1); ++j) {
    ds.push_back({Exponent(j, den), lambda_digit(*k, n, j)});
  }
  FqElem z = zeta_2pm1(*k);
  FqElem tail = n % 2 == 0 ? z : k->neg(z);
  Exponent lim = first_limit_exponent(p, n).value();
  for (int l = n; l <= i - p + n; ++l) {
    ds.push_back({lim - Exponent(1, int_pow(p, l)), tail});
  }
  return HahnSeries(k, std::move(ds));
}

// Step data predicted for the i-th Newton step on Phi_{p^n}.
struct PredictedStep {
  Exponent slope;
  std::int64_t m_max = 0;
  FqPoly residue;
  FqElem root;
  int multiplicity = 0;
};

inline PredictedStep predicted_step(const FieldCtx& k, int n, int i) {
  int p = k.p();
  std::int64_t q = int_pow(p, n - 1);
  std::int64_t deg = q * (p - 1);
  FqElem z = zeta_2pm1(k);
  FqElem sign_n = n % 2 == 0 ? k.one() : k.neg(k.one());
  PredictedStep s;
  if (i == 0) {
    s.slope = Exponent(0);
    s.m_max = 0;
    s.residue.assign(deg + 1, k.zero());
    for (int j = 0; j < p; ++j) s.residue[j * q] = k.one();
    s.root = k.one();
    s.multiplicity = static_cast<int>(deg);
    return s;
  }
  if (i == 1) {
    s.slope = Exponent(1, deg);
    s.m_max = 0;
    s.residue.assign(deg + 1, k.zero());
    s.residue[0] = s.residue[deg] = k.one();
    s.root = k.mul(sign_n, z);
    s.multiplicity = static_cast<int>(q);
    return s;
  }
  s.m_max = q * (p - 2);
  s.residue.assign(q + 1, k.zero());
  s.residue[q] = k.neg(k.inv(z));
  s.multiplicity = static_cast<int>(q);
  if (i <= p - 1) {
    FqElem fact = k.from_int(static_cast<std::int64_t>(factorial(i) % p));
    s.slope = Exponent(i, deg);
    FqElem c = k.div(k.pow(z, i - 1), fact);
    s.residue[0] = i % 2 == 0 ? c : k.neg(c);
    FqElem r = k.div(k.pow(z, i), fact);
    s.root = (static_cast<std::int64_t>(i) * n) % 2 == 0 ? r : k.neg(r);
    return s;
  }
  s.slope = Exponent(1, int_pow(p, n - 2) * (p - 1)) -
            Exponent(1, int_pow(p, i - p + n));
  s.residue[0] = k.neg(k.one());
  s.root = k.mul(sign_n, z);
  return s;
}

// Coefficient b^{(i,n)}_{p^{n-1}(p-1)-k} of Phi_{p^n}(T + Lambda_{i-1,n}),
// evaluated from the closed formulas. Needs i >= 2 and 0 <= k <= p^{n-1}.
inline HahnSeries b_coefficient(int p, int n, int i, std::int64_t kk,
                                const FieldOptions& fo = {}) {
  check_level(n);
  if (n < 2) throw UnsupportedRange("coefficient formulas need n >= 2");
  std::int64_t q = int_pow(p, n - 1);
  if (i < 2) throw UnsupportedRange("coefficient formulas need i >= 2");
  if (kk < 0 || kk > q) throw InvalidInput("k out of range");
  auto k = make_field(p, 2, fo);
  HahnSeries lam = lambda_approx(k, n, i - 1);
  Exponent cap(n + 3);
  auto one = HahnSeries::one(k);
  HahnSeries lq = hs_int_pow(lam, q, cap);
  HahnSeries lqp = hs_int_pow(lam, q * p, cap);
  HahnSeries a = hs_sub(lq, one, cap);
  HahnSeries b = hs_sub(lqp, one, cap);
  if (kk == 0) return hs_mul(b, hs_inv(a, cap), cap);
  HahnSeries ia = hs_inv(a, cap);
  HahnSeries t1 = hs_scale(hs_mul(lqp, ia, cap), BigRational(p), cap);
  HahnSeries t2 = hs_mul(hs_mul(lq, b, cap), hs_mul(ia, ia, cap), cap);
  HahnSeries inner = hs_sub(t1, t2, cap);
  BigRational f{BigInt(q), BigInt(kk)};
  if ((kk - 1) % 2 != 0) f = -f;
  HahnSeries lk = hs_int_pow(lam, -kk, cap);
  HahnSeries r = hs_scale(hs_mul(lk, inner, cap), f, cap);
  return r.truncated(Exponent(n));
}

// Valuation of b^{(i,n)}_{p^{n-1}(p-1)-k} predicted by the theory.
inline Exponent predicted_b_valuation(int p, int n, int i, std::int64_t kk) {
  std::int64_t q = int_pow(p, n - 1);
  if (kk == 0) {
    if (i <= p - 1) return Exponent(1) + Exponent(i - 1, p - 1);
    return Exponent(2) - Exponent(1, int_pow(p, i - p + 1));
  }
  if (kk == q) return Exponent(p - 2, p - 1);
  std::int64_t v = 0;
  for (std::int64_t x = kk; x % p == 0; x /= p) ++v;
  return Exponent(n - v) - Exponent(1, p - 1);
}

enum class EstimateKind { kFirst, kSecond };

inline std::string to_string(EstimateKind w) {
  return w == EstimateKind::kFirst ? "first" : "second";
}

struct EstimateReport {
  int p = 0, n = 0, i = 0;
  EstimateKind which = EstimateKind::kFirst;
  HahnSeries computed;
  HahnSeries expected;
  // Digits with exponent below this value are compared.
  Exponent compared_below;
  bool pass = false;
};

namespace detail {

inline bool digits_agree_below(const HahnSeries& a, const HahnSeries& b,
                               const Exponent& x) {
  if (a.bound() < Bound(x) || b.bound() < Bound(x)) return false;
  return a.truncated(x) == b.truncated(x).truncated(a.truncated(x).bound());
}

}  // namespace detail

// Lambda^{p^{n-1}} - 1 ("first") or Lambda^{p^n} - 1 ("second") against
// the closed-form leading terms.
inline EstimateReport verify_power_estimate(int p, int n, int i,
                                            EstimateKind which,
                                            const FieldOptions& fo = {}) {
  check_level(n);
  if (n < 2) throw UnsupportedRange("estimates need n >= 2");
  if (i < 1) throw InvalidInput("estimates need i >= 1");
  auto k = make_field(p, 2, fo);
  FqElem z = zeta_2pm1(*k);
  EstimateReport rep;
  rep.p = p;
  rep.n = n;
  rep.i = i;
  rep.which = which;
  std::vector<Digit> want;
  std::int64_t e;
  if (which == EstimateKind::kFirst) {
    e = int_pow(p, n - 1);
    int top = i < p - 1 ? i : p - 1;
    for (int l = 1; l <= top; ++l) {
      want.push_back({Exponent(l, p - 1), lambda_digit(*k, 1, l)});
    }
    if (i < p - 1) {
      rep.compared_below = Exponent(1) + Exponent(1, p * (p - 1));
    } else {
      rep.compared_below = Exponent(1) + Exponent(1, p - 1);
      want.push_back({rep.compared_below - Exponent(1, int_pow(p, i - p + 2)), z});
    }
  } else {
    e = int_pow(p, n);
    if (i < p - 1) {
      Exponent x = Exponent(1) + Exponent(i + 1, p - 1);
      FqElem c = k->div(k->pow(z, i + 1),
                        k->from_int(static_cast<std::int64_t>(
                            factorial(i + 1) % p)));
      if (i % 2 != 0) c = k->neg(c);
      want.push_back({x, c});
      // Little-o: the digit at x itself is part of the claim.
      rep.compared_below = x + Exponent(1, x.den() * int_pow(p, n) * (p - 1));
    } else {
      rep.compared_below = Exponent(2) + Exponent(1, p - 1);
      want.push_back({rep.compared_below - Exponent(1, int_pow(p, i - p + 2)), z});
    }
  }
  rep.expected = HahnSeries(k, want, rep.compared_below);
  HahnSeries lam = lambda_approx(k, n, i);
  rep.computed = hs_sub(hs_int_pow(lam, e, rep.compared_below),
                        HahnSeries::one(k), rep.compared_below);
  rep.pass = detail::digits_agree_below(rep.computed, rep.expected,
                                        rep.compared_below);
  return rep;
}

struct AuxReport {
  std::string name;
  int p = 0, n = 0;
  HahnSeries computed;
  HahnSeries expected;
  Exponent compared_below;
  bool pass = false;
};

// The two auxiliary power identities with rational 1/l! coefficients.
inline std::vector<AuxReport> verify_aux_identities(int p, int n,
                                                    const FieldOptions& fo = {}) {
  check_level(n);
  if (n < 2) throw InvalidInput("auxiliary identities need n >= 2");
  auto k = make_field(p, 2, fo);
  FqElem z = zeta_2pm1(*k);
  std::vector<AuxReport> out;
  {
    AuxReport r;
    r.name = "truncated-exponential-power";
    r.p = p;
    r.n = n;
    r.compared_below = Exponent(1) + Exponent(1, p - 1);
    std::int64_t den = int_pow(p, n - 1) * (p - 1);
    std::vector<ScaledTerm> terms;
    for (int l = 0; l < p; ++l) {
      FqElem c = k->pow(z, l);
      if ((static_cast<std::int64_t>(l) * n) % 2 != 0) c = k->neg(c);
      terms.push_back({BigRational(BigInt(1), factorial(l)), c,
                       Exponent(l, den)});
    }
    Exponent cap = r.compared_below;
    HahnSeries base = hs_from_terms(k, terms, cap);
    r.computed = hs_sub(hs_int_pow(base, int_pow(p, n - 1), cap),
                        HahnSeries::one(k), cap);
    std::vector<Digit> want;
    for (int l = 1; l < p; ++l) {
      want.push_back({Exponent(l, p - 1), lambda_digit(*k, 1, l)});
    }
    want.push_back({Exponent(1) + Exponent(1, p * (p - 1)), z});
    r.expected = HahnSeries(k, want, cap);
    r.pass = detail::digits_agree_below(r.computed, r.expected, cap);
    out.push_back(std::move(r));
  }
  {
    AuxReport r;
    r.name = "exponential-p-th-power";
    r.p = p;
    r.n = n;
    r.compared_below = Exponent(2) + Exponent(1, p - 1);
    std::vector<ScaledTerm> terms;
    for (int l = 0; l < p; ++l) {
      FqElem c = k->pow(z, l);
      if (l % 2 != 0) c = k->neg(c);
      terms.push_back({BigRational(BigInt(1), factorial(l)), c,
                       Exponent(l, p - 1)});
    }
    Exponent cap = r.compared_below;
    HahnSeries base = hs_from_terms(k, terms, cap);
    r.computed = hs_sub(hs_int_pow(base, p, cap), HahnSeries::one(k), cap);
    r.expected = HahnSeries::zero(k, cap);
    r.pass = detail::digits_agree_below(r.computed, r.expected, cap);
    out.push_back(std::move(r));
  }
  return out;
}

// x^e where x = prefix + O(p^s) and the prefix digits are exact; the error
// of the power is O(p^{min(1 + s, p s)}) for e = p.
inline HahnSeries pth_power_of_prefix(const HahnSeries& prefix) {
  const FieldPtr& k = prefix.field();
  int p = k->p();
  if (prefix.bound().is_infinite()) {
    throw InvalidInput("prefix must carry a finite order bound");
  }
  Exponent s = prefix.bound().value();
  Exponent cap = std::min(Exponent(1) + s, s * Exponent(p));
  HahnSeries exact(k, prefix.digits(), Bound(), prefix.lattice());
  return hs_int_pow(exact, p, cap);
}

// zeta_p as the p-th power of the zeta_{p^2} expansion; digits <= p.
inline ExpansionReport zeta_p_expand(int p, int digits,
                                     const CyclotomicOptions& opts = {}) {
  if (digits < 0) throw InvalidInput("negative digit count");
  if (digits > p) {
    throw UnsupportedRange("at most p digits of zeta_p are available");
  }
  ExpansionReport base = zeta_pn_expand(p, 2, p + 3, opts);
  ExpansionReport out;
  out.trace = base.trace;
  out.working_precision = base.working_precision;
  out.status = base.status;
  out.capacity_limited = base.capacity_limited;
  HahnSeries pw = pth_power_of_prefix(base.digits);
  Bound b = pw.bound();
  if (static_cast<int>(pw.digits().size()) > digits) {
    b = pw.digits()[digits].exp;
  }
  out.digits = pw.truncated(b);
  return out;
}

struct ConjugateClass {
  int k = 0;
  ExpansionReport report;
};

// The p-1 runs whose second digit is zeta_{p-1}^k (-1)^n zeta_{2(p-1)};
// digits stop below 1/(p^{n-2}(p-1)).
inline std::vector<ConjugateClass> conjugate_prefixes(
    int p, int n, int digits, const CyclotomicOptions& opts = {}) {
  check_level(n);
  if (n < 2) throw UnsupportedRange("conjugate prefixes need n >= 2");
  auto k = make_field(p, 2, opts.field);
  FqElem z = zeta_2pm1(*k);
  FqElem w = k->primitive_root_of_order(p - 1);
  FqElem base = n % 2 == 0 ? z : k->neg(z);
  std::vector<ConjugateClass> out;
  for (int j = 0; j < p - 1; ++j) {
    RootPolicy pol = RootPolicy::explicit_roots(
        {k->one(), k->mul(k->pow(w, j), base)});
    out.push_back({j, newton_run(cyclotomic_poly(k, n), pol, digits,
                                 first_limit_exponent(p, n), opts.newton)});
  }
  return out;
}

}  // namespace mnfield

#endif  // MNFIELD_CYCLOTOMIC_HPP
