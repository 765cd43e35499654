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

#ifndef MNFIELD_UNIFORMIZER_HPP
#define MNFIELD_UNIFORMIZER_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mnfield/cyclotomic.hpp"

namespace mnfield {

struct UniformizerReport {
  HahnSeries series;
  Exponent valuation;
  Exponent expected_valuation;
  int n = 0;  // field tag (n, m) of K_{n,m}
  int m = 0;
  // Valuations after each subtraction of a closed-form term, for the
  // K_{2,m} construction; empty otherwise.
  std::vector<Exponent> intermediate_valuations;
  bool sharp = true;
  bool pass = false;
};

namespace detail {

inline Exponent valuation_or_throw(const HahnSeries& s, const char* what) {
  if (s.is_zero()) {
    throw PrecisionError(std::string(what) + ": valuation beyond the order " +
                         s.bound().str());
  }
  return s.leading().exp;
}

}  // namespace detail

// (1 - zeta_p) p^{-(1/p + ... + 1/p^m)}, a uniformizer of Q_p(zeta_p, p^{1/p^m}).
inline UniformizerReport uniformizer_1m(int p, int m,
                                        const CyclotomicOptions& opts = {}) {
  if (m < 0) throw InvalidInput("m must be >= 0");
  if (m > 12) throw UnsupportedRange("m must be <= 12");
  ExpansionReport zp = zeta_p_expand(p, p, opts);
  const FieldPtr& k = zp.digits.field();
  HahnSeries x = hs_sub(HahnSeries::one(k), zp.digits);
  Exponent shift(0);
  for (int i = 1; i <= m; ++i) shift = shift - Exponent(1, int_pow(p, i));
  x = hs_mul(x, HahnSeries::monomial(k, shift, k->one()));
  UniformizerReport r;
  r.n = 1;
  r.m = m;
  r.series = x;
  r.valuation = detail::valuation_or_throw(x, "uniformizer_1m");
  r.expected_valuation = Exponent(1, int_pow(p, m) * (p - 1));
  r.pass = r.valuation == r.expected_valuation;
  return r;
}

// p^{-(p^m-1)/((p-1)p^m)} (zeta_{p^2} - sum_{k<p} [k!]^{-1} zeta^k p^{k/(p(p-1))}
//   - sum_{l=2}^m zeta p^{1/(p-1) - 1/p^l}), a uniformizer of
// Q_p(zeta_{p^2}, p^{1/p^m}).
inline UniformizerReport uniformizer_2m(int p, int m,
                                        const CyclotomicOptions& opts = {}) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  if (m > 8) throw UnsupportedRange("m must be <= 8");
  ExpansionReport zr = zeta_pn_expand(p, 2, p + m + 1, opts);
  const FieldPtr& k = zr.digits.field();
  FqElem z = zeta_2pm1(*k);
  Exponent target = Exponent(1, p - 1) - Exponent(1, int_pow(p, m + 1));
  if (zr.digits.bound() <= Bound(target)) {
    throw PrecisionError("expansion of zeta_{p^2} known only below " +
                         zr.digits.bound().str());
  }
  UniformizerReport r;
  r.n = 2;
  r.m = m;
  HahnSeries x = zr.digits;
  Exponent prev = detail::valuation_or_throw(x, "uniformizer_2m");
  auto subtract = [&](const Exponent& e, FqElem c) {
    x = hs_sub(x, HahnSeries::monomial(k, e, c));
    Exponent v = detail::valuation_or_throw(x, "uniformizer_2m");
    r.intermediate_valuations.push_back(v);
    if (!(v > prev)) r.sharp = false;
    prev = v;
  };
  for (int j = 0; j < p; ++j) {
    subtract(Exponent(j, p * (p - 1)), lambda_digit(*k, 2, j));
  }
  for (int l = 2; l <= m; ++l) {
    subtract(Exponent(1, p - 1) - Exponent(1, int_pow(p, l)), z);
  }
  std::int64_t pm = int_pow(p, m);
  Exponent scale(-(pm - 1), (p - 1) * pm);
  x = hs_mul(x, HahnSeries::monomial(k, scale, k->one()));
  r.series = x;
  r.valuation = detail::valuation_or_throw(x, "uniformizer_2m");
  r.expected_valuation = Exponent(1, int_pow(p, m + 1) * (p - 1));
  r.pass = r.sharp && r.valuation == r.expected_valuation;
  return r;
}

// Integers e_i with sum e_i v_i = target. e_1 has the smallest absolute
// value (positive on ties) among solutions; the rest are fixed the same way
// in order.
inline std::vector<std::int64_t> bezout_combine(
    const Exponent& target, const std::vector<Exponent>& gens) {
  if (gens.empty()) throw InvalidInput("no generators");
  std::int64_t den = target.den();
  for (const auto& g : gens) den = lcm_checked(den, g.den());
  auto scaled = [&](const Exponent& x) {
    return BigInt(x.num()) * BigInt(den / x.den());
  };
  std::vector<BigInt> a;
  for (const auto& g : gens) a.push_back(scaled(g));
  BigInt t = scaled(target);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    BigInt rest = 0;
    for (std::size_t j = i + 1; j < a.size(); ++j) rest = gcd(rest, a[j]);
    BigInt e;
    if (a[i] == 0) {
      e = 0;
    } else if (rest == 0) {
      if (t % a[i] != 0) throw NoSolution("target is outside the lattice");
      e = t / a[i];
    } else {
      // e a_i = t mod rest; e ranges over e0 + step Z.
      BigInt g = gcd(abs(a[i]), rest);
      if (t % g != 0) throw NoSolution("target is outside the lattice");
      BigInt step = rest / g;
      BigInt ai = (a[i] / g) % step;
      BigInt tt = (t / g) % step;
      // Inverse of ai modulo step by brute extended Euclid.
      BigInt r0 = step, r1 = (ai % step + step) % step, s0 = 0, s1 = 1;
      while (r1 != 0) {
        BigInt qq = r0 / r1;
        BigInt tmp = r0 - qq * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - qq * s1;
        s0 = s1;
        s1 = tmp;
      }
      BigInt e0 = step == 1 ? BigInt(0) : ((s0 * tt) % step + step) % step;
      e = e0;
      if (2 * e0 > step) e = e0 - step;
    }
    if (e > INT64_MAX || e < INT64_MIN) {
      throw UnsupportedRange("Bezout coefficient overflow");
    }
    out.push_back(static_cast<std::int64_t>(e));
    t -= e * a[i];
  }
  if (t != 0) throw NoSolution("target is outside the lattice");
  return out;
}

struct LampertStep {
  int index = 0;  // n in z_n
  HahnSeries z;
  Exponent valuation;
  // p^3 (p-1) v(z_n) when integral.
  std::optional<std::int64_t> scaled_valuation;
};

struct LampertTrace {
  int p = 0;
  int max_steps = 0;
  int zeta_digits = 0;
  std::vector<LampertStep> steps;
  bool found = false;
  int terminal_index = 0;
  std::int64_t witness = 0;  // p^3 (p-1) v(z_N) mod p^2
  // Exponents of z_N, p^{1/p} and zeta_{p^2} - 1 in a uniformizer of
  // Q_p(zeta_{p^2}, p^{1/p^2}).
  std::vector<std::int64_t> bezout;
  std::string stop_reason;
};

namespace detail {

inline LampertTrace lampert_run(int p, int max_steps, int zeta_digits,
                                const CyclotomicOptions& opts) {
  LampertTrace tr;
  tr.p = p;
  tr.max_steps = max_steps;
  tr.zeta_digits = zeta_digits;
  std::int64_t scale = int_pow(p, 3) * (p - 1);
  std::int64_t mod = static_cast<std::int64_t>(p) * p;
  std::int64_t want = ((1 - p) % mod + mod) % mod;
  try {
    ExpansionReport zr = zeta_pn_expand(p, 2, zeta_digits, opts);
    const FieldPtr& k = zr.digits.field();
    auto mono = [&](const Exponent& e) {
      return HahnSeries::monomial(k, e, k->one());
    };
    HahnSeries z = hs_sub(hs_sub(zr.digits, HahnSeries::one(k)),
                          mono(Exponent(1, p)));
    for (int n = 1;; ++n) {
      if (z.is_zero()) {
        tr.stop_reason = "valuation of z_" + std::to_string(n) +
                         " lies beyond the known order " + z.bound().str();
        return tr;
      }
      LampertStep st;
      st.index = n;
      st.z = z;
      st.valuation = z.leading().exp;
      Exponent w = st.valuation * Exponent(scale);
      if (w.den() == 1) st.scaled_valuation = w.num();
      tr.steps.push_back(st);
      if (st.scaled_valuation &&
          ((*st.scaled_valuation % mod) + mod) % mod == want) {
        tr.found = true;
        tr.terminal_index = n;
        tr.witness = ((*st.scaled_valuation % mod) + mod) % mod;
        tr.bezout = bezout_combine(Exponent(1, scale),
                                   {st.valuation, Exponent(1, p),
                                    Exponent(1, p * (p - 1))});
        tr.stop_reason = "congruence reached";
        return tr;
      }
      if (n >= max_steps) {
        tr.stop_reason = "step cap reached";
        return tr;
      }
      HahnSeries pw = hs_int_pow(z, p - 1);
      if (n == 1) {
        z = hs_sub(hs_add(pw, mono(Exponent(1, p))),
                   mono(Exponent(2 * p - 1, mod)));
      } else {
        Digit lead = z.leading();
        HahnSeries lt = HahnSeries::monomial(
            k, lead.exp * Exponent(p - 1), k->pow(lead.coeff, p - 1));
        z = hs_sub(pw, lt);
      }
    }
  } catch (const PrecisionError& e) {
    tr.stop_reason = e.what();
  }
  return tr;
}

}  // namespace detail

// Lampert's iteration z_1 = zeta_{p^2} - 1 - p^{1/p},
// z_2 = z_1^{p-1} + p^{1/p} - p^{(2p-1)/p^2},
// z_{n+1} = z_n^{p-1} - ([C(z_n)] p^{v(z_n)})^{p-1}, stopped at the first N
// with p^3 (p-1) v(z_N) = -p+1 mod p^2. max_steps defaults to p. With
// zeta_digits = 0 the prefix of zeta_{p^2} is lengthened until the congruence
// is reached or capacity runs out.
inline LampertTrace lampert_sequence(int p,
                                     std::optional<int> max_steps = std::nullopt,
                                     int zeta_digits = 0,
                                     const CyclotomicOptions& opts = {}) {
  if (max_steps && *max_steps < 1) throw InvalidInput("max_steps must be >= 1");
  if (zeta_digits < 0) throw InvalidInput("negative digit count");
  if (!is_prime(p) || p == 2) throw InvalidPrime("p must be an odd prime");
  int steps = max_steps.value_or(p);
  if (zeta_digits > 0) return detail::lampert_run(p, steps, zeta_digits, opts);
  LampertTrace best;
  for (int extra = 1; extra <= 12; ++extra) {
    LampertTrace tr = detail::lampert_run(p, steps, p + extra, opts);
    bool more = tr.steps.size() > best.steps.size();
    if (tr.found || best.steps.empty() || more) best = tr;
    if (tr.found || tr.stop_reason == "step cap reached") break;
  }
  return best;
}

}  // namespace mnfield

#endif  // MNFIELD_UNIFORMIZER_HPP
