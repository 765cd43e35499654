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

#ifndef MNFIELD_BELL_STIRLING_HPP
#define MNFIELD_BELL_STIRLING_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mnfield/bigint.hpp"
#include "mnfield/coeff_arith.hpp"
#include "mnfield/error.hpp"

namespace mnfield {

// Calls f(j) for every j = (j_1, ..., j_m), m = n-k+1, with sum j_i = k and
// sum i j_i = n. Entries j_i with i > max_part are kept zero.
template <class F>
void for_each_bell_index(int n, int k, int max_part, F&& f) {
  int m = n - k + 1;
  if (m < 1) return;
  std::vector<int> j(static_cast<std::size_t>(m), 0);
  int top = std::min(m, max_part);
  auto rec = [&](auto&& self, int i, int cnt, int wt) -> void {
    if (i == 0) {
      if (cnt == 0 && wt == 0) f(static_cast<const std::vector<int>&>(j));
      return;
    }
    // Remaining parts are at least 1 and at most i.
    for (int c = std::min(cnt, wt / i); c >= 0; --c) {
      int cnt2 = cnt - c, wt2 = wt - c * i;
      if (wt2 < cnt2 || wt2 > cnt2 * (i - 1)) {
        if (!(i == 1 && cnt2 == 0 && wt2 == 0)) continue;
      }
      j[i - 1] = c;
      self(self, i - 1, cnt2, wt2);
      j[i - 1] = 0;
    }
  };
  rec(rec, top, k, n);
}

namespace detail {

inline void check_nk(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw InvalidInput("need 0 <= k <= n, got n=" + std::to_string(n) +
                       " k=" + std::to_string(k));
  }
}

// n! / prod_i (j_i! (i!)^{j_i}): the number of set partitions of type j.
inline BigInt partition_count(int n, const std::vector<int>& j) {
  BigInt den = 1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i] == 0) continue;
    BigInt fi = factorial(static_cast<int>(i) + 1);
    den *= factorial(j[i]);
    for (int t = 0; t < j[i]; ++t) den *= fi;
  }
  return factorial(n) / den;
}

}  // namespace detail

// B_{n,k}(x_1, ..., x_{n-k+1}) by enumeration of multi-indices.
inline BigRational bell_incomplete(int n, int k,
                                   const std::vector<BigRational>& xs) {
  detail::check_nk(n, k);
  if (k == 0) return n == 0 ? 1 : 0;
  if (static_cast<int>(xs.size()) < n - k + 1) {
    throw InvalidInput("B_{n,k} needs n-k+1 arguments");
  }
  BigRational sum = 0;
  for_each_bell_index(n, k, n, [&](const std::vector<int>& j) {
    BigRational term = BigRational(detail::partition_count(n, j));
    for (std::size_t i = 0; i < j.size(); ++i) {
      for (int t = 0; t < j[i]; ++t) term *= xs[i];
    }
    sum += term;
  });
  return sum;
}

// Polynomial in x_1, x_2, ...; keys are exponent vectors without trailing
// zeros.
using MPoly = std::map<std::vector<int>, BigRational>;

inline std::vector<int> trim_monomial(std::vector<int> e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

inline void mpoly_add_term(MPoly& p, std::vector<int> e, const BigRational& c) {
  if (c == 0) return;
  auto key = trim_monomial(std::move(e));
  auto it = p.find(key);
  if (it == p.end()) {
    p.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline MPoly mpoly_mul(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      mpoly_add_term(out, std::move(e), ca * cb);
    }
  }
  return out;
}

inline std::string mpoly_format(const MPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

inline MPoly bell_incomplete_symbolic(int n, int k) {
  detail::check_nk(n, k);
  MPoly out;
  if (k == 0) {
    if (n == 0) out[{}] = 1;
    return out;
  }
  for_each_bell_index(n, k, n, [&](const std::vector<int>& j) {
    mpoly_add_term(out, j, BigRational(detail::partition_count(n, j)));
  });
  return out;
}

// S(n, k) = B_{n,k}(1, ..., 1).
inline BigInt stirling2(int n, int k) {
  detail::check_nk(n, k);
  if (k == 0) return n == 0 ? 1 : 0;
  BigInt s = 0;
  for_each_bell_index(n, k, n, [&](const std::vector<int>& j) {
    s += detail::partition_count(n, j);
  });
  return s;
}

// S(n, k)_{<= r} = B_{n,k}(1, ..., 1, 0, ...) with r leading ones.
inline BigInt stirling2_restricted(int n, int k, int r) {
  detail::check_nk(n, k);
  if (r < 1) throw InvalidInput("restriction r must be >= 1");
  if (n - k + 1 <= r) return stirling2(n, k);
  if (k == 0) return n == 0 ? 1 : 0;
  BigInt s = 0;
  for_each_bell_index(n, k, r, [&](const std::vector<int>& j) {
    s += detail::partition_count(n, j);
  });
  return s;
}

// sum_{k=1}^n (-1)^{k-1} (k-1)! S(n, k).
inline BigInt alternating_factorial_sum(int n) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  BigInt s = 0;
  for (int k = 1; k <= n; ++k) {
    BigInt t = factorial(k - 1) * stirling2(n, k);
    s += k % 2 == 1 ? t : BigInt(-t);
  }
  return s;
}

// G_i(l) = sum_{k=1}^l (-1)^{k-1} (k-1)! S(l,k)_{<=i}
//          + p l! / (l+p-1)! S(l+p-1, p)_{<=i}.
inline BigRational g_value(int i, int l, int p) {
  if (!is_prime(p)) throw InvalidPrime(std::to_string(p) + " is not prime");
  if (i < 1 || i >= p - 1) throw InvalidInput("need 1 <= i < p-1");
  if (l < 1 || l > i + 1) throw InvalidInput("need 1 <= l <= i+1");
  BigRational s = 0;
  for (int k = 1; k <= l; ++k) {
    BigInt t = factorial(k - 1) * stirling2_restricted(l, k, i);
    s += k % 2 == 1 ? t : BigInt(-t);
  }
  s += BigRational(BigInt(p) * factorial(l) * stirling2_restricted(l + p - 1, p, i),
                   factorial(l + p - 1));
  return s;
}

struct Witness {
  std::string input;
  std::string lhs;
  std::string rhs;
  // lhs = rhs mod this value in Z_(p); "0" means equality.
  std::string modulus;
  bool ok = false;
};

struct CheckReport {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = true;
  std::vector<Witness> witnesses;

  void add(std::string input, const BigRational& lhs, const BigRational& rhs,
           const BigInt& modulus, bool ok) {
    std::ostringstream l, r, m;
    l << lhs;
    r << rhs;
    m << modulus;
    witnesses.push_back({std::move(input), l.str(), r.str(), m.str(), ok});
    pass = pass && ok;
  }
  void add_text(std::string input, std::string lhs, std::string rhs, bool ok) {
    witnesses.push_back({std::move(input), std::move(lhs), std::move(rhs), "0",
                         ok});
    pass = pass && ok;
  }
};

// lhs = rhs mod m in Z_(p): (lhs - rhs)/m is p-integral; m = 0 is equality.
inline bool congruent_mod(const BigRational& lhs, const BigRational& rhs,
                          const BigInt& m, int p) {
  BigRational d = lhs - rhs;
  if (d == 0) return true;
  if (m == 0) return false;
  return vp_rational(d, p) >= vp_rational(BigRational(m), p);
}

struct CongruenceParams {
  int part = 0;    // babbage: 1, 2, 3, or 0 for all
  int n_max = 4;   // babbage part 1: exponents n of p^n
  int k_max = 0;   // babbage part 2: multipliers k (0 means p^2)
  int a_max = 0;   // babbage part 3: a (0 means 2p+1)
  int l_max = 12;  // vrai
  int level = 2;   // jambon: n
};

namespace detail {

inline std::string kv(std::initializer_list<std::pair<const char*, long long>> xs) {
  std::string s;
  for (const auto& [k, v] : xs) {
    if (!s.empty()) s += ",";
    s += k;
    s += "=";
    s += std::to_string(v);
  }
  return s;
}

inline BigInt pow_int(int p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

inline void babbage(CheckReport& rep, int p, const CongruenceParams& prm) {
  BigInt p2 = BigInt(p) * p;
  if (prm.part == 0 || prm.part == 1) {
    for (int n = 1; n <= prm.n_max; ++n) {
      BigInt pn = pow_int(p, n);
      for (BigInt a = 1; a <= pn; ++a) {
        long long lhs = vp_rational(BigRational(binomial(pn, a)), p);
        long long rhs = n - vp_rational(BigRational(a), p);
        rep.add("part=1,n=" + std::to_string(n) + ",a=" + a.str(), lhs, rhs, 0,
                lhs == rhs);
      }
    }
  }
  if (prm.part == 0 || prm.part == 2) {
    int kmax = prm.k_max > 0 ? prm.k_max : p * p;
    for (int n = 1; n <= p - 1; ++n) {
      for (int k = 1; k <= kmax; ++k) {
        BigRational lhs(binomial(BigInt(p) * k, n));
        BigRational rhs(BigInt(p) * k * (n % 2 == 1 ? 1 : -1), BigInt(n));
        rep.add(kv({{"part", 2}, {"n", n}, {"k", k}}), lhs, rhs, p2,
                congruent_mod(lhs, rhs, p2, p));
      }
    }
  }
  if (prm.part == 0 || prm.part == 3) {
    int amax = prm.a_max > 0 ? prm.a_max : 2 * p + 1;
    for (int a = 0; a <= amax; ++a) {
      for (int b = 0; b <= a; ++b) {
        BigRational lhs(binomial(BigInt(a) * p, BigInt(b) * p));
        BigRational rhs(binomial(BigInt(a), BigInt(b)));
        rep.add(kv({{"part", 3}, {"a", a}, {"b", b}}), lhs, rhs, p2,
                congruent_mod(lhs, rhs, p2, p));
      }
    }
  }
}

}  // namespace detail

// Exact checks of the congruence lemmas on (restricted) Stirling numbers
// and binomial coefficients. Families: babbage, arith1, arith2, vrai,
// jambon, gvalue.
inline CheckReport congruence_suite(const std::string& family, int p,
                                    const CongruenceParams& prm = {}) {
  if (!is_prime(p) || p == 2) {
    throw InvalidPrime(std::to_string(p) + " is not an odd prime");
  }
  CheckReport rep;
  rep.family = family;
  rep.params.push_back({"p", std::to_string(p)});
  BigInt bp = p;
  if (family == "babbage") {
    if (prm.part < 0 || prm.part > 3) throw InvalidInput("babbage part is 1..3");
    if (prm.n_max < 1 || prm.n_max > 6) throw InvalidInput("n_max is 1..6");
    rep.params.push_back({"part", std::to_string(prm.part)});
    rep.params.push_back({"n_max", std::to_string(prm.n_max)});
    detail::babbage(rep, p, prm);
  } else if (family == "arith1") {
    // S(p-1+k, p) = [k = 1 or p] mod p.
    for (int k = 1; k <= p; ++k) {
      BigRational lhs(stirling2(p - 1 + k, p));
      BigRational rhs(k == 1 || k == p ? 1 : 0);
      rep.add(detail::kv({{"k", k}}), lhs, rhs, bp,
              congruent_mod(lhs, rhs, bp, p));
    }
  } else if (family == "arith2") {
    // S(r+p, p)_{<=r} = 0 mod p.
    for (int r = 1; r < p - 1; ++r) {
      BigRational lhs(stirling2_restricted(r + p, p, r));
      rep.add(detail::kv({{"r", r}}), lhs, 0, bp, congruent_mod(lhs, 0, bp, p));
    }
  } else if (family == "vrai") {
    // k!/l! S(l,k)_{<=i} is p-integral.
    if (prm.l_max < 1) throw InvalidInput("l_max must be >= 1");
    rep.params.push_back({"l_max", std::to_string(prm.l_max)});
    for (int i = 1; i <= p - 1; ++i) {
      for (int k = 1; k <= prm.l_max; ++k) {
        for (int l = k; l <= prm.l_max; ++l) {
          BigRational lhs(factorial(k) * stirling2_restricted(l, k, i),
                          factorial(l));
          rep.add(detail::kv({{"i", i}, {"k", k}, {"l", l}}), lhs, 0, 1,
                  congruent_mod(lhs, 0, 1, p));
        }
      }
    }
  } else if (family == "jambon") {
    int n = prm.level;
    if (n < 2) throw InvalidInput("jambon needs n >= 2");
    rep.params.push_back({"n", std::to_string(n)});
    BigInt q2 = detail::pow_int(p, n - 2);
    BigInt q1 = q2 * p;
    if (q1 > 200) throw UnsupportedRange("jambon needs p^{n-1} <= 200");
    int iq2 = static_cast<int>(q2), iq1 = static_cast<int>(q1);
    for (int s = 1; s <= p - 1; ++s) {
      int kk = s * iq2;
      for (int t = kk; t <= iq1 - 1; ++t) {
        BigRational lhs(factorial(kk) * stirling2_restricted(t, kk, p - 1),
                        factorial(t));
        BigRational rhs = 0;
        if (t % iq2 == 0) {
          int th = t / iq2;
          rhs = BigRational(factorial(s) * stirling2(th, s), factorial(th));
        }
        rep.add(detail::kv({{"s", s}, {"t", t}}), lhs, rhs, bp,
                congruent_mod(lhs, rhs, bp, p));
      }
    }
  } else if (family == "gvalue") {
    // G_i(l) = -1 mod p for l = i+1 and 0 mod p for l <= i.
    for (int i = 1; i < p - 1; ++i) {
      for (int l = 1; l <= i + 1; ++l) {
        BigRational lhs = g_value(i, l, p);
        BigRational rhs = l == i + 1 ? -1 : 0;
        rep.add(detail::kv({{"i", i}, {"l", l}}), lhs, rhs, bp,
                congruent_mod(lhs, rhs, bp, p));
      }
    }
  } else {
    throw InvalidInput("unknown congruence family '" + family + "'");
  }
  return rep;
}

namespace detail {

// Truncated power series in t with polynomial coefficients; index = power.
using TSeries = std::vector<MPoly>;

inline TSeries tseries_mul(const TSeries& a, const TSeries& b, int order) {
  TSeries out(static_cast<std::size_t>(order + 1));
  for (int i = 0; i <= order; ++i) {
    if (a[i].empty()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[j].empty()) continue;
      for (const auto& [e, c] : mpoly_mul(a[i], b[j])) {
        mpoly_add_term(out[i + j], e, c);
      }
    }
  }
  return out;
}

// (sum_{m=1}^{r} x_m t^m / m!)^k / k! up to t^order; symbolic x_m, or all
// x_m = 1 when numeric.
inline TSeries exp_power(int k, int r, int order, bool symbolic) {
  TSeries base(static_cast<std::size_t>(order + 1));
  for (int m = 1; m <= std::min(r, order); ++m) {
    std::vector<int> e;
    if (symbolic) {
      e.assign(static_cast<std::size_t>(m), 0);
      e[m - 1] = 1;
    }
    mpoly_add_term(base[m], e, BigRational(BigInt(1), factorial(m)));
  }
  TSeries acc(static_cast<std::size_t>(order + 1));
  acc[0][{}] = 1;
  for (int i = 0; i < k; ++i) acc = tseries_mul(acc, base, order);
  for (auto& c : acc) {
    for (auto& [e, v] : c) v /= BigRational(factorial(k));
  }
  return acc;
}

}  // namespace detail

// The combinatorial identities: generating functions of B_{n,k} and of
// (restricted) Stirling numbers, the small-k closed forms, the falling
// factorial expansion, the alternating factorial sum, restriction coherence
// and vanishing of S(n,k)_{<=r} for n >= rk+1.
inline std::vector<CheckReport> combinatorial_identities(int order = 12,
                                                         int k_max = 5,
                                                         int alt_max = 20) {
  std::vector<CheckReport> out;
  {
    CheckReport r;
    r.family = "bell-generating-function";
    r.params = {{"order", std::to_string(order)}, {"k_max", std::to_string(k_max)}};
    for (int k = 0; k <= k_max; ++k) {
      auto series = detail::exp_power(k, order, order, true);
      for (int n = k; n <= order; ++n) {
        MPoly lhs;
        for (const auto& [e, c] : series[n]) {
          mpoly_add_term(lhs, e, c * BigRational(factorial(n)));
        }
        MPoly rhs = bell_incomplete_symbolic(n, k);
        r.add_text(detail::kv({{"n", n}, {"k", k}}), mpoly_format(lhs),
                   mpoly_format(rhs), lhs == rhs);
      }
    }
    out.push_back(std::move(r));
  }
  {
    CheckReport r;
    r.family = "stirling-generating-function";
    r.params = {{"order", std::to_string(order)}, {"k_max", std::to_string(k_max)}};
    for (int rr = 1; rr <= 4; ++rr) {
      for (int k = 1; k <= k_max; ++k) {
        auto series = detail::exp_power(k, rr, order, false);
        for (int n = k; n <= order; ++n) {
          BigRational lhs = 0;
          if (!series[n].empty()) lhs = series[n].begin()->second;
          lhs *= BigRational(factorial(n));
          BigRational rhs(stirling2_restricted(n, k, rr));
          r.add(detail::kv({{"r", rr}, {"n", n}, {"k", k}}), lhs, rhs, 0,
                lhs == rhs);
        }
      }
    }
    out.push_back(std::move(r));
  }
  {
    CheckReport r;
    r.family = "bell-closed-forms";
    for (int n = 2; n <= order; ++n) {
      MPoly k1, k2, kn, kn1, kn2;
      mpoly_add_term(k1, [&] { std::vector<int> e(n, 0); e[n - 1] = 1; return e; }(), 1);
      for (int t = 1; t <= n - 1; ++t) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[t - 1] += 1;
        e[n - t - 1] += 1;
        mpoly_add_term(k2, e, BigRational(binomial(n, t), 2));
      }
      mpoly_add_term(kn, {n}, 1);
      mpoly_add_term(kn1, {n - 2, 1}, BigRational(binomial(n, 2)));
      if (n >= 3) mpoly_add_term(kn2, {n - 3, 0, 1}, BigRational(binomial(n, 3)));
      if (n >= 4) mpoly_add_term(kn2, {n - 4, 2}, BigRational(3 * binomial(n, 4)));
      auto chk = [&](int k, const MPoly& want, const char* tag) {
        if (k < 1 || k > n) return;
        MPoly got = bell_incomplete_symbolic(n, k);
        r.add_text(std::string(tag) + ",n=" + std::to_string(n),
                   mpoly_format(got), mpoly_format(want), got == want);
      };
      chk(1, k1, "k=1");
      chk(2, k2, "k=2");
      chk(n, kn, "k=n");
      chk(n - 1, kn1, "k=n-1");
      if (n >= 3) chk(n - 2, kn2, "k=n-2");
    }
    out.push_back(std::move(r));
  }
  {
    CheckReport r;
    r.family = "falling-factorial";
    r.params = {{"n_max", std::to_string(order)}};
    for (int n = 1; n <= order; ++n) {
      // Coefficients in x, lowest degree first.
      std::vector<BigInt> sum(static_cast<std::size_t>(n + 1), 0);
      std::vector<BigInt> ff{1};
      for (int m = 0; m <= n; ++m) {
        BigInt s = stirling2(n, m);
        for (std::size_t d = 0; d < ff.size(); ++d) sum[d] += s * ff[d];
        // ff *= (x - m)
        std::vector<BigInt> nx(ff.size() + 1, 0);
        for (std::size_t d = 0; d < ff.size(); ++d) {
          nx[d + 1] += ff[d];
          nx[d] -= ff[d] * m;
        }
        ff = std::move(nx);
      }
      bool ok = true;
      std::ostringstream os;
      for (int d = 0; d <= n; ++d) {
        if (sum[d] != (d == n ? 1 : 0)) ok = false;
        if (d) os << ",";
        os << sum[d];
      }
      r.add_text("n=" + std::to_string(n), os.str(),
                 "x^" + std::to_string(n), ok);
    }
    out.push_back(std::move(r));
  }
  {
    CheckReport r;
    r.family = "alternating-factorial-sum";
    r.params = {{"n_max", std::to_string(alt_max)}};
    for (int n = 1; n <= alt_max; ++n) {
      BigRational lhs(alternating_factorial_sum(n));
      BigRational rhs(n == 1 ? 1 : 0);
      r.add("n=" + std::to_string(n), lhs, rhs, 0, lhs == rhs);
    }
    out.push_back(std::move(r));
  }
  {
    CheckReport r;
    r.family = "restriction-coherence";
    r.params = {{"n_max", std::to_string(order)}};
    for (int n = 0; n <= order; ++n) {
      for (int k = 0; k <= n; ++k) {
        for (int rr = 1; rr <= order + 1; ++rr) {
          BigInt s = stirling2_restricted(n, k, rr);
          // Restricted value from its own definition, not the shortcut.
          BigInt direct = 0;
          if (k == 0) {
            direct = n == 0 ? 1 : 0;
          } else {
            for_each_bell_index(n, k, rr, [&](const std::vector<int>& j) {
              direct += detail::partition_count(n, j);
            });
          }
          bool ok = s == direct;
          if (n - k + 1 <= rr) ok = ok && s == stirling2(n, k);
          if (k >= 1 && n >= rr * k + 1) ok = ok && s == 0;
          if (n - k + 1 <= rr || (k >= 1 && n >= rr * k + 1)) {
            r.add(detail::kv({{"n", n}, {"k", k}, {"r", rr}}), BigRational(s),
                  BigRational(direct), 0, ok);
          } else if (!ok) {
            r.add(detail::kv({{"n", n}, {"k", k}, {"r", rr}}), BigRational(s),
                  BigRational(direct), 0, ok);
          }
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mnfield

#endif  // MNFIELD_BELL_STIRLING_HPP
