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

#ifndef MNFIELD_COEFF_ARITH_HPP
#define MNFIELD_COEFF_ARITH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mnfield/error.hpp"

namespace mnfield {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

// Element of F_{p^d}. The code is the base-p number whose digits are the
// coordinates on the basis 1, g, ..., g^{d-1}, lowest degree first.
struct FqElem {
  std::uint32_t code = 0;

  bool is_zero() const { return code == 0; }
  friend bool operator==(FqElem a, FqElem b) { return a.code == b.code; }
  friend auto operator<=>(FqElem a, FqElem b) { return a.code <=> b.code; }
};

class RingCtx;

struct FieldOptions {
  int precision_guard = 2;
  int max_precision = 60;  // cap on the p-adic precision N of ring contexts
};

// F_{p^d} built on the lexicographically smallest monic irreducible
// polynomial. Immutable after construction apart from the ring cache, which
// is guarded.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  FieldCtx(int p, int d, FieldOptions opts = {}) : p_(p), d_(d), opts_(opts) {
    if (!is_prime(p) || p == 2) {
      throw InvalidPrime(std::to_string(p) + " is not an odd prime");
    }
    if (d < 1) throw InvalidInput("field degree must be positive");
    std::int64_t q = 1;
    for (int i = 0; i < d; ++i) {
      q *= p;
      if (q > (1 << 20)) throw UnsupportedRange("field too large");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (opts_.precision_guard < 0) {
      throw InvalidInput("precision guard must be non-negative");
    }
    if (opts_.max_precision < 1) {
      throw InvalidInput("maximum precision must be positive");
    }
    find_modulus();
    build_tables();
  }

  int p() const { return p_; }
  int d() const { return d_; }
  std::uint32_t q() const { return q_; }
  const FieldOptions& options() const { return opts_; }
  // Monic modulus, lowest degree first, size d+1.
  const std::vector<int>& modulus() const { return modulus_; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  // Residue of the polynomial variable; for d == 1 this is the root of the
  // linear modulus.
  FqElem g() const {
    if (d_ >= 2) return {static_cast<std::uint32_t>(p_)};
    return from_int(-modulus_[0]);
  }

  FqElem from_int(std::int64_t v) const {
    v %= p_;
    if (v < 0) v += p_;
    return {static_cast<std::uint32_t>(v)};
  }

  FqElem from_coords(const std::vector<std::int64_t>& c) const {
    if (static_cast<int>(c.size()) > d_) {
      throw InvalidInput("too many coordinates for F_q element");
    }
    std::uint32_t code = 0, pw = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t v = c[i] % p_;
      if (v < 0) v += p_;
      code += static_cast<std::uint32_t>(v) * pw;
      pw *= static_cast<std::uint32_t>(p_);
    }
    return {code};
  }

  std::vector<int> coords(FqElem a) const {
    std::vector<int> c(d_);
    std::uint32_t x = a.code;
    for (int i = 0; i < d_; ++i) {
      c[i] = static_cast<int>(x % p_);
      x /= p_;
    }
    return c;
  }

  FqElem add(FqElem a, FqElem b) const {
    std::uint32_t r = 0, pw = 1, x = a.code, y = b.code;
    for (int i = 0; i < d_; ++i) {
      r += ((x % p_ + y % p_) % p_) * pw;
      x /= p_;
      y /= p_;
      pw *= p_;
    }
    return {r};
  }
  FqElem neg(FqElem a) const {
    std::uint32_t r = 0, pw = 1, x = a.code;
    for (int i = 0; i < d_; ++i) {
      r += ((p_ - x % p_) % p_) * pw;
      x /= p_;
      pw *= p_;
    }
    return {r};
  }
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  FqElem mul(FqElem a, FqElem b) const {
    if (a.code == 0 || b.code == 0) return zero();
    return {exp_[(log_[a.code] + log_[b.code]) % (q_ - 1)]};
  }
  FqElem inv(FqElem a) const {
    if (a.code == 0) throw DivisionByZero("inverse of zero in F_q");
    return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
  }
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::int64_t k) const {
    if (a.code == 0) {
      if (k < 0) throw DivisionByZero("negative power of zero in F_q");
      return k == 0 ? one() : zero();
    }
    std::int64_t m = static_cast<std::int64_t>(q_) - 1;
    std::int64_t e = (static_cast<std::int64_t>(log_[a.code]) * (k % m)) % m;
    if (e < 0) e += m;
    return {exp_[e]};
  }
  FqElem frobenius(FqElem a) const { return pow(a, p_); }

  // Multiplicative order; 0 for the zero element.
  std::int64_t order(FqElem a) const {
    if (a.code == 0) return 0;
    std::int64_t m = static_cast<std::int64_t>(q_) - 1;
    return m / std::gcd(m, static_cast<std::int64_t>(log_[a.code]));
  }

  // First element of exact multiplicative order k in code order.
  FqElem primitive_root_of_order(std::int64_t k) const {
    if (k < 1 || (static_cast<std::int64_t>(q_) - 1) % k != 0) {
      throw NoSuchRoot("no element of order " + std::to_string(k) +
                       " in F_" + std::to_string(q_));
    }
    for (std::uint32_t c = 1; c < q_; ++c) {
      if (order({c}) == k) return {c};
    }
    throw NoSuchRoot("no element of order " + std::to_string(k));
  }

  // "a+b*g+c*g^2", zero parts omitted, "0" for zero, unit factors dropped.
  std::string format(FqElem a) const {
    if (a.code == 0) return "0";
    std::string out;
    auto c = coords(a);
    for (int i = 0; i < d_; ++i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += std::to_string(c[i]);
        continue;
      }
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += "g";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

  FqElem parse(const std::string& s) const {
    std::vector<std::int64_t> c(d_, 0);
    if (s.empty()) throw InvalidInput("empty F_q element");
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t plus = s.find('+', pos);
      std::string term =
          s.substr(pos, plus == std::string::npos ? std::string::npos
                                                  : plus - pos);
      parse_term(term, c, s);
      if (plus == std::string::npos) break;
      pos = plus + 1;
    }
    return from_coords(c);
  }

  std::shared_ptr<const RingCtx> ring(int n) const;

 private:
  void parse_term(const std::string& term, std::vector<std::int64_t>& c,
                  const std::string& whole) const {
    auto bad = [&] { return InvalidInput("bad F_q element '" + whole + "'"); };
    if (term.empty()) throw bad();
    std::int64_t coef = 1;
    std::string rest = term;
    std::size_t gpos = term.find('g');
    if (gpos == std::string::npos) {
      int deg = 0;
      for (char ch : term) {
        if (ch < '0' || ch > '9') throw bad();
      }
      coef = std::stoll(term);
      c[deg] += coef;
      return;
    }
    if (gpos > 0) {
      std::string head = term.substr(0, gpos);
      if (head.back() != '*') throw bad();
      head.pop_back();
      if (head.empty()) throw bad();
      for (char ch : head) {
        if (ch < '0' || ch > '9') throw bad();
      }
      coef = std::stoll(head);
    }
    std::string tail = term.substr(gpos + 1);
    int deg = 1;
    if (!tail.empty()) {
      if (tail[0] != '^' || tail.size() < 2) throw bad();
      for (std::size_t i = 1; i < tail.size(); ++i) {
        if (tail[i] < '0' || tail[i] > '9') throw bad();
      }
      deg = std::stoi(tail.substr(1));
    }
    if (deg >= d_) throw bad();
    c[deg] += coef;
  }

  // Polynomial helpers over F_p on int vectors, lowest degree first.
  std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m) const {
    int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
      int f = a[i] % p_;
      if (f == 0) continue;
      for (int j = 0; j <= dm; ++j) {
        a[i - dm + j] = ((a[i - dm + j] - f * m[j]) % p_ + p_) % p_;
      }
    }
    a.resize(std::min<std::size_t>(a.size(), dm));
    return a;
  }

  bool irreducible(const std::vector<int>& f) const {
    // Trial division by every monic polynomial of degree 1..d/2.
    for (int k = 1; 2 * k <= d_; ++k) {
      std::int64_t count = 1;
      for (int i = 0; i < k; ++i) count *= p_;
      for (std::int64_t code = 0; code < count; ++code) {
        std::vector<int> m(k + 1);
        std::int64_t x = code;
        for (int i = 0; i < k; ++i) {
          m[i] = static_cast<int>(x % p_);
          x /= p_;
        }
        m[k] = 1;
        auto r = poly_mod(f, m);
        if (std::all_of(r.begin(), r.end(), [](int v) { return v == 0; })) {
          return false;
        }
      }
    }
    return true;
  }

  void find_modulus() {
    // Scan in code order: the constant coefficient varies fastest.
    for (std::uint32_t code = 0; code < q_; ++code) {
      std::vector<int> f(d_ + 1);
      std::uint32_t x = code;
      for (int i = 0; i < d_; ++i) {
        f[i] = static_cast<int>(x % p_);
        x /= p_;
      }
      f[d_] = 1;
      if (irreducible(f)) {
        modulus_ = f;
        return;
      }
    }
    throw InvalidInput("no irreducible modulus found");
  }

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    std::vector<int> x(d_), y(d_);
    for (int i = 0; i < d_; ++i) {
      x[i] = static_cast<int>(a % p_);
      a /= p_;
      y[i] = static_cast<int>(b % p_);
      b /= p_;
    }
    std::vector<int> z(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
    }
    z = poly_mod(z, modulus_);
    z.resize(d_, 0);
    std::uint32_t r = 0, pw = 1;
    for (int i = 0; i < d_; ++i) {
      r += static_cast<std::uint32_t>(z[i]) * pw;
      pw *= p_;
    }
    return r;
  }

  void build_tables() {
    std::uint32_t m = q_ - 1;
    for (std::uint32_t cand = 1; cand < q_; ++cand) {
      std::vector<std::uint32_t> ex(m);
      std::uint32_t x = 1;
      bool ok = true;
      for (std::uint32_t k = 0; k < m; ++k) {
        ex[k] = x;
        x = mul_slow(x, cand);
        if (x == 1 && k + 1 < m) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      exp_ = std::move(ex);
      log_.assign(q_, 0);
      for (std::uint32_t k = 0; k < m; ++k) log_[exp_[k]] = k;
      return;
    }
    throw InvalidInput("multiplicative group generator not found");
  }

  int p_;
  int d_;
  std::uint32_t q_ = 0;
  FieldOptions opts_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  mutable std::mutex ring_mu_;
  mutable std::map<int, std::shared_ptr<const RingCtx>> rings_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

inline FieldPtr make_field(int p, int d = 2, FieldOptions opts = {}) {
  return std::make_shared<const FieldCtx>(p, d, opts);
}

// Polynomial over F_q, lowest degree first.
using FqPoly = std::vector<FqElem>;

inline void fq_trim(FqPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline FqElem fq_eval(const FieldCtx& k, const FqPoly& f, FqElem x) {
  FqElem acc = k.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = k.add(k.mul(acc, x), f[i]);
  return acc;
}

// Divides by (T - r); returns the quotient and sets rem to the remainder.
inline FqPoly fq_deflate(const FieldCtx& k, const FqPoly& f, FqElem r,
                         FqElem& rem) {
  if (f.empty()) {
    rem = k.zero();
    return {};
  }
  FqPoly qt(f.size() - 1);
  FqElem acc = k.zero();
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = k.add(k.mul(acc, r), f[i]);
    if (i > 0) qt[i - 1] = acc;
  }
  rem = acc;
  return qt;
}

// Roots with multiplicities, in code order.
inline std::vector<std::pair<FqElem, int>> fq_roots(const FieldCtx& k,
                                                    FqPoly f) {
  fq_trim(f);
  if (f.empty()) throw InvalidInput("roots of the zero polynomial");
  std::vector<std::pair<FqElem, int>> out;
  for (std::uint32_t c = 0; c < k.q() && f.size() > 1; ++c) {
    FqElem r{c};
    int mult = 0;
    for (;;) {
      FqElem rem;
      FqPoly qt = fq_deflate(k, f, r, rem);
      if (!rem.is_zero() || f.size() <= 1) break;
      f = std::move(qt);
      ++mult;
    }
    if (mult > 0) out.emplace_back(r, mult);
  }
  return out;
}

inline std::string fq_poly_format(const FieldCtx& k, const FqPoly& f) {
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].is_zero()) continue;
    std::string c = k.format(f[i]);
    bool compound = c.find('+') != std::string::npos;
    std::string mono = i == 0 ? "" : (i == 1 ? "T" : "T^" + std::to_string(i));
    std::string term;
    if (i == 0) {
      term = c;
    } else if (f[i] == k.one()) {
      term = mono;
    } else {
      term = (compound ? "(" + c + ")" : c) + "*" + mono;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

// Element of the Galois ring W(F_{p^d}) / p^N, coordinates in [0, p^N).
using GRElem = std::vector<u64>;

// W(F_{p^d}) / p^N with the modulus lifted coefficientwise, plus a table of
// Teichmüller lifts indexed by F_q code.
class RingCtx {
 public:
  RingCtx(const FieldCtx& k, int n) : p_(k.p()), d_(k.d()), n_(n) {
    if (n < 1) throw PrecisionError("ring precision must be positive");
    if (n > k.options().max_precision) {
      throw CapacityError("required precision " + std::to_string(n) +
                           " exceeds the cap " +
                           std::to_string(k.options().max_precision));
    }
    u128 m = 1;
    for (int i = 0; i < n; ++i) {
      m *= static_cast<u64>(p_);
      if (m >= (static_cast<u128>(1) << 62)) {
        throw CapacityError("p^N does not fit the ring word size");
      }
    }
    m_ = static_cast<u64>(m);
    for (int i = 0; i < d_; ++i) {
      // t^d = -sum f_i t^i
      negmod_.push_back(mod_neg(static_cast<u64>(k.modulus()[i])));
    }
    build_teich(k);
  }

  int p() const { return p_; }
  int d() const { return d_; }
  int n() const { return n_; }
  u64 modulus_value() const { return m_; }
  const std::vector<u64>& reduction() const { return negmod_; }

  u64 mod_neg(u64 a) const { return a == 0 ? 0 : m_ - a % m_; }
  u64 mod_add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 mod_sub(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
  u64 mod_mul(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<u128>(a) * b % m_);
  }

  GRElem zero() const { return GRElem(d_, 0); }
  GRElem from_int(std::int64_t v) const {
    GRElem r = zero();
    std::int64_t mm = static_cast<std::int64_t>(m_);
    std::int64_t x = v % mm;
    if (x < 0) x += mm;
    r[0] = static_cast<u64>(x);
    return r;
  }

  GRElem add(const GRElem& a, const GRElem& b) const {
    GRElem r(d_);
    for (int i = 0; i < d_; ++i) r[i] = mod_add(a[i], b[i]);
    return r;
  }
  GRElem sub(const GRElem& a, const GRElem& b) const {
    GRElem r(d_);
    for (int i = 0; i < d_; ++i) r[i] = mod_sub(a[i], b[i]);
    return r;
  }
  GRElem mul(const GRElem& a, const GRElem& b) const {
    std::vector<u64> z(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < d_; ++j) {
        z[i + j] = mod_add(z[i + j], mod_mul(a[i], b[j]));
      }
    }
    reduce_wide(z);
    return GRElem(z.begin(), z.begin() + d_);
  }
  GRElem pow(GRElem a, std::uint64_t k) const {
    GRElem r = from_int(1);
    while (k > 0) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  // Folds coordinates of degree >= d back using the modulus. Inputs must be
  // reduced mod p^N.
  void reduce_wide(std::vector<u64>& z) const {
    for (std::size_t i = z.size(); i-- > static_cast<std::size_t>(d_);) {
      u64 top = z[i];
      if (top == 0) continue;
      z[i] = 0;
      for (int j = 0; j < d_; ++j) {
        z[i - d_ + j] = mod_add(z[i - d_ + j], mod_mul(top, negmod_[j]));
      }
    }
  }

  FqElem residue(const GRElem& a) const {
    std::uint32_t code = 0, pw = 1;
    for (int i = 0; i < d_; ++i) {
      code += static_cast<std::uint32_t>(a[i] % p_) * pw;
      pw *= p_;
    }
    return {code};
  }

  bool divisible_by_p(const GRElem& a) const {
    for (u64 c : a) {
      if (c % p_ != 0) return false;
    }
    return true;
  }

  const u64* teich_ptr(FqElem a) const {
    return &teich_[static_cast<std::size_t>(a.code) * d_];
  }

  GRElem teich(FqElem a) const {
    const u64* t = teich_ptr(a);
    return GRElem(t, t + d_);
  }

 private:
  void build_teich(const FieldCtx& k) {
    teich_.assign(static_cast<std::size_t>(k.q()) * d_, 0);
    u64 q = k.q();
    for (std::uint32_t c = 1; c < k.q(); ++c) {
      auto co = k.coords({c});
      GRElem x(d_);
      for (int i = 0; i < d_; ++i) x[i] = static_cast<u64>(co[i]);
      // x <- x^q gains one p-adic digit per round.
      for (int it = 0; it <= n_; ++it) {
        GRElem y = pow(x, q);
        if (y == x) break;
        x = std::move(y);
      }
      std::copy(x.begin(), x.end(),
                teich_.begin() + static_cast<std::size_t>(c) * d_);
    }
  }

  int p_, d_, n_;
  u64 m_ = 1;
  std::vector<u64> negmod_;
  std::vector<u64> teich_;
};

inline std::shared_ptr<const RingCtx> FieldCtx::ring(int n) const {
  std::lock_guard<std::mutex> lock(ring_mu_);
  auto it = rings_.find(n);
  if (it != rings_.end()) return it->second;
  auto r = std::make_shared<const RingCtx>(*this, n);
  rings_.emplace(n, r);
  return r;
}

inline GRElem teich_lift(const RingCtx& r, FqElem a) { return r.teich(a); }

// Greedy Teichmüller digits of x: x = sum [d_i] p^i mod p^N.
inline std::vector<FqElem> teich_digit_expand(const RingCtx& r, GRElem x) {
  std::vector<FqElem> out;
  for (int i = 0; i < r.n(); ++i) {
    FqElem dg = r.residue(x);
    out.push_back(dg);
    x = r.sub(x, r.teich(dg));
    for (auto& c : x) c /= static_cast<u64>(r.p());
  }
  return out;
}

}  // namespace mnfield

#endif  // MNFIELD_COEFF_ARITH_HPP
