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

#ifndef MNFIELD_HAHN_SERIES_HPP
#define MNFIELD_HAHN_SERIES_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mnfield/bigint.hpp"
#include "mnfield/coeff_arith.hpp"
#include "mnfield/exponent.hpp"

namespace mnfield {

struct Digit {
  Exponent exp;
  FqElem coeff;

  friend bool operator==(const Digit& a, const Digit& b) {
    return a.exp == b.exp && a.coeff == b.coeff;
  }
};

// Truncated series sum [c_x] p^x with Teichmüller digits c_x in F_q and
// exponents on the 1/D lattice; everything at or above bound() is unknown.
class HahnSeries {
 public:
  HahnSeries() = default;

  HahnSeries(FieldPtr k, std::vector<Digit> digits, Bound bound = {},
             std::int64_t lattice = 1)
      : k_(std::move(k)), lattice_(lattice), bound_(bound) {
    if (!k_) throw InvalidInput("series without a field");
    if (lattice_ < 1) throw InvalidInput("lattice denominator must be >= 1");
    std::sort(digits.begin(), digits.end(),
              [](const Digit& a, const Digit& b) { return a.exp < b.exp; });
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i > 0 && digits[i].exp == digits[i - 1].exp) {
        throw InvalidInput("repeated exponent " + digits[i].exp.str());
      }
      if (digits[i].coeff.code >= k_->q()) {
        throw InvalidInput("digit outside F_q");
      }
      if (digits[i].coeff.is_zero()) continue;
      if (bound_.is_finite() && !(digits[i].exp < bound_.value())) continue;
      lattice_ = lcm_checked(lattice_, digits[i].exp.den());
      digits_.push_back(digits[i]);
    }
  }

  static HahnSeries zero(FieldPtr k, Bound bound = {}) {
    return HahnSeries(std::move(k), {}, bound);
  }
  static HahnSeries one(FieldPtr k) {
    FqElem o = k->one();
    return HahnSeries(std::move(k), {{Exponent(0), o}});
  }
  static HahnSeries monomial(FieldPtr k, const Exponent& x, FqElem c,
                             Bound bound = {}) {
    return HahnSeries(std::move(k), {{x, c}}, bound);
  }

  const FieldPtr& field() const { return k_; }
  std::int64_t lattice() const { return lattice_; }
  const Bound& bound() const { return bound_; }
  const std::vector<Digit>& digits() const { return digits_; }

  bool is_zero() const { return digits_.empty(); }
  bool is_exact() const { return bound_.is_infinite(); }
  bool is_monomial() const { return digits_.size() == 1; }

  // Smallest exponent with a nonzero digit; +inf when there is none. When
  // the series is zero below a finite bound, the true valuation is only
  // known to be >= bound().
  Bound valuation() const {
    if (digits_.empty()) return Bound::infinity();
    return digits_.front().exp;
  }
  // Valuation, or the order bound when no digit is known.
  Bound valuation_lower() const {
    return digits_.empty() ? bound_ : Bound(digits_.front().exp);
  }

  const Digit& leading() const {
    if (digits_.empty()) throw InvalidInput("leading digit of zero series");
    return digits_.front();
  }

  FqElem coeff_at(const Exponent& x) const {
    if (bound_.is_finite() && !(x < bound_.value())) {
      throw PrecisionError("digit at " + x.str() + " is beyond the order " +
                           bound_.str());
    }
    auto it = std::lower_bound(
        digits_.begin(), digits_.end(), x,
        [](const Digit& d, const Exponent& e) { return d.exp < e; });
    if (it != digits_.end() && it->exp == x) return it->coeff;
    return k_->zero();
  }

  HahnSeries truncated(const Bound& b) const {
    HahnSeries r = *this;
    r.bound_ = min(bound_, b);
    if (r.bound_.is_finite()) {
      auto& v = r.digits_;
      v.erase(std::remove_if(v.begin(), v.end(),
                             [&](const Digit& d) {
                               return !(d.exp < r.bound_.value());
                             }),
              v.end());
    }
    return r;
  }

  HahnSeries with_lattice(std::int64_t lattice) const {
    HahnSeries r = *this;
    r.lattice_ = lcm_checked(lattice_, lattice);
    return r;
  }

  friend bool operator==(const HahnSeries& a, const HahnSeries& b) {
    return a.k_->p() == b.k_->p() && a.k_->d() == b.k_->d() &&
           a.bound_ == b.bound_ && a.digits_ == b.digits_;
  }

 private:
  FieldPtr k_;
  std::vector<Digit> digits_;
  std::int64_t lattice_ = 1;
  Bound bound_;
};

inline void require_same_field(const HahnSeries& a, const HahnSeries& b) {
  if (a.field()->p() != b.field()->p() || a.field()->d() != b.field()->d()) {
    throw ContextMismatch("series over different fields");
  }
}

// Coefficients c_j in W(F_q)/p^N at exponent j/D for j0 <= j < jend, with
// coordinates stored slot-major.
struct RawSeries {
  std::shared_ptr<const RingCtx> ring;
  std::int64_t lattice = 1;
  std::int64_t j0 = 0;
  std::int64_t jend = 0;
  std::vector<u64> c;

  std::int64_t size() const { return jend - j0; }
  int d() const { return ring->d(); }
  u64* at(std::int64_t j) { return &c[static_cast<std::size_t>(j - j0) * d()]; }
  const u64* at(std::int64_t j) const {
    return &c[static_cast<std::size_t>(j - j0) * d()];
  }
  bool slot_zero(std::int64_t j) const {
    const u64* s = at(j);
    for (int i = 0; i < d(); ++i) {
      if (s[i] != 0) return false;
    }
    return true;
  }
};

// Largest number of lattice slots a raw buffer may hold.
inline constexpr std::int64_t kMaxRawSlots = std::int64_t{1} << 21;

inline RawSeries raw_zero(std::shared_ptr<const RingCtx> ring,
                          std::int64_t lattice, std::int64_t j0,
                          std::int64_t jend) {
  if (jend - j0 > kMaxRawSlots) {
    throw CapacityError("series spans " + std::to_string(jend - j0) +
                        " lattice slots");
  }
  RawSeries r;
  r.ring = std::move(ring);
  r.lattice = lattice;
  r.j0 = j0;
  r.jend = std::max(j0, jend);
  r.c.assign(static_cast<std::size_t>(r.jend - j0) * r.ring->d(), 0);
  return r;
}

// p-adic precision needed to canonicalize slots j0 <= j < jend on the 1/D
// lattice, including the guard digits.
inline int precision_for(const FieldCtx& k, std::int64_t lattice,
                         std::int64_t j0, std::int64_t jend) {
  std::int64_t span = jend - j0;
  std::int64_t hops = (span + lattice - 1) / lattice;
  return static_cast<int>(std::max<std::int64_t>(hops, 1)) +
         k.options().precision_guard;
}

inline std::int64_t ceil_index(const Exponent& b, std::int64_t lattice) {
  return (b * Exponent(lattice)).ceil();
}

// Places the Teichmüller lifts of the digits of a into a raw buffer.
inline RawSeries to_raw(const HahnSeries& a, std::shared_ptr<const RingCtx> ring,
                        std::int64_t lattice, std::int64_t j0,
                        std::int64_t jend) {
  RawSeries r = raw_zero(std::move(ring), lattice, j0, jend);
  int d = r.d();
  for (const auto& dg : a.digits()) {
    std::int64_t j = dg.exp.on_lattice(lattice);
    if (j < j0) throw InvalidInput("digit below raw window");
    if (j >= r.jend) break;
    const u64* t = r.ring->teich_ptr(dg.coeff);
    std::copy(t, t + d, r.at(j));
  }
  return r;
}

// Carry sweep: returns the canonical digits of the raw value below bound.
inline HahnSeries canonicalize(RawSeries r, const FieldPtr& k,
                               const Bound& bound) {
  std::int64_t jb = r.jend;
  if (bound.is_finite()) jb = std::min(jb, ceil_index(bound.value(), r.lattice));
  Bound out_bound =
      bound.is_finite() ? bound : Bound(Exponent(r.jend, r.lattice));
  if (jb > r.j0 && precision_for(*k, r.lattice, r.j0, jb) -
                           k->options().precision_guard >
                       r.ring->n()) {
    throw PrecisionError("ring precision too small for canonicalization");
  }
  const RingCtx& ring = *r.ring;
  int d = r.d();
  u64 p = static_cast<u64>(ring.p());
  std::vector<Digit> digits;
  for (std::int64_t j = r.j0; j < jb; ++j) {
    u64* s = r.at(j);
    bool nz = false;
    for (int i = 0; i < d; ++i) nz = nz || s[i] != 0;
    if (!nz) continue;
    FqElem dg = ring.residue(GRElem(s, s + d));
    if (!dg.is_zero()) {
      digits.push_back({Exponent(j, r.lattice), dg});
      const u64* t = ring.teich_ptr(dg);
      for (int i = 0; i < d; ++i) s[i] = ring.mod_sub(s[i], t[i]);
    }
    if (j + r.lattice < jb) {
      u64* dst = r.at(j + r.lattice);
      for (int i = 0; i < d; ++i) dst[i] = ring.mod_add(dst[i], s[i] / p);
    }
  }
  return HahnSeries(k, std::move(digits), out_bound, r.lattice);
}

namespace detail {

template <class Acc>
void conv_accumulate(const RawSeries& x, const std::vector<std::int64_t>& xs,
                     const RawSeries& y, const std::vector<std::int64_t>& ys,
                     std::int64_t j0, std::int64_t jend, RawSeries& out) {
  const RingCtx& ring = *out.ring;
  int d = ring.d();
  int w = 2 * d - 1;
  u64 m = ring.modulus_value();
  Acc mx = std::numeric_limits<Acc>::max();
  Acc sq = static_cast<Acc>(m - 1) * static_cast<Acc>(m - 1);
  Acc per = sq * static_cast<Acc>(d);
  Acc limit = (mx - static_cast<Acc>(m)) / per;
  std::size_t len = static_cast<std::size_t>(jend - j0);
  std::vector<Acc> acc(len * w, 0);
  Acc count = 0;
  auto flush = [&] {
    for (auto& v : acc) v %= m;
    count = 0;
  };
  for (std::int64_t jx : xs) {
    if (jx + y.j0 >= jend) break;
    const u64* a = x.at(jx);
    for (std::int64_t jy : ys) {
      std::int64_t j = jx + jy;
      if (j >= jend) break;
      const u64* b = y.at(jy);
      Acc* dst = &acc[static_cast<std::size_t>(j - j0) * w];
      for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        Acc ai = a[i];
        for (int l = 0; l < d; ++l) dst[i + l] += ai * b[l];
      }
    }
    if (++count >= limit) flush();
  }
  flush();
  std::vector<u64> z(w);
  for (std::size_t s = 0; s < len; ++s) {
    for (int i = 0; i < w; ++i) z[i] = static_cast<u64>(acc[s * w + i]);
    ring.reduce_wide(z);
    std::copy(z.begin(), z.begin() + d, out.c.begin() + s * d);
  }
}

inline std::vector<std::int64_t> nonzero_slots(const RawSeries& r) {
  std::vector<std::int64_t> v;
  for (std::int64_t j = r.j0; j < r.jend; ++j) {
    if (!r.slot_zero(j)) v.push_back(j);
  }
  return v;
}

}  // namespace detail

// Product truncated to slots below jend.
inline RawSeries raw_mul(const RawSeries& a, const RawSeries& b,
                         std::int64_t jend) {
  if (a.lattice != b.lattice || a.ring != b.ring) {
    throw ContextMismatch("raw series on different lattices or rings");
  }
  std::int64_t j0 = a.j0 + b.j0;
  RawSeries out = raw_zero(a.ring, a.lattice, j0, jend);
  if (out.jend <= j0) return out;
  auto as = detail::nonzero_slots(a);
  auto bs = detail::nonzero_slots(b);
  const RawSeries* x = &a;
  const RawSeries* y = &b;
  if (bs.size() < as.size()) {
    std::swap(x, y);
    std::swap(as, bs);
  }
  u64 m = a.ring->modulus_value();
  u128 sq = static_cast<u128>(m - 1) * (m - 1) * a.ring->d();
  if (sq < (static_cast<u128>(1) << 63)) {
    detail::conv_accumulate<u64>(*x, as, *y, bs, j0, out.jend, out);
  } else {
    detail::conv_accumulate<u128>(*x, as, *y, bs, j0, out.jend, out);
  }
  return out;
}

// dst[j + shift] += s * src[j] for every slot that lands inside dst.
inline void raw_axpy(RawSeries& dst, const RawSeries& src, const u64* s,
                     std::int64_t shift) {
  const RingCtx& ring = *dst.ring;
  int d = ring.d();
  std::vector<u64> z(2 * d - 1);
  std::int64_t lo = std::max(src.j0, dst.j0 - shift);
  std::int64_t hi = std::min(src.jend, dst.jend - shift);
  for (std::int64_t j = lo; j < hi; ++j) {
    const u64* a = src.at(j);
    bool nz = false;
    for (int i = 0; i < d; ++i) nz = nz || a[i] != 0;
    if (!nz) continue;
    std::fill(z.begin(), z.end(), 0);
    for (int i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (int l = 0; l < d; ++l) {
        z[i + l] = ring.mod_add(z[i + l], ring.mod_mul(a[i], s[l]));
      }
    }
    ring.reduce_wide(z);
    u64* o = dst.at(j + shift);
    for (int i = 0; i < d; ++i) o[i] = ring.mod_add(o[i], z[i]);
  }
}

inline void raw_add(RawSeries& dst, const RawSeries& src,
                    std::int64_t shift = 0) {
  const RingCtx& ring = *dst.ring;
  int d = ring.d();
  std::int64_t lo = std::max(src.j0, dst.j0 - shift);
  std::int64_t hi = std::min(src.jend, dst.jend - shift);
  for (std::int64_t j = lo; j < hi; ++j) {
    const u64* a = src.at(j);
    u64* o = dst.at(j + shift);
    for (int i = 0; i < d; ++i) o[i] = ring.mod_add(o[i], a[i]);
  }
}

inline void raw_scale(RawSeries& r, u64 s) {
  for (auto& v : r.c) v = r.ring->mod_mul(v, s);
}

inline std::int64_t vp_int(BigInt n, int p) {
  if (n == 0) throw InvalidInput("valuation of zero integer");
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Splits r = p^v * u with u a p-adic unit.
inline std::pair<std::int64_t, BigRational> split_rational(
    const BigRational& r, int p) {
  if (r == 0) throw InvalidInput("split of zero rational");
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  std::int64_t v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return {v, BigRational(num, den)};
}

// Image of a p-integral rational in Z/p^N.
inline u64 rational_mod(const BigRational& r, const RingCtx& ring) {
  BigInt m = ring.modulus_value();
  BigInt num = boost::multiprecision::numerator(r) % m;
  if (num < 0) num += m;
  BigInt den = boost::multiprecision::denominator(r) % m;
  if (den % ring.p() == 0) throw InvalidInput("rational is not p-integral");
  // Inverse of den modulo m.
  BigInt a = den, b = m, x0 = 1, x1 = 0;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  BigInt inv = x0 % m;
  if (inv < 0) inv += m;
  BigInt res = num * inv % m;
  return static_cast<u64>(res);
}

namespace detail {

inline std::int64_t joint_lattice(const HahnSeries& a, const HahnSeries& b) {
  return lcm_checked(a.lattice(), b.lattice());
}

inline bool disjoint_support(const HahnSeries& a, const HahnSeries& b) {
  std::size_t i = 0, j = 0;
  const auto& x = a.digits();
  const auto& y = b.digits();
  while (i < x.size() && j < y.size()) {
    if (x[i].exp == y[j].exp) return false;
    if (x[i].exp < y[j].exp) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

// [c] p^s * a, computed digitwise since Teichmüller lifts are multiplicative.
inline HahnSeries shift_scale(const HahnSeries& a, const Exponent& s,
                              FqElem c) {
  const FieldCtx& k = *a.field();
  std::vector<Digit> v;
  v.reserve(a.digits().size());
  for (const auto& dg : a.digits()) {
    v.push_back({dg.exp + s, k.mul(dg.coeff, c)});
  }
  return HahnSeries(a.field(), std::move(v), a.bound() + Bound(s),
                    lcm_checked(a.lattice(), s.den()));
}

[[noreturn]] inline void throw_need_cap(const char* op) {
  throw PrecisionError(std::string("exact ") + op +
                       " needs a finite precision cap");
}

}  // namespace detail

// Negation is digitwise for odd p because -1 is a Teichmüller lift.
inline HahnSeries hs_neg(const HahnSeries& a) {
  const FieldCtx& k = *a.field();
  std::vector<Digit> v;
  for (const auto& dg : a.digits()) v.push_back({dg.exp, k.neg(dg.coeff)});
  return HahnSeries(a.field(), std::move(v), a.bound(), a.lattice());
}

inline HahnSeries hs_add(const HahnSeries& a, const HahnSeries& b,
                         const Bound& cap = {}) {
  require_same_field(a, b);
  Bound bound = min(min(a.bound(), b.bound()), cap);
  std::int64_t lattice = detail::joint_lattice(a, b);
  if (detail::disjoint_support(a, b)) {
    std::vector<Digit> v = a.digits();
    v.insert(v.end(), b.digits().begin(), b.digits().end());
    return HahnSeries(a.field(), std::move(v), bound, lattice);
  }
  if (bound.is_infinite()) detail::throw_need_cap("sum");
  std::int64_t j0 = std::min(a.leading().exp.on_lattice(lattice),
                             b.leading().exp.on_lattice(lattice));
  std::int64_t jb = ceil_index(bound.value(), lattice);
  if (jb <= j0) return HahnSeries::zero(a.field(), bound);
  auto ring = a.field()->ring(precision_for(*a.field(), lattice, j0, jb));
  RawSeries ra = to_raw(a, ring, lattice, j0, jb);
  RawSeries rb = to_raw(b, ring, lattice, j0, jb);
  raw_add(ra, rb);
  return canonicalize(std::move(ra), a.field(), bound).with_lattice(lattice);
}

inline HahnSeries hs_sub(const HahnSeries& a, const HahnSeries& b,
                         const Bound& cap = {}) {
  return hs_add(a, hs_neg(b), cap);
}

namespace detail {

// Unit part a / ([c] p^v) where [c] p^v is the leading term.
inline HahnSeries unit_part(const HahnSeries& a) {
  const auto& ld = a.leading();
  return shift_scale(a, -ld.exp, a.field()->inv(ld.coeff));
}

inline RawSeries unit_raw(const HahnSeries& u,
                          std::shared_ptr<const RingCtx> ring,
                          std::int64_t lattice, std::int64_t jb) {
  return to_raw(u, std::move(ring), lattice, 0, jb);
}

}  // namespace detail

inline HahnSeries hs_mul(const HahnSeries& a, const HahnSeries& b,
                         const Bound& cap = {}) {
  require_same_field(a, b);
  const FieldPtr& k = a.field();
  if (a.is_zero() || b.is_zero()) {
    Bound bound = min(a.valuation_lower() + b.valuation_lower(), cap);
    return HahnSeries::zero(k, bound);
  }
  Exponent va = a.leading().exp, vb = b.leading().exp;
  Bound bound = min(min(Bound(va) + b.bound(), Bound(vb) + a.bound()), cap);
  if (a.is_monomial() && a.is_exact()) {
    return detail::shift_scale(b, va, a.leading().coeff).truncated(bound);
  }
  if (b.is_monomial() && b.is_exact()) {
    return detail::shift_scale(a, vb, b.leading().coeff).truncated(bound);
  }
  if (bound.is_infinite()) detail::throw_need_cap("product");
  Exponent rel = bound.value() - va - vb;
  std::int64_t lattice = detail::joint_lattice(a, b);
  std::int64_t jb = ceil_index(rel, lattice);
  FqElem lead = k->mul(a.leading().coeff, b.leading().coeff);
  if (jb <= 0) return HahnSeries::zero(k, bound);
  auto ring = k->ring(precision_for(*k, lattice, 0, jb));
  RawSeries ua = detail::unit_raw(detail::unit_part(a), ring, lattice, jb);
  RawSeries ub = detail::unit_raw(detail::unit_part(b), ring, lattice, jb);
  HahnSeries u = canonicalize(raw_mul(ua, ub, jb), k, rel);
  return detail::shift_scale(u, va + vb, lead).with_lattice(lattice);
}

namespace detail {

inline RawSeries raw_pow(RawSeries base, std::uint64_t e, std::int64_t jb) {
  RawSeries acc = raw_zero(base.ring, base.lattice, 0, jb);
  acc.at(0)[0] = 1;
  while (e > 0) {
    if (e & 1) acc = raw_mul(acc, base, jb);
    e >>= 1;
    if (e > 0) base = raw_mul(base, base, jb);
  }
  return acc;
}

// 1 / u for a raw unit with constant slot 1, via prod (1 + (-w)^(2^i)).
inline RawSeries raw_unit_inverse(const RawSeries& u, std::int64_t jb) {
  const RingCtx& ring = *u.ring;
  RawSeries t = raw_zero(u.ring, u.lattice, 0, jb);
  raw_add(t, u);
  for (int i = 0; i < ring.d(); ++i) {
    t.at(0)[i] = ring.mod_sub(t.at(0)[i], i == 0 ? 1 : 0);
  }
  for (auto& v : t.c) v = ring.mod_neg(v);
  RawSeries acc = raw_zero(u.ring, u.lattice, 0, jb);
  acc.at(0)[0] = 1;
  for (;;) {
    std::int64_t low = jb;
    for (std::int64_t j = 0; j < jb; ++j) {
      if (!t.slot_zero(j)) {
        low = j;
        break;
      }
    }
    if (low >= jb) break;
    RawSeries f = t;
    f.at(0)[0] = ring.mod_add(f.at(0)[0], 1);
    acc = raw_mul(acc, f, jb);
    t = raw_mul(t, t, jb);
  }
  return acc;
}

}  // namespace detail

inline HahnSeries hs_inv(const HahnSeries& a, const Bound& cap = {}) {
  const FieldPtr& k = a.field();
  if (a.is_zero()) {
    if (a.is_exact()) throw DivisionByZero("inverse of zero series");
    throw PrecisionError("inverse of a series with unknown valuation");
  }
  Exponent v = a.leading().exp;
  FqElem c = a.leading().coeff;
  if (a.is_monomial() && a.is_exact()) {
    return HahnSeries::monomial(k, -v, k->inv(c)).truncated(cap);
  }
  Bound bound = min(a.bound() - (v + v), cap);
  if (bound.is_infinite()) detail::throw_need_cap("inverse");
  Exponent rel = bound.value() + v;
  std::int64_t lattice = a.lattice();
  std::int64_t jb = ceil_index(rel, lattice);
  if (jb <= 0) return HahnSeries::zero(k, bound);
  auto ring = k->ring(precision_for(*k, lattice, 0, jb));
  RawSeries u = detail::unit_raw(detail::unit_part(a), ring, lattice, jb);
  HahnSeries r = canonicalize(detail::raw_unit_inverse(u, jb), k, rel);
  return detail::shift_scale(r, -v, k->inv(c)).with_lattice(lattice);
}

inline HahnSeries hs_int_pow(const HahnSeries& a, std::int64_t e,
                             const Bound& cap = {}) {
  const FieldPtr& k = a.field();
  if (e == 0) return HahnSeries::one(k).truncated(cap);
  if (e < 0) {
    if (a.is_zero()) throw DivisionByZero("negative power of zero series");
    Exponent v = a.leading().exp;
    // (1/a)^(-e) has order ord(1/a) + (-e - 1)(-v), so ask the inverse
    // for cap + (-e - 1) v.
    Bound inv_cap = cap.is_finite()
                        ? Bound(cap.value() - Exponent(-e - 1) * (-v))
                        : Bound();
    return hs_int_pow(hs_inv(a, inv_cap), -e, cap);
  }
  if (a.is_zero()) {
    Bound lb = a.bound();
    Bound bound = lb.is_finite() ? Bound(lb.value() * Exponent(e)) : Bound();
    return HahnSeries::zero(k, min(bound, cap));
  }
  Exponent v = a.leading().exp;
  FqElem c = a.leading().coeff;
  if (a.is_monomial() && a.is_exact()) {
    return HahnSeries::monomial(k, v * Exponent(e), k->pow(c, e))
        .truncated(cap);
  }
  Bound bound = min(a.bound() + Bound(v * Exponent(e - 1)), cap);
  if (bound.is_infinite()) detail::throw_need_cap("power");
  Exponent rel = bound.value() - v * Exponent(e);
  std::int64_t lattice = a.lattice();
  std::int64_t jb = ceil_index(rel, lattice);
  if (jb <= 0) return HahnSeries::zero(k, bound);
  auto ring = k->ring(precision_for(*k, lattice, 0, jb));
  RawSeries u = detail::unit_raw(detail::unit_part(a), ring, lattice, jb);
  HahnSeries r = canonicalize(
      detail::raw_pow(std::move(u), static_cast<std::uint64_t>(e), jb), k, rel);
  return detail::shift_scale(r, v * Exponent(e), k->pow(c, e))
      .with_lattice(lattice);
}

// a * r for a rational scalar r.
inline HahnSeries hs_scale(const HahnSeries& a, const BigRational& r,
                           const Bound& cap = {}) {
  const FieldPtr& k = a.field();
  if (r == 0) return HahnSeries::zero(k);
  auto [vr, unit] = split_rational(r, k->p());
  Exponent sv(vr);
  if (a.is_zero()) return HahnSeries::zero(k, min(a.bound() + Bound(sv), cap));
  if (unit == 1) return detail::shift_scale(a, sv, k->one()).truncated(cap);
  if (unit == -1) {
    return detail::shift_scale(a, sv, k->neg(k->one())).truncated(cap);
  }
  Bound bound = min(a.bound() + Bound(sv), cap);
  if (bound.is_infinite()) detail::throw_need_cap("scaling");
  Exponent v = a.leading().exp;
  Exponent rel = bound.value() - sv - v;
  std::int64_t lattice = a.lattice();
  std::int64_t jb = ceil_index(rel, lattice);
  if (jb <= 0) return HahnSeries::zero(k, bound);
  auto ring = k->ring(precision_for(*k, lattice, 0, jb));
  RawSeries u = detail::unit_raw(detail::shift_scale(a, -v, k->one()), ring,
                                 lattice, jb);
  raw_scale(u, rational_mod(unit, *ring));
  HahnSeries s = canonicalize(std::move(u), k, rel);
  return detail::shift_scale(s, v + sv, k->one()).with_lattice(lattice);
}

// Canonical digits of a rational number, up to cap.
inline HahnSeries hs_from_rational(const FieldPtr& k, const BigRational& r,
                                   const Bound& cap = {}) {
  return hs_scale(HahnSeries::one(k), r, cap);
}

// u^(num/den) through the binomial series; needs v(u - 1) > 0 and p not
// dividing den.
inline HahnSeries binomial_series(const HahnSeries& u, std::int64_t num,
                                  std::int64_t den, const Bound& cap = {}) {
  const FieldPtr& k = u.field();
  if (den == 0) throw DivisionByZero("zero denominator in exponent");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den % k->p() == 0) {
    throw NonIntegralExponent("exponent denominator divisible by p");
  }
  if (u.is_zero() || u.leading().exp != Exponent(0) ||
      u.leading().coeff != k->one()) {
    throw InvalidInput("binomial series needs v(u - 1) > 0");
  }
  Bound bound = min(u.bound(), cap);
  if (bound.is_infinite()) {
    if (u.is_monomial()) return HahnSeries::one(k);
    detail::throw_need_cap("binomial series");
  }
  std::int64_t lattice = u.lattice();
  std::int64_t jb = ceil_index(bound.value(), lattice);
  if (jb <= 0) return HahnSeries::zero(k, bound);
  auto ring = k->ring(precision_for(*k, lattice, 0, jb));
  RawSeries m = to_raw(u, ring, lattice, 0, jb);
  m.at(0)[0] = ring->mod_sub(m.at(0)[0], 1);
  RawSeries acc = raw_zero(ring, lattice, 0, jb);
  acc.at(0)[0] = 1;
  RawSeries pw = m;
  BigRational e(num, den), coef = 1;
  for (std::int64_t i = 1;; ++i) {
    bool any = false;
    for (std::int64_t j = 0; j < jb && !any; ++j) any = !pw.slot_zero(j);
    if (!any) break;
    coef = coef * (e - (i - 1)) / i;
    if (coef != 0) {
      RawSeries term = pw;
      raw_scale(term, rational_mod(coef, *ring));
      raw_add(acc, term);
    }
    pw = raw_mul(pw, m, jb);
  }
  return canonicalize(std::move(acc), k, bound).with_lattice(lattice);
}

// Sum of terms r_i * [c_i] p^{x_i} with rational scalars r_i.
struct ScaledTerm {
  BigRational scalar;
  FqElem coeff;
  Exponent exp;
};

inline HahnSeries hs_from_terms(const FieldPtr& k,
                                const std::vector<ScaledTerm>& terms,
                                const Bound& cap = {}) {
  HahnSeries acc = HahnSeries::zero(k);
  for (const auto& t : terms) {
    if (t.scalar == 0 || t.coeff.is_zero()) continue;
    HahnSeries m = hs_scale(HahnSeries::monomial(k, t.exp, t.coeff), t.scalar,
                            cap);
    acc = hs_add(acc, m, cap);
  }
  return acc.truncated(cap);
}

}  // namespace mnfield

#endif  // MNFIELD_HAHN_SERIES_HPP
