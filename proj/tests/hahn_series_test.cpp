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

#include "mnfield/hahn_series.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mnfield {
namespace {

// Independent model: W(F_q)/p^N [pi] / (pi^e - p), elements kept reduced to
// pi-degree < e. A series on the 1/e lattice with exponents >= 0 maps to
// sum teich(c_x) pi^{x e}.
class PiRing {
 public:
  PiRing(FieldPtr k, int n, std::int64_t e)
      : k_(std::move(k)), r_(k_->ring(n)), e_(e) {}

  using Elem = std::vector<GRElem>;

  Elem zero() const { return Elem(e_, r_->zero()); }

  Elem embed(const HahnSeries& a) const {
    Elem out = zero();
    for (const auto& dg : a.digits()) {
      std::int64_t j = dg.exp.on_lattice(e_);
      add_at(out, j, r_->teich(dg.coeff));
    }
    return out;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem out = zero();
    for (std::int64_t i = 0; i < e_; ++i) {
      for (std::int64_t j = 0; j < e_; ++j) {
        add_at(out, i + j, r_->mul(a[i], b[j]));
      }
    }
    return out;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (std::int64_t i = 0; i < e_; ++i) out[i] = r_->add(out[i], b[i]);
    return out;
  }

  // pi-adic valuation, capped at n * e.
  std::int64_t valuation(const Elem& a) const {
    std::int64_t best = static_cast<std::int64_t>(r_->n()) * e_;
    for (std::int64_t j = 0; j < e_; ++j) {
      for (u64 c : a[j]) {
        if (c == 0) continue;
        std::int64_t v = 0;
        while (c % r_->p() == 0) {
          c /= r_->p();
          ++v;
        }
        best = std::min(best, v * e_ + j);
      }
    }
    return best;
  }

  Elem sub(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (std::int64_t i = 0; i < e_; ++i) out[i] = r_->sub(out[i], b[i]);
    return out;
  }

 private:
  void add_at(Elem& out, std::int64_t j, GRElem v) const {
    while (j >= e_) {
      v = r_->mul(v, r_->from_int(r_->p()));
      j -= e_;
    }
    out[j] = r_->add(out[j], v);
  }

  FieldPtr k_;
  std::shared_ptr<const RingCtx> r_;
  std::int64_t e_;
};

HahnSeries random_series(const FieldPtr& k, std::mt19937& rng,
                         std::int64_t lattice, int terms, int max_index,
                         bool unit = false) {
  std::uniform_int_distribution<std::uint32_t> pick(1, k->q() - 1);
  std::uniform_int_distribution<int> idx(unit ? 1 : 0, max_index);
  std::vector<Digit> ds;
  std::vector<int> used;
  if (unit) {
    ds.push_back({Exponent(0), pick(rng) ? FqElem{pick(rng)} : k->one()});
    used.push_back(0);
  }
  for (int t = 0; t < terms; ++t) {
    int j = idx(rng);
    if (std::find(used.begin(), used.end(), j) != used.end()) continue;
    used.push_back(j);
    ds.push_back({Exponent(j, lattice), FqElem{pick(rng)}});
  }
  return HahnSeries(k, ds, {}, lattice);
}

void expect_canonical(const HahnSeries& s) {
  for (std::size_t i = 0; i < s.digits().size(); ++i) {
    EXPECT_FALSE(s.digits()[i].coeff.is_zero());
    if (i > 0) {
      EXPECT_LT(s.digits()[i - 1].exp, s.digits()[i].exp);
    }
    if (s.bound().is_finite()) {
      EXPECT_LT(s.digits()[i].exp, s.bound().value());
    }
    EXPECT_EQ(s.lattice() % s.digits()[i].exp.den(), 0);
  }
}

TEST(HahnSeries, TeichmullerCancellation) {
  auto k = make_field(3, 2);
  auto a = HahnSeries::monomial(k, 0, k->from_int(1));
  auto b = HahnSeries::monomial(k, 0, k->from_int(2));
  auto s = hs_add(a, b, Exponent(5));
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.bound(), Bound(Exponent(5)));
}

TEST(HahnSeries, CarryIntoNextInteger) {
  auto k = make_field(3, 2);
  auto two = HahnSeries::monomial(k, 0, k->from_int(2));
  auto s = hs_add(two, two, Exponent(3));
  // [2] = -1, so [2] + [2] = -2 = 1 - 3 = [1] + [2] 3.
  ASSERT_EQ(s.digits().size(), 2u);
  EXPECT_EQ(s.digits()[0], (Digit{Exponent(0), k->from_int(1)}));
  EXPECT_EQ(s.digits()[1], (Digit{Exponent(1), k->from_int(2)}));
}

TEST(HahnSeries, ExactSumNeedsCap) {
  auto k = make_field(5, 2);
  auto a = HahnSeries::monomial(k, 0, k->from_int(1));
  EXPECT_THROW(hs_add(a, a), PrecisionError);
  // Disjoint supports add exactly.
  auto b = HahnSeries::monomial(k, Exponent(1, 3), k->g());
  auto s = hs_add(a, b);
  EXPECT_TRUE(s.is_exact());
  EXPECT_EQ(s.digits().size(), 2u);
}

TEST(HahnSeries, CoeffAtBeyondBound) {
  auto k = make_field(3, 2);
  auto a = HahnSeries(k, {{Exponent(1, 2), k->g()}}, Exponent(2));
  EXPECT_EQ(a.coeff_at(Exponent(1, 2)), k->g());
  EXPECT_EQ(a.coeff_at(Exponent(1)), k->zero());
  EXPECT_THROW(a.coeff_at(Exponent(2)), PrecisionError);
}

TEST(HahnSeries, InverseOfZeroFails) {
  auto k = make_field(3, 2);
  EXPECT_THROW(hs_inv(HahnSeries::zero(k)), DivisionByZero);
  EXPECT_THROW(hs_inv(HahnSeries::zero(k, Exponent(3))), PrecisionError);
}

class SeriesOracle : public ::testing::TestWithParam<int> {};

TEST_P(SeriesOracle, SumAndProductMatchPiRingModel) {
  int p = GetParam();
  auto k = make_field(p, 2);
  std::mt19937 rng(100 + p);
  for (std::int64_t e : {1, 2, 6}) {
    for (int it = 0; it < 25; ++it) {
      auto a = random_series(k, rng, e, 6, static_cast<int>(3 * e));
      auto b = random_series(k, rng, e, 6, static_cast<int>(3 * e));
      Exponent cap(4);
      PiRing pr(k, 8, e);
      auto s = hs_add(a, b, cap);
      expect_canonical(s);
      auto diff = pr.sub(pr.embed(s), pr.add(pr.embed(a), pr.embed(b)));
      EXPECT_GE(pr.valuation(diff), 4 * e);
      auto m = hs_mul(a, b, cap);
      expect_canonical(m);
      diff = pr.sub(pr.embed(m), pr.mul(pr.embed(a), pr.embed(b)));
      EXPECT_GE(pr.valuation(diff), 4 * e);
    }
  }
}

TEST_P(SeriesOracle, RingIdentities) {
  int p = GetParam();
  auto k = make_field(p, 2);
  std::mt19937 rng(200 + p);
  for (int it = 0; it < 20; ++it) {
    std::int64_t e = 6;
    auto a = random_series(k, rng, e, 5, 12);
    auto b = random_series(k, rng, e, 5, 12);
    auto c = random_series(k, rng, e, 5, 12);
    Exponent cap(3);
    EXPECT_EQ(hs_add(a, b, cap), hs_add(b, a, cap));
    EXPECT_EQ(hs_mul(a, b, cap), hs_mul(b, a, cap));
    auto lhs = hs_mul(a, hs_add(b, c, cap), cap);
    auto rhs = hs_add(hs_mul(a, b, cap), hs_mul(a, c, cap), cap);
    Bound common = min(lhs.bound(), rhs.bound());
    EXPECT_EQ(lhs.truncated(common), rhs.truncated(common));
    auto z = hs_add(a, hs_neg(a), cap);
    EXPECT_TRUE(z.is_zero());
  }
}

TEST_P(SeriesOracle, InverseAndPowers) {
  int p = GetParam();
  auto k = make_field(p, 2);
  std::mt19937 rng(300 + p);
  for (int it = 0; it < 20; ++it) {
    auto u = random_series(k, rng, 4, 5, 10, true);
    auto a = hs_mul(u, HahnSeries::monomial(k, Exponent(1, 2), k->g()));
    Exponent cap(3);
    auto ia = hs_inv(a, cap);
    expect_canonical(ia);
    EXPECT_EQ(ia.valuation(), Bound(Exponent(-1, 2)));
    auto one = hs_mul(a, ia, Exponent(5, 2));
    EXPECT_EQ(one, HahnSeries::one(k).truncated(one.bound()));
    EXPECT_GE(one.bound(), Bound(Exponent(5, 2)));
    // Square-and-multiply against repeated products.
    auto rep = HahnSeries::one(k);
    for (int i = 0; i < 7; ++i) rep = hs_mul(rep, a, cap);
    EXPECT_EQ(hs_int_pow(a, 7, cap), rep);
    // Negative powers.
    auto m2 = hs_int_pow(a, -2, Exponent(1));
    auto back = hs_mul(m2, hs_mul(a, a, Exponent(4)), Exponent(1));
    EXPECT_EQ(back, HahnSeries::one(k).truncated(back.bound()));
  }
}

TEST_P(SeriesOracle, BoundsFollowValuationRules) {
  int p = GetParam();
  auto k = make_field(p, 2);
  auto a = HahnSeries(k, {{Exponent(1, 2), k->one()}, {Exponent(1), k->g()}},
                      Exponent(2));
  auto b = HahnSeries(k, {{Exponent(1, 3), k->g()}}, Exponent(3, 2));
  EXPECT_EQ(hs_add(a, b).bound(), Bound(Exponent(3, 2)));
  // min(1/2 + 3/2, 1/3 + 2)
  EXPECT_EQ(hs_mul(a, b).bound(), Bound(Exponent(2)));
  // 2 - 2 * 1/2
  EXPECT_EQ(hs_inv(a).bound(), Bound(Exponent(1)));
  // 2 + 2 * 1/2
  EXPECT_EQ(hs_int_pow(a, 3).bound(), Bound(Exponent(3)));
}

TEST_P(SeriesOracle, RationalsAndBinomialSeries) {
  int p = GetParam();
  auto k = make_field(p, 2);
  Exponent cap(5);
  auto half = hs_from_rational(k, BigRational(1, 2), cap);
  auto two = hs_from_rational(k, BigRational(2), cap);
  EXPECT_EQ(hs_mul(half, two, cap), HahnSeries::one(k).truncated(cap));
  auto third = hs_from_rational(k, BigRational(2, p), cap);
  EXPECT_EQ(third.valuation(), Bound(Exponent(-1)));
  std::mt19937 rng(400 + p);
  for (int it = 0; it < 10; ++it) {
    auto w = random_series(k, rng, 6, 4, 12);
    std::vector<Digit> ds = w.digits();
    ds.erase(std::remove_if(ds.begin(), ds.end(),
                            [](const Digit& d) { return d.exp <= Exponent(0); }),
             ds.end());
    ds.push_back({Exponent(0), k->one()});
    HahnSeries u(k, ds, Exponent(3), 6);
    auto r = binomial_series(u, 1, 2);
    EXPECT_EQ(hs_mul(r, r), u.truncated(hs_mul(r, r).bound()));
    auto c = binomial_series(u, 2, 11);
    EXPECT_EQ(hs_int_pow(c, 11), hs_int_pow(u, 2).truncated(Exponent(3)));
  }
  auto bad = HahnSeries(k, {{Exponent(0), k->from_int(2)}}, Exponent(2));
  EXPECT_THROW(binomial_series(bad, 1, 2), InvalidInput);
  EXPECT_THROW(binomial_series(HahnSeries::one(k), 1, p), NonIntegralExponent);
}

INSTANTIATE_TEST_SUITE_P(Primes, SeriesOracle, ::testing::Values(3, 5, 7));

}  // namespace
}  // namespace mnfield
