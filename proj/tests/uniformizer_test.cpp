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

#include "mnfield/uniformizer.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mnfield {
namespace {

TEST(Uniformizer1m, Valuations) {
  EXPECT_EQ(uniformizer_1m(3, 1).valuation, Exponent(1, 6));
  EXPECT_EQ(uniformizer_1m(3, 0).valuation, Exponent(1, 2));
  for (int p : {3, 5}) {
    for (int m = 0; m <= 3; ++m) {
      auto r = uniformizer_1m(p, m);
      // e v = 1 with e = p^m (p-1).
      std::int64_t e = p - 1;
      for (int i = 0; i < m; ++i) e *= p;
      EXPECT_EQ(r.valuation * Exponent(e), Exponent(1)) << p << "," << m;
      EXPECT_TRUE(r.pass);
    }
  }
  EXPECT_THROW(uniformizer_1m(3, -1), InvalidInput);
}

TEST(Uniformizer2m, Valuations) {
  EXPECT_EQ(uniformizer_2m(3, 1).valuation, Exponent(1, 18));
  EXPECT_EQ(uniformizer_2m(3, 2).valuation, Exponent(1, 54));
  EXPECT_EQ(uniformizer_2m(5, 1).valuation, Exponent(1, 100));
  for (int p : {3, 5}) {
    for (int m = 1; m <= 3; ++m) {
      auto r = uniformizer_2m(p, m);
      EXPECT_TRUE(r.sharp) << p << "," << m;
      EXPECT_TRUE(r.pass) << p << "," << m;
      EXPECT_EQ(r.valuation, r.expected_valuation);
    }
  }
  EXPECT_THROW(uniformizer_2m(3, 0), InvalidInput);
}

TEST(Uniformizer2m, SubtractionsRaiseTheValuation) {
  auto r = uniformizer_2m(5, 2);
  for (std::size_t i = 1; i < r.intermediate_valuations.size(); ++i) {
    EXPECT_LT(r.intermediate_valuations[i - 1], r.intermediate_valuations[i]);
  }
}

TEST(Bezout, Examples) {
  EXPECT_EQ(bezout_combine(Exponent(1, 6), {Exponent(1, 2), Exponent(1, 3)}),
            (std::vector<std::int64_t>{1, -1}));
  EXPECT_EQ(bezout_combine(Exponent(2, 7), {Exponent(2, 7)}),
            (std::vector<std::int64_t>{1}));
  EXPECT_THROW(bezout_combine(Exponent(1, 4), {Exponent(1, 2), Exponent(1, 3)}),
               NoSolution);
  EXPECT_THROW(bezout_combine(Exponent(1), {}), InvalidInput);
}

TEST(Bezout, RandomCombinationsHitTheTarget) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Exponent> gens;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      gens.push_back(Exponent(static_cast<std::int64_t>(rng() % 40) - 20,
                              1 + static_cast<std::int64_t>(rng() % 30)));
    }
    // A target inside the span.
    Exponent target(0);
    for (const auto& g : gens) {
      target = target + g * Exponent(static_cast<std::int64_t>(rng() % 11) - 5);
    }
    auto e = bezout_combine(target, gens);
    ASSERT_EQ(e.size(), gens.size());
    Exponent sum(0);
    for (std::size_t i = 0; i < e.size(); ++i) sum = sum + gens[i] * Exponent(e[i]);
    EXPECT_EQ(sum, target) << "trial " << trial;
  }
}

// Recomputes z_{n+1} from z_n by plain repeated multiplication.
HahnSeries next_z(const HahnSeries& z, int n, int p, const Bound& cap) {
  const FieldPtr& k = z.field();
  HahnSeries pw = HahnSeries::one(k);
  for (int i = 0; i < p - 1; ++i) pw = hs_mul(pw, z, cap);
  if (n == 1) {
    pw = hs_add(pw, HahnSeries::monomial(k, Exponent(1, p), k->one()), cap);
    return hs_sub(pw, HahnSeries::monomial(k, Exponent(2 * p - 1, p * p), k->one()),
                  cap);
  }
  Digit lead = z.leading();
  FqElem c = k->pow(lead.coeff, p - 1);
  return hs_sub(pw, HahnSeries::monomial(k, lead.exp * Exponent(p - 1), c), cap);
}

TEST(Lampert, ThreeAndFive) {
  for (int p : {3, 5}) {
    auto tr = lampert_sequence(p, 2 * p);
    ASSERT_TRUE(tr.found) << p << ": " << tr.stop_reason;
    EXPECT_LE(tr.terminal_index, 2 * p);
    const auto& last = tr.steps.back();
    EXPECT_EQ(last.index, tr.terminal_index);
    // p^3 (p-1) v = -p+1 mod p^2.
    Exponent scaled = last.valuation * Exponent(p * p * p * (p - 1));
    ASSERT_EQ(scaled.den(), 1);
    std::int64_t mod = p * p;
    EXPECT_EQ(((scaled.num() - (1 - p)) % mod + mod) % mod, 0);
    // The Bezout exponents give valuation 1/(p^3 (p-1)).
    ASSERT_EQ(tr.bezout.size(), 3u);
    Exponent v = last.valuation * Exponent(tr.bezout[0]) +
                 Exponent(tr.bezout[1], p) +
                 Exponent(tr.bezout[2], p * (p - 1));
    EXPECT_EQ(v, Exponent(1, p * p * p * (p - 1)));
  }
  auto t3 = lampert_sequence(3);
  ASSERT_TRUE(t3.found);
  EXPECT_EQ(t3.terminal_index, 2);
  EXPECT_EQ(t3.steps.back().valuation, Exponent(17, 27));
  EXPECT_EQ(t3.bezout, (std::vector<std::int64_t>{4, 0, -15}));
}

TEST(Lampert, StepsMatchRecomputation) {
  for (int p : {3, 5}) {
    auto tr = lampert_sequence(p, 2 * p);
    ASSERT_FALSE(tr.steps.empty());
    const HahnSeries& z1 = tr.steps[0].z;
    const FieldPtr& k = z1.field();
    auto zeta = zeta_pn_expand(p, 2, tr.zeta_digits);
    HahnSeries want1 = hs_sub(
        hs_sub(zeta.digits, HahnSeries::one(k)),
        HahnSeries::monomial(k, Exponent(1, p), k->one()));
    EXPECT_EQ(z1, want1);
    EXPECT_EQ(tr.steps[0].valuation, Exponent(1, p * (p - 1)));
    for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i) {
      const HahnSeries& got = tr.steps[i + 1].z;
      HahnSeries want = next_z(tr.steps[i].z, static_cast<int>(i) + 1, p,
                               got.bound());
      Bound b = min(got.bound(), want.bound());
      EXPECT_EQ(got.truncated(b), want.truncated(b)) << p << " step " << i + 2;
    }
  }
}

TEST(Lampert, SevenTraceShape) {
  auto tr = lampert_sequence(7);
  ASSERT_TRUE(tr.found) << tr.stop_reason;
  EXPECT_EQ(tr.terminal_index, 7);
  ASSERT_EQ(tr.steps.size(), 7u);
  // z_{n+1} = z_n^6 + 7^{6 v(z_n)} for n = 2..6 with exponents
  // 1, 43/7, 37, 1555/7, 1333.
  std::vector<Exponent> added = {Exponent(1), Exponent(43, 7), Exponent(37),
                                 Exponent(1555, 7), Exponent(1333)};
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto& st = tr.steps[n - 1];
    EXPECT_EQ(st.valuation * Exponent(6), added[n - 2]) << n;
    const FieldCtx& k = *st.z.field();
    // The subtracted Teichmueller term is -1 times a power of 7.
    EXPECT_EQ(k.pow(st.z.leading().coeff, 6), k.from_int(-1)) << n;
  }
  EXPECT_EQ(tr.steps[6].valuation, Exponent(2743357, 2058));
  EXPECT_EQ(tr.bezout, (std::vector<std::int64_t>{8, 0, -447895}));
}

TEST(Lampert, ArgumentChecks) {
  EXPECT_THROW(lampert_sequence(3, 0), InvalidInput);
  EXPECT_THROW(lampert_sequence(3, -2), InvalidInput);
  EXPECT_THROW(lampert_sequence(9), InvalidPrime);
}

TEST(Lampert, StepCapIsNotFound) {
  auto tr = lampert_sequence(5, 1);
  EXPECT_FALSE(tr.found);
  EXPECT_EQ(tr.steps.size(), 1u);
  EXPECT_EQ(tr.stop_reason, "step cap reached");
}

}  // namespace
}  // namespace mnfield
