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

#include "mnfield/newton_polygon.hpp"

#include <gtest/gtest.h>

#include <random>

#include "mnfield/cyclotomic.hpp"

namespace mnfield {
namespace {

FieldPtr f9() { return make_field(3, 2); }

HahnSeries mono(const FieldPtr& k, Exponent x, FqElem c) {
  return HahnSeries::monomial(k, x, c);
}

std::vector<PolygonVertex> verts(const Polygon& p) { return p.vertices; }

TEST(PolygonOf, Phi9IsFlat) {
  auto k = f9();
  Polygon poly = polygon_of(cyclotomic_poly(k, 2));
  std::vector<PolygonVertex> want = {{0, Exponent(0)}, {6, Exponent(0)}};
  EXPECT_EQ(verts(poly), want);
  EXPECT_EQ(poly.m_max(), 0);
  EXPECT_EQ(poly.s_max(), Bound(Exponent(0)));
}

TEST(PolygonOf, ShiftedPhi9HasOneSegment) {
  auto k = f9();
  PolySeries q = shift_poly(cyclotomic_poly(k, 2), k->one(), Exponent(0),
                            Exponent(3));
  Polygon poly = polygon_of(q);
  std::vector<PolygonVertex> want = {{0, Exponent(0)}, {6, Exponent(1)}};
  EXPECT_EQ(verts(poly), want);
  EXPECT_EQ(poly.m_max(), 0);
  EXPECT_EQ(poly.s_max(), Bound(Exponent(1, 6)));
}

TEST(PolygonOf, ZeroConstantTermGivesInfinity) {
  auto k = f9();
  // T^2 - 3T
  PolySeries p = PolySeries::from_powers(
      k, {HahnSeries::zero(k), mono(k, Exponent(1), k->from_int(-1)),
          HahnSeries::one(k)});
  Polygon poly = polygon_of(p);
  std::vector<PolygonVertex> want = {
      {0, Exponent(0)}, {1, Exponent(1)}, {2, Bound::infinity()}};
  EXPECT_EQ(verts(poly), want);
  EXPECT_TRUE(poly.s_max().is_infinite());
  EXPECT_THROW(residue_poly(p, poly), InvalidInput);
}

TEST(PolygonOf, CollinearInteriorPointsAreNotVertices) {
  auto k = f9();
  // T^2 + 3^{1/2} T + 3: the middle point lies on the chord.
  PolySeries p = PolySeries::from_powers(
      k, {mono(k, Exponent(1), k->one()), mono(k, Exponent(1, 2), k->one()),
          HahnSeries::one(k)});
  std::vector<PolygonVertex> want = {{0, Exponent(0)}, {2, Exponent(1)}};
  EXPECT_EQ(verts(polygon_of(p)), want);
}

TEST(PolygonOf, RejectsZeroLeadingCoefficient) {
  auto k = f9();
  PolySeries p = PolySeries::from_powers(k, {HahnSeries::one(k),
                                             HahnSeries::zero(k)});
  EXPECT_THROW(polygon_of(p), InvalidInput);
}

TEST(ResiduePoly, Phi9) {
  auto k = f9();
  ResidueData r = residue_poly(cyclotomic_poly(k, 2));
  FqPoly want(7, k->zero());
  want[0] = want[3] = want[6] = k->one();
  EXPECT_EQ(r.poly, want);
}

TEST(ResiduePoly, ShiftedPhi9) {
  auto k = f9();
  PolySeries q = shift_poly(cyclotomic_poly(k, 2), k->one(), Exponent(0),
                            Exponent(3));
  ResidueData r = residue_poly(q);
  FqPoly want(7, k->zero());
  want[0] = want[6] = k->one();
  EXPECT_EQ(r.poly, want);
  EXPECT_EQ(static_cast<std::int64_t>(r.poly.size()) - 1, 6 - r.m_max);
}

TEST(ShiftPoly, Phi9AtOneHasConstantTermThree) {
  auto k = f9();
  PolySeries q = shift_poly(cyclotomic_poly(k, 2), k->one(), Exponent(0),
                            Exponent(4));
  const HahnSeries& c = q.coeff_of_power(0);
  EXPECT_EQ(c.valuation(), Bound(Exponent(1)));
  // 3 = [1] 3 exactly.
  EXPECT_EQ(c, HahnSeries(k, {{Exponent(1), k->one()}}, Exponent(4)));
}

TEST(ShiftPoly, ZeroShiftIsIdentity) {
  auto k = f9();
  PolySeries p = cyclotomic_poly(k, 2);
  EXPECT_EQ(shift_poly(p, k->zero(), Exponent(1, 3)), p);
}

// Lower envelope by brute force: a finite point is a vertex iff it lies
// strictly below every chord between finite points on either side.
std::vector<PolygonVertex> brute_vertices(const PolySeries& p) {
  int n = p.degree();
  std::vector<std::pair<std::int64_t, Exponent>> pts;
  for (int i = 0; i <= n; ++i) {
    if (!p.coeffs[i].is_zero()) pts.push_back({i, p.coeffs[i].leading().exp});
  }
  std::vector<PolygonVertex> out;
  for (std::size_t b = 0; b < pts.size(); ++b) {
    bool vertex = true;
    for (std::size_t a = 0; a < b && vertex; ++a) {
      for (std::size_t c = b + 1; c < pts.size() && vertex; ++c) {
        Exponent chord = pts[a].second + (pts[c].second - pts[a].second) *
                                             Exponent(pts[b].first - pts[a].first) /
                                             Exponent(pts[c].first - pts[a].first);
        if (!(pts[b].second < chord)) vertex = false;
      }
    }
    if (vertex) out.push_back({pts[b].first, pts[b].second});
  }
  if (p.coeffs[n].is_zero()) out.push_back({n, Bound::infinity()});
  return out;
}

PolySeries random_poly(const FieldPtr& k, std::mt19937_64& rng, int n,
                       bool zero_constant) {
  std::vector<HahnSeries> by_power;
  for (int i = 0; i <= n; ++i) {
    if (i != n && i != 0 && rng() % 4 == 0) {
      by_power.push_back(HahnSeries::zero(k));
      continue;
    }
    std::vector<Digit> ds;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Exponent x(static_cast<std::int64_t>(rng() % 7), 2);
      FqElem c{static_cast<std::uint32_t>(1 + rng() % (k->q() - 1))};
      bool dup = false;
      for (const auto& d : ds) dup = dup || d.exp == x;
      if (!dup) ds.push_back({x, c});
    }
    by_power.push_back(HahnSeries(k, ds));
  }
  if (zero_constant) by_power[0] = HahnSeries::zero(k);
  return PolySeries::from_powers(k, std::move(by_power));
}

TEST(PolygonOf, MatchesBruteForceHull) {
  auto k = f9();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    PolySeries p = random_poly(k, rng, n, trial % 10 == 0);
    Polygon poly = polygon_of(p);
    EXPECT_EQ(verts(poly), brute_vertices(p)) << "trial " << trial;
    auto sl = poly.slopes();
    for (std::size_t i = 1; i < sl.size(); ++i) EXPECT_LT(sl[i - 1], sl[i]);
  }
}

// P(T + [c] p^s) expanded term by term with hs_mul.
PolySeries expand_shift(const PolySeries& p, FqElem c, Exponent s,
                        Exponent cap) {
  const FieldPtr& k = p.field;
  int n = p.degree();
  std::vector<HahnSeries> out(n + 1, HahnSeries::zero(k, cap));
  HahnSeries cs = mono(k, s, c);
  for (int j = 0; j <= n; ++j) {
    const HahnSeries& a = p.coeff_of_power(j);
    // a (T + cs)^j = sum_k C(j,k) a cs^{j-k} T^k
    for (int kk = 0; kk <= j; ++kk) {
      HahnSeries term = a.truncated(cap);
      for (int r = 0; r < j - kk; ++r) term = hs_mul(term, cs, cap);
      term = hs_scale(term, BigRational(binomial(j, kk)), cap);
      out[kk] = hs_add(out[kk], term, cap);
    }
  }
  return PolySeries::from_powers(k, std::move(out));
}

TEST(ShiftPoly, MatchesTermwiseExpansion) {
  for (int p : {3, 5}) {
    auto k = make_field(p, 2);
    std::mt19937_64 rng(11 + p);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 1 + static_cast<int>(rng() % 4);
      PolySeries P = random_poly(k, rng, n, false);
      FqElem c{static_cast<std::uint32_t>(rng() % k->q())};
      Exponent s(static_cast<std::int64_t>(rng() % 4), 3);
      Exponent cap(4);
      PolySeries got = shift_poly(P, c, s, cap);
      PolySeries want = expand_shift(P, c, s, cap);
      ASSERT_EQ(got.degree(), want.degree());
      for (int i = 0; i <= n; ++i) {
        Bound b = min(got.coeffs[i].bound(), want.coeffs[i].bound());
        EXPECT_EQ(got.coeffs[i].truncated(b), want.coeffs[i].truncated(b))
            << "p=" << p << " trial " << trial << " coeff " << i;
        EXPECT_EQ(b, Bound(cap));
      }
    }
  }
}

TEST(ShiftPoly, PolygonAboveSlopeIsStable) {
  auto k = f9();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    PolySeries P = random_poly(k, rng, n, false);
    Polygon poly = polygon_of(P);
    Bound smax = poly.s_max();
    Exponent s = smax.value() + Exponent(1, 2);
    FqElem c{static_cast<std::uint32_t>(1 + rng() % (k->q() - 1))};
    PolySeries Q = shift_poly(P, c, s, Exponent(8));
    Polygon q = polygon_of(Q);
    // s is above every slope, so every vertex keeps its leading term.
    EXPECT_EQ(verts(q), verts(poly)) << "trial " << trial;
  }
}

TEST(PolygonExport, TsvAndSvg) {
  auto k = f9();
  PolySeries p = PolySeries::from_powers(
      k, {HahnSeries::zero(k), mono(k, Exponent(1), k->from_int(-1)),
          HahnSeries::one(k)});
  Polygon poly = polygon_of(p);
  EXPECT_EQ(polygon_tsv(poly), "0\t0/1\n1\t1/1\n2\tinf\n");
  std::string svg = polygon_svg(p, poly);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace mnfield
