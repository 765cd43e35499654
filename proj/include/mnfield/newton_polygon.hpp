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

#ifndef MNFIELD_NEWTON_POLYGON_HPP
#define MNFIELD_NEWTON_POLYGON_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "mnfield/hahn_series.hpp"

namespace mnfield {

// P = a_0 T^n + a_1 T^{n-1} + ... + a_n; coeffs[i] is a_i.
struct PolySeries {
  FieldPtr field;
  std::vector<HahnSeries> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  // Coefficient of T^k.
  const HahnSeries& coeff_of_power(int k) const {
    return coeffs.at(static_cast<std::size_t>(degree() - k));
  }

  // Builds P from coefficients listed by power of T, lowest power first.
  static PolySeries from_powers(FieldPtr k, std::vector<HahnSeries> by_power) {
    PolySeries p{std::move(k), {}};
    p.coeffs.assign(by_power.rbegin(), by_power.rend());
    return p;
  }

  friend bool operator==(const PolySeries& a, const PolySeries& b) {
    return a.coeffs == b.coeffs;
  }
};

struct PolygonVertex {
  std::int64_t index;
  Bound value;

  friend bool operator==(const PolygonVertex& a, const PolygonVertex& b) {
    return a.index == b.index && a.value == b.value;
  }
};

// Lower convex hull of (i, v(a_i)); a last vertex at +inf means a_n = 0.
struct Polygon {
  int degree = 0;
  std::vector<PolygonVertex> vertices;

  // Largest breakpoint strictly below the degree.
  std::int64_t m_max() const {
    if (vertices.size() < 2) throw InvalidInput("polygon has no segment");
    return vertices[vertices.size() - 2].index;
  }

  // Slope of the last segment; +inf when a_n = 0.
  Bound s_max() const { return slope(vertices.size() - 2); }

  Bound slope(std::size_t seg) const {
    const auto& a = vertices.at(seg);
    const auto& b = vertices.at(seg + 1);
    if (b.value.is_infinite()) return Bound::infinity();
    return (b.value.value() - a.value.value()) /
           Exponent(b.index - a.index);
  }

  std::vector<Bound> slopes() const {
    std::vector<Bound> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) out.push_back(slope(i));
    return out;
  }

  // Height of the polygon above integer abscissa x in [0, degree].
  Bound value_at(std::int64_t x) const {
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[i + 1];
      if (x == a.index) return a.value;
      if (x < b.index) {
        if (b.value.is_infinite()) return Bound::infinity();
        return a.value.value() + Exponent(x - a.index) *
                                     slope(i).value();
      }
    }
    return vertices.back().value;
  }

  bool is_breakpoint(std::int64_t x) const {
    return std::any_of(vertices.begin(), vertices.end(),
                       [x](const PolygonVertex& v) { return v.index == x; });
  }
};

namespace detail {

struct HullPoint {
  std::int64_t x;
  Exponent y;
};

// Cross product sign of (a - o) x (b - o).
inline int turn(const HullPoint& o, const HullPoint& a, const HullPoint& b) {
  Exponent lhs = Exponent(a.x - o.x) * (b.y - o.y);
  Exponent rhs = (a.y - o.y) * Exponent(b.x - o.x);
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

inline std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
  std::vector<HullPoint> h;
  for (const auto& pt : pts) {
    while (h.size() >= 2 && turn(h[h.size() - 2], h.back(), pt) <= 0) {
      h.pop_back();
    }
    h.push_back(pt);
  }
  return h;
}

}  // namespace detail

// Hull of the known points. When allow_unknown_tail is set, a constant term
// known only to be >= its bound is placed at its bound, which gives a lower
// estimate of the last slope.
inline Polygon polygon_of(const PolySeries& p, bool allow_unknown_tail = false) {
  int n = p.degree();
  if (n < 1) throw InvalidInput("polygon needs degree >= 1");
  const HahnSeries& lead = p.coeffs[0];
  if (lead.is_zero()) {
    if (lead.is_exact()) throw InvalidInput("leading coefficient is zero");
    throw PrecisionError("leading coefficient has unknown valuation");
  }
  std::vector<detail::HullPoint> pts;
  std::vector<std::int64_t> unknown;
  bool tail_zero = false;
  for (int i = 0; i <= n; ++i) {
    const HahnSeries& a = p.coeffs[i];
    if (!a.is_zero()) {
      pts.push_back({i, a.leading().exp});
    } else if (!a.is_exact()) {
      if (i == n && allow_unknown_tail) {
        pts.push_back({i, a.bound().value()});
      } else {
        unknown.push_back(i);
      }
    } else if (i == n) {
      tail_zero = true;
    }
  }
  auto hull = detail::lower_hull(pts);
  Polygon poly;
  poly.degree = n;
  for (const auto& h : hull) poly.vertices.push_back({h.x, h.y});
  if (tail_zero) poly.vertices.push_back({n, Bound::infinity()});
  if (poly.vertices.size() < 2) {
    throw PrecisionError("constant term has unknown valuation");
  }
  for (std::int64_t i : unknown) {
    // Harmless when the true point, at or above its bound, cannot dip
    // below the hull.
    if (i == n || poly.value_at(i) > p.coeffs[i].bound()) {
      throw PrecisionError("valuation of a_" + std::to_string(i) +
                           " is not known to the needed precision");
    }
  }
  return poly;
}

struct ResidueData {
  std::int64_t m_max = 0;
  Exponent s_max;
  Exponent v_m;  // valuation of a_{m_max}
  FqPoly poly;   // lowest degree first, degree n - m_max
};

inline ResidueData residue_poly(const PolySeries& p, const Polygon& poly) {
  Bound s = poly.s_max();
  if (s.is_infinite()) {
    throw InvalidInput("residue polynomial of a polynomial with root 0");
  }
  int n = p.degree();
  ResidueData r;
  r.m_max = poly.m_max();
  r.s_max = s.value();
  r.v_m = p.coeffs[r.m_max].leading().exp;
  std::int64_t len = n - r.m_max;
  r.poly.assign(static_cast<std::size_t>(len + 1), p.field->zero());
  for (std::int64_t kk = 0; kk <= len; ++kk) {
    const HahnSeries& a = p.coeffs[n - kk];
    Exponent x = r.v_m + r.s_max * Exponent(len - kk);
    if (a.is_zero() && a.is_exact()) continue;
    r.poly[kk] = a.coeff_at(x);
  }
  return r;
}

inline ResidueData residue_poly(const PolySeries& p) {
  return residue_poly(p, polygon_of(p));
}

// P(T + [c] p^s) by a Taylor shift on raw coefficients. Exact inputs are
// truncated at cap.
inline PolySeries shift_poly(const PolySeries& p, FqElem c, const Exponent& s,
                             const Bound& cap = {}) {
  const FieldPtr& k = p.field;
  int n = p.degree();
  if (c.is_zero()) {
    PolySeries out = p;
    for (auto& a : out.coeffs) a = a.truncated(cap);
    return out;
  }
  std::int64_t lattice = s.den();
  for (const auto& a : p.coeffs) lattice = lcm_checked(lattice, a.lattice());
  std::vector<Bound> bounds(n + 1);
  for (int i = 0; i <= n; ++i) {
    Bound b = cap;
    for (int j = 0; j <= i; ++j) {
      b = min(b, p.coeffs[i - j].bound() + Bound(s * Exponent(j)));
    }
    if (b.is_infinite()) throw PrecisionError("exact shift needs a finite cap");
    bounds[i] = b;
  }
  std::int64_t low = INT64_MAX;
  for (const auto& a : p.coeffs) {
    if (!a.is_zero()) low = std::min(low, a.leading().exp.on_lattice(lattice));
  }
  std::int64_t jend = INT64_MIN;
  for (const auto& b : bounds) {
    jend = std::max(jend, ceil_index(b.value(), lattice));
  }
  if (low == INT64_MAX) low = jend;
  std::int64_t sj = s.on_lattice(lattice);
  std::int64_t j0 = low + std::min<std::int64_t>(0, sj * n);
  j0 = std::min(j0, jend);
  auto ring = k->ring(precision_for(*k, lattice, j0, jend));
  std::vector<RawSeries> raw;
  raw.reserve(n + 1);
  for (const auto& a : p.coeffs) raw.push_back(to_raw(a, ring, lattice, j0, jend));
  const u64* t = ring->teich_ptr(c);
  for (int i = 0; i < n; ++i) {
    for (int kk = 1; kk <= n - i; ++kk) raw_axpy(raw[kk], raw[kk - 1], t, sj);
  }
  PolySeries out{k, {}};
  for (int i = 0; i <= n; ++i) {
    out.coeffs.push_back(
        canonicalize(std::move(raw[i]), k, bounds[i]).with_lattice(lattice));
  }
  return out;
}

// P(x) by Horner's rule.
inline HahnSeries poly_eval(const PolySeries& p, const HahnSeries& x,
                            const Bound& cap) {
  HahnSeries acc = p.coeffs[0].truncated(cap);
  for (int i = 1; i <= p.degree(); ++i) {
    acc = hs_add(hs_mul(acc, x, cap), p.coeffs[i], cap);
  }
  return acc;
}

// Vertex list as "index<TAB>value" lines, with "inf" for the point at
// infinity.
inline std::string polygon_tsv(const Polygon& poly) {
  std::ostringstream os;
  for (const auto& v : poly.vertices) {
    os << v.index << '\t' << v.value.str() << '\n';
  }
  return os.str();
}

inline std::string polygon_svg(const PolySeries& p, const Polygon& poly) {
  const int w = 480, h = 320, pad = 40;
  double ymax = 1;
  for (const auto& a : p.coeffs) {
    if (!a.is_zero()) {
      const Exponent& e = a.leading().exp;
      ymax = std::max(ymax, static_cast<double>(e.num()) / e.den());
    }
  }
  int n = std::max(1, p.degree());
  auto sx = [&](double x) { return pad + x * (w - 2 * pad) / n; };
  auto sy = [&](double y) { return h - pad - y * (h - 2 * pad) / ymax; };
  auto val = [](const Exponent& e) {
    return static_cast<double>(e.num()) / e.den();
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\">\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad
     << "\" y2=\"" << h - pad << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << pad
     << "\" y2=\"" << pad << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= n; ++i) {
    for (int y = 0; y <= static_cast<int>(ymax); ++y) {
      os << "<circle cx=\"" << sx(i) << "\" cy=\"" << sy(y)
         << "\" r=\"1\" fill=\"lightgray\"/>\n";
    }
  }
  for (int i = 0; i <= p.degree(); ++i) {
    const auto& a = p.coeffs[i];
    if (a.is_zero()) continue;
    os << "<circle cx=\"" << sx(i) << "\" cy=\"" << sy(val(a.leading().exp))
       << "\" r=\"3\" fill=\"gray\"/>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"blue\" points=\"";
  for (const auto& v : poly.vertices) {
    if (v.value.is_infinite()) continue;
    os << sx(static_cast<double>(v.index)) << ',' << sy(val(v.value.value()))
       << ' ';
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace mnfield

#endif  // MNFIELD_NEWTON_POLYGON_HPP
