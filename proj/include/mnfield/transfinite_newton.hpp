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

#ifndef MNFIELD_TRANSFINITE_NEWTON_HPP
#define MNFIELD_TRANSFINITE_NEWTON_HPP

#include <optional>
#include <string>
#include <vector>

#include "mnfield/newton_polygon.hpp"

namespace mnfield {

enum class RootPolicyKind { kCanonicalCyclotomic, kExplicit, kLexMin };

// How a root of the residue polynomial is picked at each step.
struct RootPolicy {
  RootPolicyKind kind = RootPolicyKind::kLexMin;
  int level = 0;  // n in Phi_{p^n}, for the cyclotomic policy
  // Explicit choices per step; an empty entry, or a step past the end of
  // the list, takes the unique root.
  std::vector<std::optional<FqElem>> roots;

  // Step 0 takes 1, step 1 takes (-1)^n zeta_{2(p-1)}, later steps the
  // unique root.
  static RootPolicy canonical_cyclotomic(int n) {
    RootPolicy r;
    r.kind = RootPolicyKind::kCanonicalCyclotomic;
    r.level = n;
    return r;
  }
  static RootPolicy explicit_roots(std::vector<std::optional<FqElem>> roots) {
    RootPolicy r;
    r.kind = RootPolicyKind::kExplicit;
    r.roots = std::move(roots);
    return r;
  }
  // Smallest root in code order.
  static RootPolicy lexmin() { return RootPolicy{}; }
};

enum class ExpansionStatus {
  kBudgetReached,
  kExactRoot,
  kPrecisionExhausted,
  kNoRootInField,
};

inline std::string to_string(ExpansionStatus s) {
  switch (s) {
    case ExpansionStatus::kBudgetReached: return "budget-reached";
    case ExpansionStatus::kExactRoot: return "exact-root";
    case ExpansionStatus::kPrecisionExhausted: return "precision-exhausted";
    case ExpansionStatus::kNoRootInField: return "no-root-in-field";
  }
  return "unknown";
}

inline ExpansionStatus expansion_status_from_string(const std::string& s) {
  if (s == "budget-reached") return ExpansionStatus::kBudgetReached;
  if (s == "exact-root") return ExpansionStatus::kExactRoot;
  if (s == "precision-exhausted") return ExpansionStatus::kPrecisionExhausted;
  if (s == "no-root-in-field") return ExpansionStatus::kNoRootInField;
  throw InvalidInput("unknown expansion status '" + s + "'");
}

struct NewtonStep {
  Exponent slope;
  std::int64_t m_max = 0;
  FqPoly residue;
  FqElem root;
  int multiplicity = 0;
};

struct ExpansionReport {
  HahnSeries digits;
  ExpansionStatus status = ExpansionStatus::kBudgetReached;
  std::vector<NewtonStep> trace;
  // Working precision of the coefficients in the final attempt.
  Exponent working_precision;
  // Set when the run stopped because the precision cap was reached rather
  // than because the next digit lies at or above the requested bound.
  bool capacity_limited = false;
};

struct NewtonOptions {
  std::optional<Exponent> initial_precision;
  Exponent precision_step = Exponent(1);
  Exponent max_precision = Exponent(16);
};

inline FqElem choose_root(const FieldCtx& k, const RootPolicy& policy, int step,
                          const std::vector<std::pair<FqElem, int>>& roots,
                          int& multiplicity) {
  auto find = [&](FqElem c) {
    for (const auto& [r, m] : roots) {
      if (r == c) {
        multiplicity = m;
        return c;
      }
    }
    throw NoSuchRoot(k.format(c) + " is not a root of the residue polynomial");
  };
  auto unique = [&] {
    if (roots.size() != 1) {
      throw NoSuchRoot("residue polynomial has " +
                       std::to_string(roots.size()) + " distinct roots");
    }
    multiplicity = roots[0].second;
    return roots[0].first;
  };
  switch (policy.kind) {
    case RootPolicyKind::kLexMin:
      multiplicity = roots.front().second;
      return roots.front().first;
    case RootPolicyKind::kCanonicalCyclotomic: {
      if (step == 0) return find(k.one());
      if (step == 1) {
        FqElem z = k.primitive_root_of_order(2 * (k.p() - 1));
        if (policy.level % 2 != 0) z = k.neg(z);
        return find(z);
      }
      return unique();
    }
    case RootPolicyKind::kExplicit: {
      if (step < static_cast<int>(policy.roots.size()) && policy.roots[step]) {
        return find(*policy.roots[step]);
      }
      return unique();
    }
  }
  return unique();
}

struct StepOutcome {
  NewtonStep step;
  PolySeries next;
};

// One step: polygon, residue polynomial, root choice and shift.
inline StepOutcome newton_step(const PolySeries& p, const RootPolicy& policy,
                               int step_index, const Bound& cap) {
  const FieldCtx& k = *p.field;
  Polygon poly = polygon_of(p);
  ResidueData res = residue_poly(p, poly);
  auto roots = fq_roots(k, res.poly);
  if (roots.empty()) throw NoRootInField("residue polynomial has no root");
  StepOutcome out;
  out.step.slope = res.s_max;
  out.step.m_max = res.m_max;
  out.step.residue = res.poly;
  out.step.root = choose_root(k, policy, step_index, roots,
                              out.step.multiplicity);
  out.next = shift_poly(p, out.step.root, res.s_max, cap);
  return out;
}

namespace detail {

struct Attempt {
  std::vector<Digit> digits;
  std::vector<NewtonStep> trace;
  ExpansionStatus status = ExpansionStatus::kBudgetReached;
  bool need_precision = false;
  bool capacity_hit = false;
  // Order up to which the digits describe the root.
  Bound next_bound = Bound(Exponent(0));
};

inline bool all_exact(const PolySeries& p) {
  for (const auto& a : p.coeffs) {
    if (!a.is_exact()) return false;
  }
  return true;
}

// Last slope with an unknown constant term placed at its order bound, which
// is a lower bound for the valuation of the remaining part of the root.
inline Bound lower_slope(const PolySeries& p) {
  try {
    return polygon_of(p, true).s_max();
  } catch (const Error&) {
    return Exponent(0);
  }
}

// For exact P and an exact finite prefix x, every exponent of P(x) lies
// below the cap used here, so the capped value is P(x) itself.
inline bool vanishes_exactly(const PolySeries& p, const std::vector<Digit>& ds) {
  int n = p.degree();
  if (ds.empty()) return p.coeffs[n].is_zero();
  HahnSeries x(p.field, ds);
  Exponent xmax = ds.back().exp;
  std::optional<Exponent> top;
  for (int i = 0; i <= n; ++i) {
    if (p.coeffs[i].is_zero()) continue;
    Exponent t = p.coeffs[i].digits().back().exp + Exponent(n - i) * xmax;
    if (!top || *top < t) top = t;
  }
  if (!top) return true;
  try {
    return poly_eval(p, x, *top + Exponent(1)).is_zero();
  } catch (const PrecisionError&) {
    return false;
  }
}

inline Attempt newton_attempt(const PolySeries& p0, const RootPolicy& policy,
                              int max_digits, const Bound& root_bound,
                              const Exponent& w) {
  Attempt at;
  PolySeries p = p0;
  for (auto& a : p.coeffs) {
    if (!a.is_zero() || !a.is_exact()) a = a.truncated(w);
  }
  bool exact_input = all_exact(p0);
  int n = p.degree();
  auto finish = [&](ExpansionStatus st, Bound nb) {
    at.status = st;
    at.next_bound = nb;
    return at;
  };
  for (int step = 0;; ++step) {
    if (static_cast<int>(at.digits.size()) >= max_digits) {
      return finish(ExpansionStatus::kBudgetReached,
                    min(lower_slope(p), root_bound));
    }
    const HahnSeries& cst = p.coeffs[n];
    if (cst.is_zero()) {
      if (cst.is_exact()) return finish(ExpansionStatus::kExactRoot, Bound());
      if (exact_input && vanishes_exactly(p0, at.digits)) {
        return finish(ExpansionStatus::kExactRoot, Bound());
      }
      Bound lower = lower_slope(p);
      if (lower >= root_bound) {
        return finish(exact_input ? ExpansionStatus::kExactRoot
                                  : ExpansionStatus::kPrecisionExhausted,
                      lower);
      }
      at.need_precision = true;
      at.next_bound = lower;
      return at;
    }
    Bound s_now = Exponent(0);
    try {
      Polygon poly = polygon_of(p);
      s_now = poly.s_max();
      if (s_now >= root_bound) {
        return finish(ExpansionStatus::kPrecisionExhausted, s_now);
      }
      auto out = newton_step(p, policy, step, w);
      at.digits.push_back({out.step.slope, out.step.root});
      at.trace.push_back(out.step);
      p = std::move(out.next);
    } catch (const NoRootInField&) {
      return finish(ExpansionStatus::kNoRootInField, s_now);
    } catch (const CapacityError&) {
      at.capacity_hit = true;
      return finish(ExpansionStatus::kPrecisionExhausted, lower_slope(p));
    } catch (const PrecisionError&) {
      at.need_precision = true;
      at.next_bound = lower_slope(p);
      return at;
    }
  }
}

inline ExpansionReport make_report(const FieldPtr& k, detail::Attempt&& at,
                                   const Exponent& w) {
  ExpansionReport rep;
  std::int64_t lattice = 1;
  for (const auto& dg : at.digits) lattice = lcm_checked(lattice, dg.exp.den());
  Bound b = at.next_bound;
  if (!at.digits.empty() && b <= Bound(at.digits.back().exp)) {
    b = at.digits.back().exp;
  }
  rep.digits = HahnSeries(k, at.digits, b, lattice);
  rep.status = at.status;
  rep.trace = std::move(at.trace);
  rep.working_precision = w;
  return rep;
}

}  // namespace detail

// Runs Newton steps until max_digits digits are found, the constant term
// vanishes, or the next digit would lie at or above root_bound. The working
// precision of the coefficients grows until the polygons are determined.
inline ExpansionReport newton_run(const PolySeries& p, const RootPolicy& policy,
                                  int max_digits, const Bound& root_bound,
                                  const NewtonOptions& opts = {}) {
  if (p.degree() < 1) throw InvalidInput("Newton run needs degree >= 1");
  if (max_digits < 0) throw InvalidInput("negative digit budget");
  Exponent w;
  if (opts.initial_precision) {
    w = *opts.initial_precision;
  } else {
    Exponent vmax(0);
    for (const auto& a : p.coeffs) {
      if (!a.is_zero()) vmax = std::max(vmax, a.leading().exp);
    }
    w = vmax + Exponent(2);
  }
  Bound input_order;
  for (const auto& a : p.coeffs) input_order = min(input_order, a.bound());
  detail::Attempt last;
  for (;;) {
    detail::Attempt at;
    bool capped = false;
    try {
      at = detail::newton_attempt(p, policy, max_digits, root_bound, w);
    } catch (const PrecisionError&) {
      capped = true;
      at = std::move(last);
    }
    if (!capped && !at.need_precision) {
      bool hit = at.capacity_hit;
      auto rep = detail::make_report(p.field, std::move(at), w);
      rep.capacity_limited = hit;
      return rep;
    }
    bool saturated = input_order.is_finite() && input_order.value() <= w;
    Exponent next = w + opts.precision_step;
    if (capped || saturated || next > opts.max_precision) {
      at.status = ExpansionStatus::kPrecisionExhausted;
      auto rep = detail::make_report(p.field, std::move(at), w);
      rep.capacity_limited = !saturated;
      return rep;
    }
    last = std::move(at);
    w = next;
  }
}

}  // namespace mnfield

#endif  // MNFIELD_TRANSFINITE_NEWTON_HPP
