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

// One PASS/FAIL line per acceptance criterion. Tolerances are exact; the
// runtime targets are checked too.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "mnfield/mnfield.hpp"

namespace {

using namespace mnfield;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

FqElem zeta2pm1(const FieldCtx& k) {
  return k.primitive_root_of_order(2 * (k.p() - 1));
}

// (-1)^{jn} z^j / j! at j/(p^{n-1}(p-1)) for j < p, then (-1)^n z at
// 1/(p^{n-2}(p-1)) - 1/p^l, l = n, n+1, ...
std::vector<Digit> closed_form(const FieldCtx& k, int n, int count) {
  int p = k.p();
  FqElem z = zeta2pm1(k);
  std::vector<Digit> out;
  std::int64_t fact = 1;
  for (int j = 0; j < p && static_cast<int>(out.size()) < count; ++j) {
    if (j > 0) fact = fact * j % p;
    FqElem c = k.div(k.pow(z, j), k.from_int(fact));
    if (j * n % 2 == 1) c = k.neg(c);
    out.push_back({Exponent(j, ipow(p, n - 1) * (p - 1)), c});
  }
  Exponent lim(1, ipow(p, n - 2) * (p - 1));
  FqElem tail = n % 2 == 0 ? z : k.neg(z);
  for (int l = n; static_cast<int>(out.size()) < count; ++l) {
    out.push_back({lim - Exponent(1, ipow(p, l)), tail});
  }
  return out;
}

const std::vector<std::pair<int, int>> kGrid = {{3, 2}, {5, 2}, {7, 2}, {3, 3}};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string pn(int p, int n) {
  return "(" + std::to_string(p) + "," + std::to_string(n) + ")";
}

Outcome criterion_1() {
  Outcome o;
  for (auto [p, n] : kGrid) {
    auto t0 = std::chrono::steady_clock::now();
    int count = (p - 1) + 3;
    auto r = zeta_pn_expand(p, n, count);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& k = r.digits.field();
    if (r.digits.digits() != closed_form(*k, n, count)) o.fail("digits differ at " + pn(p, n));
    if (HahnSeries(k, r.digits.digits()) != lambda_approx(k, n, count - 1)) {
      o.fail("lambda_approx differs at " + pn(p, n));
    }
    if (secs >= 30) o.fail("slow at " + pn(p, n));
  }
  return o;
}

Outcome criterion_2() {
  Outcome o;
  for (auto [p, n] : kGrid) {
    auto r = zeta_pn_expand(p, n, 2);
    const FieldCtx& k = *r.digits.field();
    if (r.trace.size() != 2) {
      o.fail("short trace at " + pn(p, n));
      continue;
    }
    FqElem z = zeta2pm1(k);
    FqElem root1 = n % 2 == 0 ? z : k.neg(z);
    bool ok = r.trace[0].slope == Exponent(0) && r.trace[0].root == k.one() &&
              r.trace[1].slope == Exponent(1, ipow(p, n - 1) * (p - 1)) &&
              r.trace[1].root == root1 &&
              r.trace[1].multiplicity == ipow(p, n - 1);
    if (!ok) o.fail("initial steps differ at " + pn(p, n));
  }
  return o;
}

Outcome criterion_3() {
  Outcome o;
  for (int p : {3, 5, 7}) {
    auto r = zeta_p_expand(p, p);
    const FieldCtx& k = *r.digits.field();
    FqElem z = zeta2pm1(k);
    std::vector<Digit> want;
    std::int64_t fact = 1;
    for (int j = 0; j < p; ++j) {
      if (j > 0) fact = fact * j % p;
      FqElem c = k.div(k.pow(z, j), k.from_int(fact));
      if (j % 2 == 1) c = k.neg(c);
      want.push_back({Exponent(j, p - 1), c});
    }
    if (r.digits.digits() != want) o.fail("digits differ at p=" + std::to_string(p));
  }
  return o;
}

Outcome criterion_4() {
  Outcome o;
  int count = 0;
  for (int p : {3, 5}) {
    for (int n : {2, 3}) {
      for (int i = 1; i <= p + 1; ++i) {
        for (auto w : {EstimateKind::kFirst, EstimateKind::kSecond}) {
          ++count;
          auto r = verify_power_estimate(p, n, i, w);
          if (!r.pass) {
            o.fail("p=" + std::to_string(p) + " n=" + std::to_string(n) +
                   " i=" + std::to_string(i) + " " + to_string(w));
          }
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " estimates";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  for (int p : {3, 5}) {
    for (int n : {2, 3}) {
      for (const auto& r : verify_aux_identities(p, n)) {
        if (!r.pass) o.fail(r.name + " at " + pn(p, n));
      }
    }
  }
  return o;
}

Outcome criterion_6() {
  Outcome o;
  std::size_t witnesses = 0;
  auto run = [&](const std::string& fam, int p, CongruenceParams prm = {}) {
    CheckReport r = congruence_suite(fam, p, prm);
    witnesses += r.witnesses.size();
    if (!r.pass) o.fail(fam + " at p=" + std::to_string(p));
  };
  for (int p : {3, 5, 7, 11, 13}) run("arith1", p);
  for (int p : {5, 7, 11}) run("arith2", p);
  for (int p : {3, 5}) run("vrai", p);
  for (int n : {2, 3}) {
    CongruenceParams prm;
    prm.level = n;
    run("jambon", 3, prm);
  }
  for (int p : {3, 5}) {
    for (int part : {1, 2, 3}) {
      CongruenceParams prm;
      prm.part = part;
      prm.n_max = 4;
      run("babbage", p, prm);
    }
  }
  for (int p : {5, 7}) run("gvalue", p);
  if (o.pass) o.detail = std::to_string(witnesses) + " witnesses";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  for (const auto& r : combinatorial_identities(12, 5, 20)) {
    if (!r.pass) o.fail(r.family);
  }
  for (int n = 1; n <= 20; ++n) {
    if (alternating_factorial_sum(n) != BigInt(n == 1 ? 1 : 0)) {
      o.fail("alternating sum at n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  VerifyOptions vo;
  vo.random_instances = 100;
  SuiteResult r = run_suite("polygon", vo);
  int stab = 0, geom = 0;
  for (const auto& c : r.cases) {
    if (!c.contains("shift_stability_instances")) {
      o.fail("error: " + c.value("error", std::string("?")));
      continue;
    }
    stab += c["shift_stability_instances"].get<int>();
    geom += c["newton_step_instances"].get<int>();
    int bad = c["hull_violations"].get<int>() +
              c["shift_stability_violations"].get<int>() +
              c["newton_step_violations"].get<int>();
    if (bad != 0) o.fail(std::to_string(bad) + " violations at p=" + c["p"].dump());
    if (c["shift_stability_instances"].get<int>() < 100 ||
        c["newton_step_instances"].get<int>() < 100) {
      o.fail("fewer than 100 instances at p=" + c["p"].dump());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(stab) + " stability and " + std::to_string(geom) +
               " step instances";
  }
  return o;
}

Outcome criterion_9() {
  Outcome o;
  for (int p : {3, 5}) {
    for (int m = 0; m <= 3; ++m) {
      auto r = uniformizer_1m(p, m);
      if (r.valuation != Exponent(1, ipow(p, m) * (p - 1))) {
        o.fail("pi_{1," + std::to_string(m) + "} at p=" + std::to_string(p));
      }
    }
    for (int m = 1; m <= 3; ++m) {
      auto r = uniformizer_2m(p, m);
      if (r.valuation != Exponent(1, ipow(p, m + 1) * (p - 1))) {
        o.fail("pi_{2," + std::to_string(m) + "} at p=" + std::to_string(p));
      }
    }
  }
  return o;
}

Outcome criterion_10() {
  Outcome o;
  for (int p : {3, 5}) {
    int count = (p - 1) + 3;
    auto cs = conjugate_prefixes(p, 2, count);
    if (static_cast<int>(cs.size()) != p - 1) o.fail("class count at p=" + std::to_string(p));
    Exponent lim(1, p - 1);
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (const auto& d : cs[a].report.digits.digits()) {
        if (!(d.exp < lim)) o.fail("digit at or above the limit");
      }
      for (std::size_t b = a + 1; b < cs.size(); ++b) {
        if (cs[a].report.digits == cs[b].report.digits) o.fail("equal prefixes");
      }
    }
    auto canon = zeta_pn_expand(p, 2, count);
    if (cs.empty() || cs[0].report.digits.digits() != canon.digits.digits()) {
      o.fail("k=0 class differs from the canonical expansion");
    }
  }
  return o;
}

Outcome criterion_11() {
  Outcome o;
  std::ostringstream d;
  for (int p : {3, 5}) {
    auto tr = lampert_sequence(p, 2 * p);
    if (p != 3) d << "; ";
    d << "p=" << p << ": ";
    if (!tr.found) {
      // An unproven bound; not-found is reported, not failed.
      d << "not-found (" << tr.stop_reason << ")";
      continue;
    }
    const auto& v = tr.steps.back().valuation;
    Exponent scaled = v * Exponent(ipow(p, 3) * (p - 1));
    std::int64_t mod = p * p;
    bool ok = scaled.den() == 1 &&
              ((scaled.num() - (1 - p)) % mod + mod) % mod == 0 &&
              tr.terminal_index <= 2 * p;
    if (!ok) o.fail("inconsistent trace at p=" + std::to_string(p));
    d << "N=" << tr.terminal_index << " v=" << v.str();
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion_12() {
  Outcome o;
  VerifyOptions vo;
  std::string a = dump_json(to_json(run_suites({"all"}, vo)));
  std::string b = dump_json(to_json(run_suites({"all"}, vo)));
  if (a != b) o.fail("outputs differ");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "main-theorem digits", 120, criterion_1},
      {2, "initial Newton steps", 30, criterion_2},
      {3, "zeta_p digits", 5, criterion_3},
      {4, "power estimates", 60, criterion_4},
      {5, "auxiliary identities", 30, criterion_5},
      {6, "congruence battery", 20, criterion_6},
      {7, "combinatorial identities", 5, criterion_7},
      {8, "polygon engine properties", 30, criterion_8},
      {9, "uniformizer valuations", 30, criterion_9},
      {10, "conjugate classes", 20, criterion_10},
      {11, "Lampert iteration", 60, criterion_11},
      {12, "determinism of verify all", 600, criterion_12},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.budget_s) o.fail("exceeded " + std::to_string(c.budget_s) + " s");
    if (!o.pass) ++failed;
    std::printf("%s criterion %2d: %s [%.2f s]%s%s\n", o.pass ? "PASS" : "FAIL",
                c.id, c.title, secs, o.detail.empty() ? "" : " ",
                o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
