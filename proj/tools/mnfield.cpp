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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mnfield/mnfield.hpp"

namespace {

using namespace mnfield;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

struct Globals {
  int precision_guard = 2;
  FieldOptions field;
  NewtonOptions newton;

  CyclotomicOptions cyclotomic() const {
    CyclotomicOptions c;
    c.field = field;
    c.newton = newton;
    return c;
  }
};

const CLI::Validator kOddPrime(
    [](std::string& s) -> std::string {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) return "not an integer: " + s;
        if (v < 3 || v > 997 || !is_prime(static_cast<int>(v))) {
          return s + " is not an odd prime below 1000";
        }
      } catch (const std::exception&) {
        return "not an integer: " + s;
      }
      return {};
    },
    "ODD_PRIME");

const CLI::Validator kRational(
    [](std::string& s) -> std::string {
      try {
        Bound::parse(s);
      } catch (const Error&) {
        return "malformed rational: " + s;
      }
      return {};
    },
    "RATIONAL");

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

void print_digits(const HahnSeries& s) {
  std::cout << "exponent\tdigit\n";
  for (const auto& d : s.digits()) {
    std::cout << d.exp.str() << '\t' << s.field()->format(d.coeff) << '\n';
  }
  std::cout << "order bound\t" << s.bound().str() << '\n';
}

void print_report(const ExpansionReport& r) {
  print_digits(r.digits);
  std::cout << "status\t" << to_string(r.status) << '\n';
  const FieldCtx& k = *r.digits.field();
  std::cout << "step\tslope\tm_max\troot\tmultiplicity\tresidue\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& s = r.trace[i];
    std::cout << i << '\t' << s.slope.str() << '\t' << s.m_max << '\t'
              << k.format(s.root) << '\t' << s.multiplicity << '\t'
              << fq_poly_format(k, s.residue) << '\n';
  }
}

int report_exit(const ExpansionReport& r) {
  if (!r.capacity_limited) return kExitOk;
  std::cerr << "error: precision cap reached after "
            << r.digits.digits().size() << " digits\n";
  return kExitPrecision;
}

int run_zeta(const Globals& g, int p, int n, int digits, bool json,
             bool trace) {
  if (digits < 0) digits = default_digit_budget(p);
  ExpansionReport r = zeta_pn_expand(p, n, digits, g.cyclotomic());
  if (json) {
    std::cout << dump_json(trace ? to_json(r) : to_json(r.digits));
  } else {
    trace ? print_report(r) : print_digits(r.digits);
  }
  return report_exit(r);
}

int run_zetap(const Globals& g, int p, int digits, bool json) {
  if (digits < 0) digits = p;
  ExpansionReport r = zeta_p_expand(p, digits, g.cyclotomic());
  if (json) {
    std::cout << dump_json(to_json(r.digits));
  } else {
    print_digits(r.digits);
  }
  return kExitOk;
}

int run_newton(const Globals& g, const std::string& input, int digits,
               const std::string& bound, const std::string& policy, int level,
               bool json) {
  PolySeries P = poly_from_json(parse_json_text(read_file(input)), g.field);
  RootPolicy pol = policy == "canonical" ? RootPolicy::canonical_cyclotomic(level)
                                         : RootPolicy::lexmin();
  ExpansionReport r = newton_run(P, pol, digits, Bound::parse(bound), g.newton);
  if (json) {
    std::cout << dump_json(to_json(r));
  } else {
    print_report(r);
  }
  return report_exit(r);
}

int run_uniformizer(const Globals& g, int p, const std::string& variant, int m,
                    std::optional<int> max_steps, bool json) {
  if (variant == "lampert") {
    LampertTrace tr = lampert_sequence(p, max_steps, 0, g.cyclotomic());
    if (json) {
      Json j;
      j["p"] = tr.p;
      j["max_steps"] = tr.max_steps;
      j["zeta_digits"] = tr.zeta_digits;
      Json steps = Json::array();
      for (const auto& s : tr.steps) {
        Json e;
        e["index"] = s.index;
        e["valuation"] = s.valuation.str();
        e["z"] = to_json(s.z);
        steps.push_back(std::move(e));
      }
      j["steps"] = std::move(steps);
      j["found"] = tr.found;
      if (tr.found) {
        j["terminal_index"] = tr.terminal_index;
        j["witness"] = tr.witness;
        j["bezout"] = tr.bezout;
      }
      j["stop_reason"] = tr.stop_reason;
      std::cout << dump_json(j);
    } else {
      std::cout << "n\tvaluation\n";
      for (const auto& s : tr.steps) {
        std::cout << s.index << '\t' << s.valuation.str() << '\n';
      }
      if (tr.found) {
        std::cout << "found N=" << tr.terminal_index << " witness "
                  << tr.witness << " bezout";
        for (auto e : tr.bezout) std::cout << ' ' << e;
        std::cout << '\n';
      } else {
        std::cout << "not found: " << tr.stop_reason << '\n';
      }
    }
    return kExitOk;
  }
  UniformizerReport u = variant == "k1m" ? uniformizer_1m(p, m, g.cyclotomic())
                                         : uniformizer_2m(p, m, g.cyclotomic());
  if (json) {
    Json j;
    j["field"] = {u.n, u.m};
    j["series"] = to_json(u.series);
    j["valuation"] = u.valuation.str();
    j["expected_valuation"] = u.expected_valuation.str();
    j["pass"] = u.pass;
    std::cout << dump_json(j);
  } else {
    print_digits(u.series);
    std::cout << "valuation\t" << u.valuation.str() << "\nexpected\t"
              << u.expected_valuation.str() << '\n';
  }
  return u.pass ? kExitOk : kExitVerifyFailed;
}

int run_stirling(int n, int k, int r) {
  auto value = [&](int kk) {
    return r > 0 ? stirling2_restricted(n, kk, r) : stirling2(n, kk);
  };
  if (k >= 0) {
    std::cout << value(k) << '\n';
    return kExitOk;
  }
  for (int kk = 0; kk <= n; ++kk) {
    std::cout << (kk ? "\t" : "") << value(kk);
  }
  std::cout << '\n';
  return kExitOk;
}

int run_polygon(const Globals& g, const std::string& input,
                const std::string& tsv, const std::string& svg, bool json) {
  PolySeries P = poly_from_json(parse_json_text(read_file(input)), g.field);
  Polygon poly = polygon_of(P);
  if (!tsv.empty()) write_file(tsv, polygon_tsv(poly));
  if (!svg.empty()) write_file(svg, polygon_svg(P, poly));
  if (json) {
    Json j;
    Json vs = Json::array();
    for (const auto& v : poly.vertices) {
      Json e;
      e["index"] = v.index;
      e["value"] = v.value.str();
      vs.push_back(std::move(e));
    }
    j["vertices"] = std::move(vs);
    j["m_max"] = poly.m_max();
    j["s_max"] = poly.s_max().str();
    std::cout << dump_json(j);
  } else {
    std::cout << polygon_tsv(poly);
  }
  return kExitOk;
}

int run_verify(const Globals& g, std::vector<std::string> suites,
               const std::vector<int>& primes, std::uint64_t seed, bool json) {
  VerifyOptions o;
  o.primes = primes;
  o.seed = seed;
  o.cyclotomic = g.cyclotomic();
  if (suites.empty()) suites = {"all"};
  for (const auto& s : suites) {
    if (s == "all") continue;
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw InvalidInput("unknown suite '" + s + "'");
    }
  }
  auto results = run_suites(suites, o);
  bool pass = true;
  for (const auto& r : results) pass = pass && r.pass;
  if (json) {
    std::cout << dump_json(to_json(results));
  } else {
    for (const auto& r : results) {
      std::size_t failed = 0;
      for (const auto& c : r.cases) failed += c.at("pass").get<bool>() ? 0 : 1;
      std::cout << (r.pass ? "PASS" : "FAIL") << '\t' << r.suite << '\t'
                << r.cases.size() - failed << '/' << r.cases.size()
                << " cases\n";
    }
  }
  return pass ? kExitOk : kExitVerifyFailed;
}

int exit_for(const Error& e) {
  if (dynamic_cast<const PrecisionError*>(&e)) return kExitPrecision;
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical expansions of roots of unity in the p-adic "
               "Mal'cev-Neumann field"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision-guard", g.precision_guard,
                 "guard digits of p-adic precision")
      ->check(CLI::Range(0, 16));

  int p = 3, n = 2, digits = -1, m = 1, level = 2;
  std::optional<int> max_steps;
  int sn = 0, sk = -1, sr = 0;
  bool json = false, trace = false;
  std::string input, bound = "inf", policy = "canonical", variant = "k2m";
  std::string tsv, svg;
  std::vector<std::string> suites;
  std::vector<int> primes;
  std::uint64_t seed = VerifyOptions{}.seed;

  auto* zeta = app.add_subcommand("zeta", "digits of zeta_{p^n}");
  zeta->add_option("--p", p, "odd prime")->required()->check(kOddPrime);
  zeta->add_option("--n", n, "level n >= 1")->check(CLI::Range(1, 6));
  zeta->add_option("--digits", digits, "digit budget (default p+2)")
      ->check(CLI::NonNegativeNumber);
  zeta->add_flag("--json", json, "emit JSON");
  zeta->add_flag("--trace", trace, "include the Newton trace");

  auto* zetap = app.add_subcommand("zetap", "first digits of zeta_p");
  zetap->add_option("--p", p, "odd prime")->required()->check(kOddPrime);
  zetap->add_option("--digits", digits, "number of digits, at most p")
      ->check(CLI::NonNegativeNumber);
  zetap->add_flag("--json", json, "emit JSON");

  auto* newton = app.add_subcommand("newton", "Newton run on a polynomial");
  newton->add_option("--input", input, "polynomial JSON file")->required();
  newton->add_option("--digits", digits, "digit budget")
      ->check(CLI::NonNegativeNumber);
  newton->add_option("--bound", bound, "stop before digits at this order")
      ->check(kRational);
  newton->add_option("--policy", policy, "root choice")
      ->check(CLI::IsMember({"canonical", "lexmin"}));
  newton->add_option("--level", level, "n for the canonical policy")
      ->check(CLI::Range(1, 6));
  newton->add_flag("--json", json, "emit JSON");

  auto* unif = app.add_subcommand("uniformizer", "uniformizers");
  unif->add_option("--p", p, "odd prime")->required()->check(kOddPrime);
  unif->add_option("--variant", variant, "k1m, k2m or lampert")
      ->check(CLI::IsMember({"k1m", "k2m", "lampert"}));
  unif->add_option("--m", m, "m")->check(CLI::Range(0, 8));
  unif->add_option("--max-steps", max_steps, "Lampert step cap (default p)")
      ->check(CLI::Range(1, 64));
  unif->add_flag("--json", json, "emit JSON");

  auto* stir = app.add_subcommand("stirling", "Stirling numbers S(n,k)");
  stir->add_option("--n", sn, "n")->required()->check(CLI::Range(0, 60));
  stir->add_option("--k", sk, "k (default: whole row)")
      ->check(CLI::Range(0, 60));
  stir->add_option("--r", sr, "largest block size")->check(CLI::Range(1, 60));

  auto* poly = app.add_subcommand("polygon", "Newton polygon of a polynomial");
  poly->add_option("--input", input, "polynomial JSON file")->required();
  poly->add_option("--tsv", tsv, "write vertices as TSV");
  poly->add_option("--svg", svg, "write an SVG drawing");
  poly->add_flag("--json", json, "emit JSON");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suites, "suite names or all")->delimiter(',');
  ver->add_option("--p", primes, "restrict to these primes")
      ->delimiter(',')
      ->check(kOddPrime);
  ver->add_option("--seed", seed, "seed for random instances");
  ver->add_flag("--json", json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    g.field.precision_guard = g.precision_guard;
    if (const char* env = std::getenv("MNFIELD_MAX_PRECISION")) {
      std::string s = env;
      std::size_t pos = 0;
      int v = 0;
      try {
        v = std::stoi(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || v < 1 || v > 60) {
        std::cerr << "error: MNFIELD_MAX_PRECISION must be an integer in 1..60\n";
        return kExitUsage;
      }
      g.field.max_precision = v;
    }
    if (*zeta) return run_zeta(g, p, n, digits, json, trace);
    if (*zetap) return run_zetap(g, p, digits, json);
    if (*newton) {
      return run_newton(g, input, digits < 0 ? 8 : digits, bound, policy,
                        level, json);
    }
    if (*unif) return run_uniformizer(g, p, variant, m, max_steps, json);
    if (*stir) {
      if (sk > sn) throw InvalidInput("--k must not exceed --n");
      return run_stirling(sn, sk, sr);
    }
    if (*poly) return run_polygon(g, input, tsv, svg, json);
    if (*ver) return run_verify(g, suites, primes, seed, json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
