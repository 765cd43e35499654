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

#ifndef MNFIELD_JSON_IO_HPP
#define MNFIELD_JSON_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mnfield/bell_stirling.hpp"
#include "mnfield/transfinite_newton.hpp"

namespace mnfield {

using Json = nlohmann::ordered_json;

// Modulus as text, highest degree first: "t^2+1", "t^2+t+2".
inline std::string modulus_string(const FieldCtx& k) {
  const auto& f = k.modulus();
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(f[i]);
      continue;
    }
    if (f[i] != 1) out += std::to_string(f[i]) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

namespace detail {

inline const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

inline std::string string_of(const Json& j, const char* key) {
  const Json& v = field_of(j, key);
  if (!v.is_string()) {
    throw InvalidInput(std::string("JSON field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline std::int64_t int_of(const Json& j, const char* key) {
  const Json& v = field_of(j, key);
  if (!v.is_number_integer()) {
    throw InvalidInput(std::string("JSON field '") + key +
                       "' must be an integer");
  }
  return v.get<std::int64_t>();
}

inline Json digits_json(const HahnSeries& s) {
  Json arr = Json::array();
  for (const auto& d : s.digits()) {
    Json e;
    e["exp"] = d.exp.str();
    e["coeff"] = s.field()->format(d.coeff);
    arr.push_back(std::move(e));
  }
  return arr;
}

inline std::vector<Digit> digits_from_json(const FieldCtx& k, const Json& arr) {
  if (!arr.is_array()) throw InvalidInput("'digits' must be an array");
  std::vector<Digit> out;
  for (const auto& e : arr) {
    out.push_back({Exponent::parse(string_of(e, "exp")),
                   k.parse(string_of(e, "coeff"))});
  }
  return out;
}

inline int checked_int(std::int64_t v, const char* what) {
  if (v < 0 || v > (1 << 20)) throw InvalidInput(std::string("bad ") + what);
  return static_cast<int>(v);
}

}  // namespace detail

inline Json to_json(const HahnSeries& s) {
  Json j;
  j["p"] = s.field()->p();
  j["field"] = modulus_string(*s.field());
  j["denominator"] = s.lattice();
  j["digits"] = detail::digits_json(s);
  j["order_bound"] = s.bound().str();
  return j;
}

// Reads a series document. The field is rebuilt from p and the degree of
// the "field" modulus, which must match the canonical modulus.
inline HahnSeries series_from_json(const Json& j, const FieldOptions& fo = {}) {
  int p = detail::checked_int(detail::int_of(j, "p"), "p");
  std::string mod = detail::string_of(j, "field");
  int d = 1;
  auto pos = mod.find("t^");
  if (pos != std::string::npos) {
    try {
      d = std::stoi(mod.substr(pos + 2));
    } catch (const std::exception&) {
      throw InvalidInput("bad field modulus '" + mod + "'");
    }
  }
  auto k = make_field(p, d, fo);
  if (modulus_string(*k) != mod) {
    throw InvalidInput("field modulus '" + mod + "' is not the canonical " +
                       modulus_string(*k));
  }
  std::int64_t den = detail::int_of(j, "denominator");
  if (den < 1) throw InvalidInput("denominator must be positive");
  return HahnSeries(k, detail::digits_from_json(*k, detail::field_of(j, "digits")),
                    Bound::parse(detail::string_of(j, "order_bound")), den);
}

// Polynomial document: coefficients by power of T; omitted powers are zero.
inline Json to_json(const PolySeries& P) {
  Json j;
  const FieldCtx& k = *P.field;
  j["p"] = k.p();
  j["field_degree"] = k.d();
  std::int64_t den = 1;
  for (const auto& a : P.coeffs) den = lcm_checked(den, a.lattice());
  j["denominator"] = den;
  Json arr = Json::array();
  for (int deg = 0; deg <= P.degree(); ++deg) {
    const HahnSeries& a = P.coeff_of_power(deg);
    if (a.is_zero() && a.is_exact()) continue;
    Json e;
    e["deg"] = deg;
    e["digits"] = detail::digits_json(a);
    if (!a.is_exact()) e["order_bound"] = a.bound().str();
    arr.push_back(std::move(e));
  }
  j["coeffs"] = std::move(arr);
  return j;
}

inline PolySeries poly_from_json(const Json& j, const FieldOptions& fo = {}) {
  int p = detail::checked_int(detail::int_of(j, "p"), "p");
  int d = 2;
  if (j.contains("field_degree")) {
    d = detail::checked_int(detail::int_of(j, "field_degree"), "field_degree");
  }
  auto k = make_field(p, d, fo);
  std::int64_t den = 1;
  if (j.contains("denominator")) {
    den = detail::int_of(j, "denominator");
    if (den < 1) throw InvalidInput("denominator must be positive");
  }
  const Json& arr = detail::field_of(j, "coeffs");
  if (!arr.is_array()) throw InvalidInput("'coeffs' must be an array");
  int n = -1;
  for (const auto& e : arr) {
    n = std::max(n, detail::checked_int(detail::int_of(e, "deg"), "deg"));
  }
  if (n < 1) throw InvalidInput("polynomial degree must be >= 1");
  std::vector<HahnSeries> by_power(static_cast<std::size_t>(n + 1),
                                   HahnSeries::zero(k));
  std::vector<bool> seen(by_power.size(), false);
  for (const auto& e : arr) {
    int deg = static_cast<int>(detail::int_of(e, "deg"));
    if (seen[deg]) throw InvalidInput("duplicate degree " + std::to_string(deg));
    seen[deg] = true;
    Bound b;
    if (e.contains("order_bound")) b = Bound::parse(detail::string_of(e, "order_bound"));
    by_power[deg] = HahnSeries(
        k, detail::digits_from_json(*k, detail::field_of(e, "digits")), b, den);
  }
  if (by_power[n].is_zero()) {
    throw InvalidInput("leading coefficient must be nonzero");
  }
  return PolySeries::from_powers(k, std::move(by_power));
}

inline Json to_json(const FieldCtx& k, const NewtonStep& s) {
  Json j;
  j["slope"] = s.slope.str();
  j["m_max"] = s.m_max;
  j["root"] = k.format(s.root);
  j["multiplicity"] = s.multiplicity;
  Json res = Json::array();
  for (const auto& c : s.residue) res.push_back(k.format(c));
  j["residue"] = std::move(res);
  return j;
}

inline Json to_json(const ExpansionReport& r) {
  Json j = to_json(r.digits);
  j["status"] = to_string(r.status);
  j["working_precision"] = r.working_precision.str();
  j["capacity_limited"] = r.capacity_limited;
  Json tr = Json::array();
  for (const auto& s : r.trace) tr.push_back(to_json(*r.digits.field(), s));
  j["trace"] = std::move(tr);
  return j;
}

inline ExpansionReport report_from_json(const Json& j,
                                        const FieldOptions& fo = {}) {
  ExpansionReport r;
  r.digits = series_from_json(j, fo);
  const FieldCtx& k = *r.digits.field();
  r.status = expansion_status_from_string(detail::string_of(j, "status"));
  r.working_precision = Exponent::parse(detail::string_of(j, "working_precision"));
  const Json& cl = detail::field_of(j, "capacity_limited");
  if (!cl.is_boolean()) throw InvalidInput("'capacity_limited' must be boolean");
  r.capacity_limited = cl.get<bool>();
  const Json& tr = detail::field_of(j, "trace");
  if (!tr.is_array()) throw InvalidInput("'trace' must be an array");
  for (const auto& e : tr) {
    NewtonStep s;
    s.slope = Exponent::parse(detail::string_of(e, "slope"));
    s.m_max = detail::int_of(e, "m_max");
    s.root = k.parse(detail::string_of(e, "root"));
    s.multiplicity = static_cast<int>(detail::int_of(e, "multiplicity"));
    const Json& res = detail::field_of(e, "residue");
    if (!res.is_array()) throw InvalidInput("'residue' must be an array");
    for (const auto& c : res) {
      if (!c.is_string()) throw InvalidInput("residue entries must be strings");
      s.residue.push_back(k.parse(c.get<std::string>()));
    }
    r.trace.push_back(std::move(s));
  }
  return r;
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["family"] = r.family;
  Json params = Json::object();
  for (const auto& [key, v] : r.params) params[key] = v;
  j["params"] = std::move(params);
  j["pass"] = r.pass;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json e;
    e["input"] = w.input;
    e["lhs"] = w.lhs;
    e["rhs"] = w.rhs;
    e["modulus"] = w.modulus;
    e["ok"] = w.ok;
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);
  return j;
}

inline CheckReport check_report_from_json(const Json& j) {
  CheckReport r;
  r.family = detail::string_of(j, "family");
  const Json& params = detail::field_of(j, "params");
  if (!params.is_object()) throw InvalidInput("'params' must be an object");
  for (const auto& [key, v] : params.items()) {
    if (!v.is_string()) throw InvalidInput("params values must be strings");
    r.params.push_back({key, v.get<std::string>()});
  }
  const Json& pass = detail::field_of(j, "pass");
  if (!pass.is_boolean()) throw InvalidInput("'pass' must be boolean");
  r.pass = pass.get<bool>();
  const Json& ws = detail::field_of(j, "witnesses");
  if (!ws.is_array()) throw InvalidInput("'witnesses' must be an array");
  for (const auto& e : ws) {
    const Json& ok = detail::field_of(e, "ok");
    if (!ok.is_boolean()) throw InvalidInput("'ok' must be boolean");
    r.witnesses.push_back({detail::string_of(e, "input"),
                           detail::string_of(e, "lhs"),
                           detail::string_of(e, "rhs"),
                           detail::string_of(e, "modulus"), ok.get<bool>()});
  }
  return r;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mnfield

#endif  // MNFIELD_JSON_IO_HPP
