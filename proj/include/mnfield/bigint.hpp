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

#ifndef MNFIELD_BIGINT_HPP
#define MNFIELD_BIGINT_HPP

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace mnfield {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(const BigInt& n, const BigInt& k) {
  if (k < 0 || k > n) return 0;
  BigInt kk = k > n - k ? n - k : k;
  BigInt r = 1;
  for (BigInt i = 1; i <= kk; ++i) r = r * (n - kk + i) / i;
  return r;
}

// p-adic valuation of a nonzero rational.
inline long long vp_rational(const BigRational& r, int p) {
  if (r == 0) throw std::domain_error("valuation of zero");
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  long long v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

}  // namespace mnfield

#endif  // MNFIELD_BIGINT_HPP
