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

#ifndef MNFIELD_EXPONENT_HPP
#define MNFIELD_EXPONENT_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>

#include "mnfield/error.hpp"

namespace mnfield {

// Exact rational exponent with a positive denominator, kept in lowest terms.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(std::int64_t n) : num_(n), den_(1) {}  // NOLINT
  Exponent(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
  }
  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ > 0) ? q + 1 : q;
  }

  // Index of this exponent on the 1/d lattice; d must be a multiple of den().
  std::int64_t on_lattice(std::int64_t d) const {
    if (d % den_ != 0) {
      throw InvalidInput("exponent " + str() + " is not on the 1/" +
                         std::to_string(d) + " lattice");
    }
    return checked(static_cast<__int128>(num_) * (d / den_));
  }

  // "num/den", always with a denominator.
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Exponent parse(const std::string& s) {
    try {
      std::size_t pos = 0;
      auto slash = s.find('/');
      if (slash == std::string::npos) {
        std::int64_t n = std::stoll(s, &pos);
        if (pos != s.size()) throw InvalidInput("bad exponent '" + s + "'");
        return Exponent(n);
      }
      std::string a = s.substr(0, slash), b = s.substr(slash + 1);
      std::int64_t n = std::stoll(a, &pos);
      if (pos != a.size()) throw InvalidInput("bad exponent '" + s + "'");
      std::int64_t d = std::stoll(b, &pos);
      if (pos != b.size() || d == 0) {
        throw InvalidInput("bad exponent '" + s + "'");
      }
      return Exponent(n, d);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad exponent '" + s + "'");
    }
  }

  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ +
                       static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Exponent operator-(const Exponent& a, const Exponent& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ -
                       static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Exponent operator*(const Exponent& a, const Exponent& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Exponent operator/(const Exponent& a, const Exponent& b) {
    if (b.num_ == 0) throw DivisionByZero("exponent division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_,
                   static_cast<__int128>(a.den_) * b.num_);
  }
  Exponent operator-() const { return Exponent(-num_, den_); }
  Exponent& operator+=(const Exponent& o) { return *this = *this + o; }
  Exponent& operator-=(const Exponent& o) { return *this = *this - o; }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Exponent& a,
                                          const Exponent& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Exponent& e) {
    return os << e.str();
  }

 private:
  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
      throw CapacityError("exponent arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Exponent from128(__int128 n, __int128 d) {
    if (d == 0) throw DivisionByZero("exponent with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Exponent e;
    e.num_ = checked(n);
    e.den_ = checked(d);
    return e;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = from128(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > INT64_MAX) throw CapacityError("lattice denominator overflow");
  return static_cast<std::int64_t>(l);
}

// An exponent or +infinity. Used for valuations of possibly-zero elements,
// order bounds and polygon slopes.
class Bound {
 public:
  Bound() = default;  // +infinity
  Bound(const Exponent& e) : value_(e) {}  // NOLINT
  Bound(std::int64_t n) : value_(Exponent(n)) {}  // NOLINT

  static Bound infinity() { return Bound(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Exponent& value() const {
    if (!value_) throw InvalidInput("infinite bound has no finite value");
    return *value_;
  }

  std::string str() const { return value_ ? value_->str() : "inf"; }

  static Bound parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return infinity();
    return Exponent::parse(s);
  }

  friend bool operator==(const Bound& a, const Bound& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (!a.value_ || !b.value_) {
      return static_cast<int>(!a.value_) <=> static_cast<int>(!b.value_);
    }
    return *a.value_ <=> *b.value_;
  }

  friend Bound operator+(const Bound& a, const Bound& b) {
    if (!a.value_ || !b.value_) return infinity();
    return *a.value_ + *b.value_;
  }
  friend Bound operator-(const Bound& a, const Exponent& b) {
    if (!a.value_) return infinity();
    return *a.value_ - b;
  }

  friend std::ostream& operator<<(std::ostream& os, const Bound& b) {
    return os << b.str();
  }

 private:
  std::optional<Exponent> value_;
};

inline Bound min(const Bound& a, const Bound& b) { return b < a ? b : a; }

}  // namespace mnfield

#endif  // MNFIELD_EXPONENT_HPP
