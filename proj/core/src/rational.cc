// Copyright 2026 The PriSPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prisps/rational.h"

#include <numeric>
#include <stdexcept>

#include "str_util.h"

namespace prisps {
namespace {

// Overflow is a programming error for the small denominators schedules use.
int64_t Checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational overflow");
  return static_cast<int64_t>(v);
}

Rational Make(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(Checked(num), Checked(den));
}

}  // namespace

Rational::Rational(int64_t numerator, int64_t denominator) {
  if (denominator == 0) throw std::domain_error("Rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const int64_t g = std::gcd(numerator, denominator);
  num_ = g > 1 ? numerator / g : numerator;
  den_ = g > 1 ? denominator / g : denominator;
}

std::string Rational::ToString() const {
  if (den_ == 1) return StrCat(num_);
  return StrCat(num_, "/", den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Make(static_cast<__int128>(a.num_) * b.den_ +
                  static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Make(static_cast<__int128>(a.num_) * b.den_ -
                  static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Make(static_cast<__int128>(a.num_) * b.num_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational division by zero");
  return Make(static_cast<__int128>(a.num_) * b.den_,
              static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace prisps
