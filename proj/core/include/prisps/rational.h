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

#ifndef PRISPS_RATIONAL_H_
#define PRISPS_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <string>

namespace prisps {

// Exact fraction with a positive denominator, always in lowest terms. Used to
// express per-slot privacy budgets as multiples of the window budget so that
// schedules and window sums are compared without rounding.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int64_t numerator, int64_t denominator = 1);

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / den_; }

  // "1/3", "2", "-5/6".
  std::string ToString() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace prisps

#endif  // PRISPS_RATIONAL_H_
