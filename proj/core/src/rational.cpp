// Copyright 2025 The ssd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssd/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

#include "ssd/error.hpp"

namespace ssd {
namespace {

using Wide = Int128;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  *this = reduce(numerator, denominator);
}

Rational Rational::reduce(Wide numerator, Wide denominator) {
  if (denominator == 0) throw InvalidArgument("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  Wide g = wide_gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (!fits(numerator) || !fits(denominator)) {
    throw InternalError("rational arithmetic overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(numerator);
  r.den_ = static_cast<std::int64_t>(denominator);
  return r;
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return reduce(-Wide{num_}, den_); }

Rational& Rational::operator+=(const Rational& other) {
  *this = reduce(Wide{num_} * other.den_ + Wide{other.num_} * den_,
                 Wide{den_} * other.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  *this = reduce(Wide{num_} * other.den_ - Wide{other.num_} * den_,
                 Wide{den_} * other.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  *this = reduce(Wide{num_} * other.num_, Wide{den_} * other.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) throw InvalidArgument("rational division by zero");
  *this = reduce(Wide{num_} * other.den_, Wide{den_} * other.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide{a.num_} * b.den_;
  Wide rhs = Wide{b.num_} * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

}  // namespace ssd
