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

#include "ssd/algebra.hpp"

#include <map>
#include <mutex>
#include <string>

#include "ssd/error.hpp"

namespace ssd {
namespace {

using Poly = std::vector<int>;  // coefficients, lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inverse_mod_prime(int a, int p) {
  int result = 1;
  int base = a % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// Remainder of a modulo b over GF(p); b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const int lead_inv = inverse_mod_prime(b.back(), p);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int factor = a.back() * lead_inv % p;
    for (int i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly decode(int value, int p, int length) {
  Poly digits(length, 0);
  for (int i = 0; i < length; ++i) {
    digits[i] = value % p;
    value /= p;
  }
  return digits;
}

int encode(const Poly& digits, int p) {
  int value = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    value = value * p + digits[i];
  }
  return value;
}

bool is_irreducible(const Poly& g, int p) {
  const int u = static_cast<int>(g.size()) - 1;
  for (int d = 1; 2 * d <= u; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      Poly factor = decode(code, p, d);
      factor.push_back(1);
      if (poly_mod(g, factor, p).empty()) return false;
    }
  }
  return true;
}

int checked_power(int base, int exponent, int limit) {
  long long value = 1;
  for (int i = 0; i < exponent; ++i) {
    value *= base;
    if (value > limit) return -1;
  }
  return static_cast<int>(value);
}

}  // namespace

bool is_prime(int value) {
  if (value < 2) return false;
  for (int d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (q % p != 0) ++p;
  int u = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++u;
  }
  if (rest != 1) return std::nullopt;
  return PrimePower{p, u};
}

std::vector<int> find_irreducible(int p, int u) {
  if (!is_prime(p)) {
    throw InvalidArgument("find_irreducible: " + std::to_string(p) +
                          " is not prime");
  }
  if (u < 1) throw InvalidArgument("find_irreducible: degree must be >= 1");
  const int count = checked_power(p, u, GaloisField::kMaxOrder);
  if (count < 0) {
    throw InvalidArgument("find_irreducible: p^u exceeds the supported order");
  }
  for (int code = 0; code < count; ++code) {
    Poly g = decode(code, p, u);
    g.push_back(1);
    if (is_irreducible(g, p)) return g;
  }
  throw InternalError("no irreducible polynomial found");
}

GaloisField::GaloisField(int p, int u) : p_(p), u_(u) {
  modulus_ = find_irreducible(p, u);
  q_ = checked_power(p, u, kMaxOrder);

  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) neg_[a] = digit_add(0, a, true);
  if (q_ <= kFullTableOrder) {
    add_.resize(static_cast<size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) add_[a * q_ + b] = digit_add(a, b, false);
    }
  }

  // Multiplication by x is a shift followed by reduction; multiplication by
  // a general element is Horner's rule over those.
  auto times_x = [&](int a) {
    Poly digits = decode(a, p_, u_);
    digits.insert(digits.begin(), 0);
    return encode(poly_mod(digits, modulus_, p_), p_);
  };
  auto slow_mul = [&](int a, int b) {
    Poly digits = decode(b, p_, u_);
    int acc = 0;
    for (int i = u_ - 1; i >= 0; --i) {
      acc = times_x(acc);
      for (int k = 0; k < digits[i]; ++k) acc = digit_add(acc, a, false);
    }
    return acc;
  };

  const int group_order = q_ - 1;
  log_.assign(q_, 0);
  exp_.assign(2 * static_cast<size_t>(group_order) + 1, 1);
  if (q_ == 2) return;
  for (int g = 2; g < q_; ++g) {
    int value = 1;
    int k = 0;
    bool ok = true;
    for (k = 1; k <= group_order; ++k) {
      value = slow_mul(value, g);
      if (value == 1 && k < group_order) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    value = 1;
    for (int e = 0; e < 2 * group_order + 1; ++e) {
      exp_[e] = value;
      if (e < group_order) log_[value] = e;
      value = slow_mul(value, g);
    }
    return;
  }
  throw InternalError("GF(" + std::to_string(q_) +
                      ") has no primitive element");
}

int GaloisField::digit_add(int a, int b, bool subtract) const {
  if (p_ == 2) return a ^ b;
  int result = 0;
  int scale = 1;
  for (int i = 0; i < u_; ++i) {
    const int da = a % p_;
    const int db = b % p_;
    const int d = subtract ? (da - db + p_) % p_ : (da + db) % p_;
    result += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return result;
}

void GaloisField::check(int a) const {
  if (a < 0 || a >= q_) {
    throw InvalidArgument("element " + std::to_string(a) + " outside GF(" +
                          std::to_string(q_) + ")");
  }
}

int GaloisField::add(int a, int b) const {
  check(a);
  check(b);
  if (!add_.empty()) return add_[a * q_ + b];
  return digit_add(a, b, false);
}

int GaloisField::sub(int a, int b) const {
  check(a);
  check(b);
  if (!add_.empty()) return add_[a * q_ + neg_[b]];
  return digit_add(a, b, true);
}

int GaloisField::neg(int a) const {
  check(a);
  return neg_[a];
}

int GaloisField::mul(int a, int b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  if (q_ == 2) return 1;
  return exp_[log_[a] + log_[b]];
}

int GaloisField::inv(int a) const {
  check(a);
  if (a == 0) throw InvalidArgument("zero has no multiplicative inverse");
  if (q_ == 2) return 1;
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GaloisField gf_build(int p, int u) { return GaloisField(p, u); }

CyclicGroup::CyclicGroup(int q) : q_(q) {
  if (q < 1) throw InvalidArgument("group order must be positive");
}

void CyclicGroup::check(int a) const {
  if (a < 0 || a >= q_) {
    throw InvalidArgument("element " + std::to_string(a) + " outside Z" +
                          std::to_string(q_));
  }
}

int CyclicGroup::add(int a, int b) const {
  check(a);
  check(b);
  return (a + b) % q_;
}

int CyclicGroup::sub(int a, int b) const {
  check(a);
  check(b);
  return (a - b + q_) % q_;
}

int CyclicGroup::neg(int a) const {
  check(a);
  return (q_ - a) % q_;
}

Group Group::cyclic(int q) {
  if (q < 1) throw InvalidArgument("group order must be positive");
  return Group(q, nullptr);
}

Group Group::galois(int q) {
  auto pp = prime_power(q);
  if (!pp) {
    throw InvalidArgument(std::to_string(q) + " is not a prime power");
  }
  if (q > GaloisField::kMaxOrder) {
    throw InvalidArgument("field order " + std::to_string(q) +
                          " exceeds the supported maximum");
  }
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[q];
  if (!slot) slot = std::make_shared<const GaloisField>(pp->prime, pp->degree);
  return Group(q, slot);
}

Group Group::additive(std::shared_ptr<const GaloisField> field) {
  if (!field) throw InvalidArgument("null field");
  const int q = field->order();
  return Group(q, std::move(field));
}

Group Group::for_order(int q) {
  if (prime_power(q)) return galois(q);
  return cyclic(q);
}

Group Group::parse(const std::string& name) {
  try {
    if (name.rfind("GF(", 0) == 0 && name.back() == ')') {
      return galois(std::stoi(name.substr(3, name.size() - 4)));
    }
    if (name.rfind("Z", 0) == 0) return cyclic(std::stoi(name.substr(1)));
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("unknown group name '" + name + "'");
}

std::string Group::name() const {
  if (field_) return "GF(" + std::to_string(order_) + ")";
  return "Z" + std::to_string(order_);
}

int Group::add(int a, int b) const {
  if (field_) return field_->add(a, b);
  if (a < 0 || a >= order_ || b < 0 || b >= order_) {
    throw InvalidArgument("element outside " + name());
  }
  return (a + b) % order_;
}

int Group::sub(int a, int b) const {
  if (field_) return field_->sub(a, b);
  if (a < 0 || a >= order_ || b < 0 || b >= order_) {
    throw InvalidArgument("element outside " + name());
  }
  return (a - b + order_) % order_;
}

int Group::neg(int a) const {
  if (field_) return field_->neg(a);
  if (a < 0 || a >= order_) throw InvalidArgument("element outside " + name());
  return (order_ - a) % order_;
}

bool operator==(const Group& a, const Group& b) {
  if (a.order_ != b.order_) return false;
  // Z_p and the additive group of GF(p) coincide.
  return a.is_field() == b.is_field() || is_prime(a.order_);
}

int group_add(const Group& group, int a, int b) { return group.add(a, b); }

}  // namespace ssd
