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

#ifndef SSD_ALGEBRA_HPP_
#define SSD_ALGEBRA_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ssd {

bool is_prime(int value);

struct PrimePower {
  int prime = 0;
  int degree = 0;
};

// Decomposes q = p^u, or nullopt when q is not a prime power.
std::optional<PrimePower> prime_power(int q);

// Monic irreducible polynomial of degree u over GF(p) as coefficients
// (b_0, ..., b_u), b_u = 1. Among all candidates the one with the smallest
// base-p encoding sum(b_i p^i), i < u, is returned, which matches the
// element encoding used by GaloisField.
std::vector<int> find_irreducible(int p, int u);

// GF(p^u). Elements are 0..q-1; the base-p digits of an element are its
// polynomial coefficients, least significant digit first.
class GaloisField {
 public:
  static constexpr int kMaxOrder = 1 << 16;
  // Orders up to this bound get full q x q operation tables.
  static constexpr int kFullTableOrder = 256;

  GaloisField(int p, int u);

  int prime() const noexcept { return p_; }
  int degree() const noexcept { return u_; }
  int order() const noexcept { return q_; }
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  // A generator of the multiplicative group.
  int primitive() const noexcept { return exp_[1]; }

 private:
  int digit_add(int a, int b, bool subtract) const;
  void check(int a) const;

  int p_;
  int u_;
  int q_;
  std::vector<int> modulus_;
  std::vector<int> add_;  // q*q, only when q <= kFullTableOrder
  std::vector<int> neg_;
  std::vector<int> log_;  // log_[0] unused
  std::vector<int> exp_;  // exp_[k] = g^k for k < 2(q-1)
};

GaloisField gf_build(int p, int u);

// Z_q under addition mod q.
class CyclicGroup {
 public:
  explicit CyclicGroup(int q);
  int order() const noexcept { return q_; }
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;

 private:
  void check(int a) const;
  int q_;
};

// Uniform handle on the additive group used by Kronecker sums and
// difference matrices: either Z_q or the additive group of GF(q).
// Cheap to copy; the field tables are shared.
class Group {
 public:
  static Group cyclic(int q);
  static Group galois(int q);
  static Group additive(std::shared_ptr<const GaloisField> field);
  // GF(q) when q is a prime power, Z_q otherwise.
  static Group for_order(int q);
  // Parses names produced by name(): "Z6", "GF(4)".
  static Group parse(const std::string& name);

  int order() const noexcept { return order_; }
  bool is_field() const noexcept { return field_ != nullptr; }
  const GaloisField* field() const noexcept { return field_.get(); }
  std::string name() const;

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;

  friend bool operator==(const Group& a, const Group& b);

 private:
  Group(int order, std::shared_ptr<const GaloisField> field)
      : order_(order), field_(std::move(field)) {}

  int order_;
  std::shared_ptr<const GaloisField> field_;
};

int group_add(const Group& group, int a, int b);

}  // namespace ssd

#endif  // SSD_ALGEBRA_HPP_
