// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "padiclab/words.hpp"

namespace padiclab {

class Mat2Mod;

/// 2x2 matrix with arbitrary-precision integer entries [[a, b], [c, d]].
class Mat2 {
 public:
  Mat2() : Mat2(1, 0, 0, 1) {}
  Mat2(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static Mat2 identity() { return {}; }
  /// Letter matrix [[0, 1], [1, a]].
  static Mat2 letter(unsigned long a) { return {0, 1, 1, a}; }
  /// Unipotent [[1, 0], [a, 1]].
  static Mat2 unipotent(const mpz_class& a) { return {1, 0, a, 1}; }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& d() const { return d_; }

  mpz_class det() const { return a_ * d_ - b_ * c_; }
  mpz_class trace() const { return a_ + d_; }
  /// tr^2 - 4 det.
  mpz_class discriminant() const;

  Mat2 transpose() const { return {a_, c_, b_, d_}; }
  /// Inverse of a matrix with determinant +-1.
  Mat2 inverse() const;
  Mat2 pow(unsigned long n) const;
  Mat2Mod reduce(unsigned long p, int k) const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) = default;

  std::string to_string() const;

 private:
  mpz_class a_, b_, c_, d_;
};

/// A_w = A_{w_1} ... A_{w_n}; the empty word maps to the identity.
Mat2 matrix_of_word(const Word& w);

/// 2x2 matrix over Z/p^k with p^k < 2^62.
class Mat2Mod {
 public:
  Mat2Mod() = default;
  Mat2Mod(std::uint64_t modulus, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);
  static Mat2Mod identity(std::uint64_t modulus) { return {modulus, 1, 0, 0, 1}; }

  std::uint64_t modulus() const { return m_; }
  const std::array<std::uint64_t, 4>& entries() const { return e_; }
  std::uint64_t det() const;
  bool is_identity() const { return e_[0] == 1 % m_ && e_[1] == 0 && e_[2] == 0 && e_[3] == 1 % m_; }

  Mat2Mod transpose() const { return {m_, e_[0], e_[2], e_[1], e_[3]}; }
  /// Inverse when the determinant is a unit.
  Mat2Mod inverse(unsigned long p) const;
  Mat2Mod pow(std::uint64_t n) const;

  friend Mat2Mod operator*(const Mat2Mod& x, const Mat2Mod& y);
  friend bool operator==(const Mat2Mod& x, const Mat2Mod& y) = default;
  friend auto operator<=>(const Mat2Mod& x, const Mat2Mod& y) = default;

  /// Fixed-width text, e.g. "[1 2;1 3]".
  std::string to_string() const;

 private:
  std::uint64_t m_ = 1;
  std::array<std::uint64_t, 4> e_{0, 0, 0, 0};
};

struct Mat2ModHash {
  std::size_t operator()(const Mat2Mod& x) const noexcept;
};

/// x * y mod m without overflow.
std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t m);

/// p^k as a machine word; throws if it does not fit below 2^62.
std::uint64_t modulus_of(unsigned long p, int k);

/// Multiplicative order of a matrix in GL2(Z/p^k), via the order mod p and
/// lifting through the p-group kernel.
mpz_class order_mod(const Mat2& A, unsigned long p, int k);

/// Size bound for the group of det +-1 matrices mod p^k, saturating at
/// 2^64 - 1.
std::uint64_t group_order_bound(unsigned long p, int k);

}  // namespace padiclab
