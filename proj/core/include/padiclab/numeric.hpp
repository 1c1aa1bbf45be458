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

#include <compare>
#include <string>
#include <vector>

#include "padiclab/padic.hpp"

namespace padiclab {

/// floor(sqrt(n)) for n >= 0.
mpz_class isqrt(const mpz_class& n);

/// A nonnegative real of the form coeff * p^(twice/2), compared exactly.
///
/// Used for radicands and bounds that mix rational factors with powers of p,
/// possibly with half-integer exponents.
class ScaledPower {
 public:
  ScaledPower() = default;
  ScaledPower(unsigned long p, mpq_class coeff, long twice_exponent);
  static ScaledPower from_norm(unsigned long p, ExtVal norm);

  unsigned long prime() const { return p_; }
  const mpq_class& coeff() const { return coeff_; }
  long twice_exponent() const { return twice_; }
  bool is_zero() const { return coeff_ == 0; }

  ScaledPower operator*(const ScaledPower& o) const;
  ScaledPower operator/(const ScaledPower& o) const;
  ScaledPower operator*(const mpq_class& q) const;

  friend bool operator==(const ScaledPower& a, const ScaledPower& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const ScaledPower& a, const ScaledPower& b);

  /// Compares sqrt(*this) with an integer without rounding.
  bool sqrt_at_least(const mpz_class& n) const;
  /// floor of the value.
  mpz_class floor() const;
  /// floor of sqrt(value).
  mpz_class floor_sqrt() const;

  double to_double() const;
  /// e.g. "9/11", "2*5^(-7/2)", "0".
  std::string to_string() const;

 private:
  unsigned long p_ = 2;
  mpq_class coeff_ = 0;
  long twice_ = 0;
  void normalize();
  /// coeff^2 * p^twice as an exact rational.
  mpq_class squared() const;
};

/// The real number (a + b*sqrt(D)) / c with D > 0 not a square and c > 0.
class RealQuadratic {
 public:
  RealQuadratic() = default;
  RealQuadratic(mpz_class a, mpz_class b, mpz_class D, mpz_class c);
  static RealQuadratic rational(const mpq_class& q);
  static RealQuadratic golden_ratio() { return {1, 1, 5, 2}; }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& D() const { return D_; }
  const mpz_class& c() const { return c_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  mpz_class floor() const;

  RealQuadratic operator+(const RealQuadratic& o) const;
  RealQuadratic operator-(const RealQuadratic& o) const;
  RealQuadratic operator-() const;
  RealQuadratic operator*(const mpz_class& n) const;
  RealQuadratic operator+(const mpz_class& n) const;
  RealQuadratic operator-(const mpz_class& n) const;
  RealQuadratic inverse() const;

  friend std::strong_ordering operator<=>(const RealQuadratic& x, const RealQuadratic& y);
  friend bool operator==(const RealQuadratic& x, const RealQuadratic& y) { return (x <=> y) == 0; }

  /// Distance to the nearest integer.
  RealQuadratic distance_to_nearest_integer() const;
  /// First n partial quotients [a0; a1, ..., a_{n-1}].
  std::vector<mpz_class> continued_fraction(std::size_t n) const;

  double to_double() const;
  std::string to_string() const;

 private:
  mpz_class a_ = 0, b_ = 0, D_ = 2, c_ = 1;
  void reduce();
  void check_compatible(const RealQuadratic& o) const;
};

}  // namespace padiclab
