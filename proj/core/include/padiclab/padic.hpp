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

#include <climits>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace padiclab {

/// Raised when a quantity cannot be resolved with the digits that are known.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent of a p-adic absolute value: |x|_p = p^(-e) with e in (1/2)Z,
/// or e = +inf for x = 0.
///
/// Values are ordered by exponent, so a larger ExtVal is a smaller absolute
/// value. Half-integer exponents come from ramified quadratic extensions.
class ExtVal {
 public:
  constexpr ExtVal() = default;

  static constexpr ExtVal integer(long e) { return ExtVal(false, 2 * e); }
  static constexpr ExtVal halves(long twice_e) { return ExtVal(false, twice_e); }
  static constexpr ExtVal infinity() { return ExtVal(true, 0); }
  /// Inverse of to_string(): accepts "p^-3", "p^-7/2", "p^2", "1", "0".
  static ExtVal parse(const std::string& text);

  bool is_infinite() const { return inf_; }
  /// Numerator / denominator of the reduced exponent (denominator is 1 or 2).
  long numerator() const;
  long denominator() const;
  long twice() const;
  bool is_integral() const { return !inf_ && twice_ % 2 == 0; }

  ExtVal operator+(ExtVal other) const;
  ExtVal operator-(ExtVal other) const;
  ExtVal operator-() const;
  ExtVal scaled(long n) const;

  friend bool operator==(ExtVal a, ExtVal b) { return a.inf_ == b.inf_ && a.twice_ == b.twice_; }
  friend std::strong_ordering operator<=>(ExtVal a, ExtVal b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.twice_ <=> b.twice_;
  }

  /// Absolute value as an exponent string: "p^-3", "p^-7/2", "p^0", "0".
  std::string to_string() const;
  /// Same with the prime spelled out, e.g. "11^-3".
  std::string to_string(unsigned long p) const;
  /// Decimal approximation of p^(-e); for humans only.
  double to_double(unsigned long p) const;

 private:
  constexpr ExtVal(bool inf, long twice) : inf_(inf), twice_(twice) {}
  bool inf_ = false;
  long twice_ = 0;
};

inline ExtVal min(ExtVal a, ExtVal b) { return a < b ? a : b; }
inline ExtVal max(ExtVal a, ExtVal b) { return a < b ? b : a; }

/// Element of Q_p with tracked valuation and precision.
///
/// A value is either exact (an integer unit times a power of p, as produced by
/// integer inputs), or known modulo p^(valuation + relative_precision). The
/// unit of an inexact value is a residue in [1, p^r - 1] prime to p. A value
/// whose digits cancelled completely is "indistinguishable from zero": its
/// relative precision is 0 and valuation() reports the known absolute precision
/// through valuation_lower_bound(). The cap bounds the relative precision of
/// every inexact result.
class PAdic {
 public:
  static constexpr int kExact = INT_MAX;
  static constexpr long kInfinite = LONG_MAX;

  PAdic() = default;

  static PAdic zero(unsigned long p, int cap);
  static PAdic one(unsigned long p, int cap);
  static PAdic from_integer(unsigned long p, int cap, const mpz_class& n);
  static PAdic from_integer(unsigned long p, int cap, long n) {
    return from_integer(p, cap, mpz_class(n));
  }
  static PAdic from_rational(unsigned long p, int cap, const mpq_class& q);
  /// Value known only modulo p^abs_precision.
  static PAdic from_residue(unsigned long p, int cap, const mpz_class& residue, long abs_precision);
  /// Zero known to absolute precision abs_precision.
  static PAdic approximate_zero(unsigned long p, int cap, long abs_precision);

  unsigned long prime() const { return p_; }
  int cap() const { return cap_; }

  bool is_exact() const { return prec_ == kExact; }
  bool is_exact_zero() const { return val_ == kInfinite; }
  bool is_indistinguishable_from_zero() const { return prec_ == 0; }

  /// Throws PrecisionError when no digit is known.
  long valuation() const;
  /// Exact valuation when known, otherwise the absolute precision.
  long valuation_lower_bound() const { return val_; }
  int relative_precision() const { return prec_; }
  long absolute_precision() const;
  const mpz_class& unit() const { return unit_; }

  /// Value mod p^n as a residue in [0, p^n). Requires valuation >= 0 and
  /// n <= absolute_precision().
  mpz_class residue(long n) const;
  /// Exact rational value when is_exact(); throws otherwise.
  mpq_class exact_value() const;

  PAdic operator-() const;
  PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
  PAdic& operator-=(const PAdic& o) { return *this = *this - o; }
  PAdic& operator*=(const PAdic& o) { return *this = *this * o; }
  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  friend PAdic operator/(const PAdic& a, const PAdic& b) { return a * b.inverse(); }

  PAdic inverse() const;
  PAdic pow(unsigned long n) const;
  /// Keep at most rel relative digits (exact values become inexact).
  PAdic truncated(int rel) const;
  /// Known only modulo p^abs: drops digits beyond the absolute precision.
  PAdic truncated_absolute(long abs) const;
  PAdic with_cap(int cap) const;

  /// Equality of the known digits; throws PrecisionError when the difference
  /// has no significant digit and at least one side is inexact.
  bool equals(const PAdic& o) const;
  /// True when the difference is zero to the available precision.
  bool agrees_with(const PAdic& o) const;

  std::string to_string() const;

 private:
  unsigned long p_ = 2;
  int cap_ = 1;
  long val_ = kInfinite;
  int prec_ = kExact;
  mpz_class unit_ = 0;

  void check_compatible(const PAdic& o) const;
};

/// Element a + b*w of Q_p(w), w^2 = disc.
///
/// A disc of 0 marks an element of the base field (b is then zero); it is
/// promoted to the other operand's extension on mixed arithmetic. Two nonzero
/// discriminants must match.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(PAdic a, PAdic b, mpz_class disc);
  static QuadExt embed(const PAdic& a);

  unsigned long prime() const { return a_.prime(); }
  int cap() const { return a_.cap(); }
  const PAdic& a() const { return a_; }
  const PAdic& b() const { return b_; }
  const mpz_class& disc() const { return disc_; }
  bool in_base_field() const { return disc_ == 0 || b_.is_exact_zero(); }
  bool is_exact() const { return a_.is_exact() && b_.is_exact(); }
  bool is_exact_zero() const { return a_.is_exact_zero() && b_.is_exact_zero(); }
  /// True when the norm has no known significant digit.
  bool is_indistinguishable_from_zero() const;

  QuadExt conj() const;
  /// a^2 - disc * b^2, an element of Q_p.
  PAdic norm() const;
  /// Half of the valuation of the norm; throws PrecisionError.
  ExtVal valuation() const;
  /// Largest valuation consistent with the known digits.
  ExtVal valuation_lower_bound() const;

  QuadExt operator-() const;
  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
  QuadExt inverse() const;
  QuadExt pow(unsigned long n) const;
  QuadExt with_cap(int cap) const;

  std::string to_string() const;

 private:
  PAdic a_, b_;
  mpz_class disc_ = 0;
};

enum class QuadOp { add, mul, inv, conj };

/// |x|_p as an exact exponent.
ExtVal padic_norm(const PAdic& x);
ExtVal padic_norm(const QuadExt& x);

/// Logarithm by its power series around 1, for |x - 1|_p < 1.
///
/// The series is summed with guard digits k + ceil(log_p(terms)) + 2 and the
/// result is returned at the input's cap. Throws std::domain_error outside the
/// disc of convergence.
PAdic padic_log(const PAdic& x);
QuadExt padic_log(const QuadExt& x);

/// Square root by Hensel lifting, or nullopt when none exists in Q_p.
///
/// Of the two roots the one whose unit residue is at most (p^r - 1)/2 is
/// returned. p = 2 needs three known digits and loses one.
std::optional<PAdic> hensel_sqrt(const PAdic& d);

/// Dispatch over the four quadratic-extension operations; y is ignored for
/// the unary ones.
QuadExt quad_arith(const QuadExt& x, const QuadExt& y, QuadOp op);

/// Multiplicative inverse of a modulo m (gcd must be 1).
mpz_class inverse_mod(const mpz_class& a, const mpz_class& m);
/// p^e as a big integer.
mpz_class ipow(unsigned long p, unsigned long e);
/// Removes all factors p from n, returning how many were removed (n != 0).
long remove_factor(mpz_class& n, unsigned long p);
/// n mod m in [0, m).
mpz_class mod_floor(const mpz_class& n, const mpz_class& m);
bool is_prime(unsigned long p);

}  // namespace padiclab
