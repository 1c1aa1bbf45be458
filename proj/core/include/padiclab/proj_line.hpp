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

#include <cstdint>
#include <optional>
#include <string>

#include "padiclab/mat2.hpp"
#include "padiclab/numeric.hpp"
#include "padiclab/padic.hpp"

namespace padiclab {

/// Point of P^1 over Q_p or over a quadratic extension, in canonical form.
///
/// The representative is (1, y) with |y| <= 1 when |x| >= |y|, otherwise
/// (x, 1) with |x| < 1. Projectively equal inputs give identical coordinates.
class ProjPoint {
 public:
  ProjPoint() = default;
  static ProjPoint normalize(const QuadExt& x, const QuadExt& y);
  static ProjPoint normalize(const PAdic& x, const PAdic& y);
  /// Exact point with integer coordinates.
  static ProjPoint from_integers(unsigned long p, int cap, const mpz_class& x, const mpz_class& y);
  /// The point (w, 1).
  static ProjPoint affine(const PAdic& w);

  const QuadExt& x() const { return x_; }
  const QuadExt& y() const { return y_; }
  unsigned long prime() const { return x_.prime(); }
  int cap() const { return std::max(x_.cap(), y_.cap()); }
  /// True for the (1, y) chart.
  bool first_chart() const { return first_; }
  /// Coordinate that is not pinned to 1.
  const QuadExt& free_coordinate() const { return first_ ? y_ : x_; }
  /// True when a coordinate lies outside Q_p.
  bool is_quadratic() const { return !x_.in_base_field() || !y_.in_base_field(); }

  std::string to_string() const;

 private:
  QuadExt x_, y_;
  bool first_ = true;
};

/// d(w, v) = |w1 v2 - w2 v1|_p on canonical representatives.
struct Distance {
  /// Exact exponent when resolved; otherwise a lower bound on it, i.e.
  /// d <= p^(-value).
  ExtVal value;
  bool resolved = true;
};

Distance try_proj_distance(const ProjPoint& w, const ProjPoint& v);
/// Throws PrecisionError when the points agree to every known digit.
ExtVal proj_distance(const ProjPoint& w, const ProjPoint& v);
/// d(w, v) <= p^(-k); throws PrecisionError when undecidable.
bool within(const ProjPoint& w, const ProjPoint& v, long k);

/// A x for an integer matrix with unit determinant.
ProjPoint apply_matrix(const Mat2& A, const ProjPoint& x);

/// Class of a Q_p point modulo p^k: two points lie within p^(-k) of each
/// other exactly when their classes coincide.
struct ProjPointMod {
  bool first_chart = true;
  std::uint64_t residue = 0;
  friend bool operator==(const ProjPointMod&, const ProjPointMod&) = default;
  friend auto operator<=>(const ProjPointMod&, const ProjPointMod&) = default;
};

struct ProjPointModHash {
  std::size_t operator()(const ProjPointMod& x) const noexcept {
    return std::hash<std::uint64_t>{}(x.residue * 2 + (x.first_chart ? 1 : 0));
  }
};

/// Reduction of a Q_p point; throws PrecisionError when fewer than k digits
/// of the free coordinate are known.
ProjPointMod reduce_point(const ProjPoint& x, unsigned long p, int k);
/// Action of a matrix mod p^k (unit determinant) on point classes.
ProjPointMod apply_mod(const Mat2Mod& A, const ProjPointMod& x, unsigned long p);

/// Best constant of the p-adic bad-approximability inequality over a box.
struct PBadReport {
  ProjPoint point;
  long bound = 0;
  /// min over primitive (a, b) with 0 < max(|a|,|b|) <= B of
  /// |a q1 + b q2|_p * max(a^2, b^2).
  ScaledPower epsilon;
  long witness_a = 0;
  long witness_b = 0;
  /// Some pair could not be resolved and might undercut epsilon.
  bool precision_limited = false;
};

/// Exhaustive scan. Pairs are taken up to sign (b > 0, or b = 0 and a > 0);
/// pairs with a common factor never lower the minimum and are skipped. Ties
/// go to the smallest (|a| + |b|, a, b).
PBadReport pbad_estimate(const ProjPoint& x, long B);

}  // namespace padiclab
