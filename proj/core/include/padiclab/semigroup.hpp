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

#include <optional>
#include <string>

#include "padiclab/mat2.hpp"
#include "padiclab/proj_line.hpp"

namespace padiclab {

enum class EigenClass { split_distinct, quad_distinct, non_semisimple };

std::string to_string(EigenClass c);

/// Eigen-structure of an integer matrix with determinant +-1, seen over Q_p.
struct EigenData {
  EigenClass cls = EigenClass::non_semisimple;
  /// tr^2 - 4 det = scale^2 * radicand.
  mpz_class discriminant;
  mpz_class scale;
  mpz_class radicand;
  /// The extension Q_p(sqrt(radicand)) is ramified.
  bool ramified = false;
  /// lambda1 = (tr + scale * sqrt(radicand)) / 2, lambda2 its conjugate.
  QuadExt lambda1, lambda2;
  /// Eigenvectors of the transpose, paired with lambda1 / lambda2. For the
  /// non-semisimple class both hold the single eigenvector when it exists.
  std::optional<ProjPoint> v1, v2;
};

/// Splits over Q_p when the radicand is a p-adic square (roots from
/// hensel_sqrt and its sign convention), otherwise works in Q_p(w), w^2 =
/// radicand, with lambda1 = tr/2 + (scale/2) w.
EigenData eigen_decompose(const Mat2& A, unsigned long p, int k);

/// Least t >= 1 with |lambda^t - 1|_p <= 1/p for both eigenvalues.
///
/// Found among the divisors of the order of x in (F_p[x] / (x^2 - tr x + det))^*,
/// which always satisfies the condition.
unsigned long kappa(const Mat2& A, unsigned long p);

struct TildeSlVerdict {
  bool member = false;
  std::string reason;
};

/// Membership in the set of det +-1 matrices with two distinct eigenvectors
/// and no root-of-unity eigenvalue.
TildeSlVerdict in_tilde_sl(const Mat2& A);

/// |log(lambda1^(4 kappa))|_p. Retries at higher precision when the value
/// vanishes at precision k; throws PrecisionError after 4k digits.
ExtVal eps3(const Mat2& A, unsigned long p, int k);

/// det(AB - BA) == 0, i.e. A and B have a common eigenvector over the
/// algebraic closure.
bool share_eigenvector(const Mat2& A, const Mat2& B);

}  // namespace padiclab
