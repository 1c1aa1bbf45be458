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

#include <gtest/gtest.h>

#include <random>

#include "padiclab/proj_line.hpp"
#include "padiclab/semigroup.hpp"
#include "test_support.hpp"

namespace padiclab {
namespace {

using testing::random_int;

ProjPoint exact(unsigned long p, long x, long y) { return ProjPoint::from_integers(p, 12, x, y); }

// (1, y) with y known mod p^k.
ProjPoint affine_residue(unsigned long p, int k, const mpz_class& y) {
  return ProjPoint::normalize(PAdic::one(p, k), PAdic::from_residue(p, k, y, k));
}

Mat2 random_unimodular(std::mt19937_64& rng) {
  Mat2 A;
  for (int i = 0; i < 6; ++i) A = A * Mat2::letter(1 + rng() % 4);
  return A;
}

TEST(ProjPointTest, NormalizeExamples) {
  const ProjPoint a = exact(11, 11, 22);
  EXPECT_TRUE(a.first_chart());
  EXPECT_EQ(a.y().a().exact_value(), mpq_class(2));
  const ProjPoint b = exact(11, 0, 7);
  EXPECT_FALSE(b.first_chart());
  EXPECT_TRUE(b.x().is_exact_zero());
  EXPECT_EQ(b.y().a().exact_value(), 1);
  EXPECT_EQ(exact(5, 5, 10).to_string(), exact(5, 1, 2).to_string());
  EXPECT_THROW(exact(5, 0, 0), std::invalid_argument);
}

TEST(ProjPointTest, ProjectivelyEqualInputsAgree) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const long x = 1 + rng() % 500, y = 1 + rng() % 500, s = 1 + rng() % 50;
    EXPECT_EQ(exact(7, x, y).to_string(), exact(7, s * x, s * y).to_string());
  }
}

TEST(ProjDistanceTest, Examples) {
  EXPECT_EQ(proj_distance(exact(11, 1, 0), exact(11, 0, 1)), ExtVal::integer(0));
  EXPECT_TRUE(proj_distance(exact(11, 1, 3), exact(11, 1, 3)).is_infinite());
  EXPECT_EQ(proj_distance(exact(11, 1, 8), exact(11, 1, 4)), ExtVal::integer(0));
  EXPECT_EQ(proj_distance(exact(5, 1, 3), exact(5, 1, 28)), ExtVal::integer(2));
}

TEST(ProjDistanceTest, UnresolvedAtPrecision) {
  const ProjPoint x = affine_residue(5, 4, 17);
  const ProjPoint y = affine_residue(5, 4, 17 + 625 * 3);
  EXPECT_THROW(proj_distance(x, y), PrecisionError);
  const Distance d = try_proj_distance(x, y);
  EXPECT_FALSE(d.resolved);
  EXPECT_EQ(d.value, ExtVal::integer(4));
  EXPECT_TRUE(within(x, y, 4));
  EXPECT_THROW(within(x, y, 5), PrecisionError);
}

TEST(ProjDistanceTest, SymmetricAndUltrametric) {
  std::mt19937_64 rng(5);
  const unsigned long p = 3;
  for (int i = 0; i < 500; ++i) {
    const ProjPoint u = exact(p, random_int(rng, 500).get_si(), 1 + random_int(rng, 500).get_si());
    const ProjPoint v = exact(p, random_int(rng, 500).get_si(), 1 + random_int(rng, 500).get_si());
    const ProjPoint w = exact(p, random_int(rng, 500).get_si(), 1 + random_int(rng, 500).get_si());
    const ExtVal uv = proj_distance(u, v), vw = proj_distance(v, w), uw = proj_distance(u, w);
    EXPECT_EQ(uv, proj_distance(v, u));
    EXPECT_GE(uw, min(uv, vw));
    EXPECT_GE(uv, ExtVal::integer(0));
  }
}

TEST(ApplyMatrixTest, Examples) {
  const ProjPoint x = exact(11, 3, 5);
  EXPECT_EQ(apply_matrix(Mat2::identity(), x).to_string(), x.to_string());
  EXPECT_EQ(apply_matrix(Mat2::letter(1), exact(11, 0, 1)).to_string(), exact(11, 1, 1).to_string());
  EXPECT_THROW(apply_matrix(Mat2(11, 0, 0, 1), x), std::invalid_argument);
}

TEST(ApplyMatrixTest, FixesEigenvectorOfA1) {
  const EigenData e = eigen_decompose(Mat2::letter(1), 11, 10);
  ASSERT_TRUE(e.v1 && e.v2);
  const ProjPoint& v = e.v1->free_coordinate().a().residue(1) == 8 ? *e.v1 : *e.v2;
  EXPECT_EQ(v.free_coordinate().a().residue(1), 8);
  EXPECT_TRUE(within(apply_matrix(Mat2::letter(1), v), v, 9));
}

TEST(ApplyMatrixTest, PreservesNormalizationAndComposes) {
  std::mt19937_64 rng(9);
  const unsigned long p = 5;
  for (int i = 0; i < 200; ++i) {
    const ProjPoint x = affine_residue(p, 10, random_int(rng, ipow(p, 10)));
    const Mat2 A = random_unimodular(rng), B = random_unimodular(rng);
    const ProjPoint ax = apply_matrix(A, x);
    if (ax.first_chart()) {
      EXPECT_EQ(ax.x().a().exact_value(), 1);
      EXPECT_GE(padic_norm(ax.y()), ExtVal::integer(0));
    } else {
      EXPECT_EQ(ax.y().a().exact_value(), 1);
      EXPECT_GT(padic_norm(ax.x()), ExtVal::integer(0));
    }
    EXPECT_TRUE(within(apply_matrix(A * B, x), apply_matrix(A, apply_matrix(B, x)), 10));
  }
}

TEST(ApplyMatrixTest, ReductionCommutesWithAction) {
  std::mt19937_64 rng(21);
  const unsigned long p = 3;
  const int k = 6;
  for (int i = 0; i < 200; ++i) {
    const ProjPoint x = affine_residue(p, k + 2, random_int(rng, ipow(p, k + 2)));
    const Mat2 A = random_unimodular(rng);
    EXPECT_EQ(reduce_point(apply_matrix(A, x), p, k), apply_mod(A.reduce(p, k), reduce_point(x, p, k), p));
  }
  EXPECT_THROW(reduce_point(affine_residue(p, 3, 5), p, 4), PrecisionError);
}

// If A = B mod p^k then d(Aw, v) <= max(d(Bw, v), p^-k).
TEST(ProjDistanceTest, CongruentMatricesMoveClose) {
  std::mt19937_64 rng(23);
  const unsigned long p = 5;
  const int k = 3;
  const long pk = 125;
  for (int i = 0; i < 300; ++i) {
    const Mat2 A = random_unimodular(rng);
    // B = A * (I + p^k N) has det +-1 only for special N; take B = A * C with C = I mod p^k.
    const Mat2 C = Mat2::unipotent(pk * (1 + static_cast<long>(rng() % 7))) *
                   Mat2(1, pk * static_cast<long>(rng() % 5), 0, 1);
    const Mat2 B = A * C;
    const ProjPoint w = exact(p, random_int(rng, 1000).get_si(), 1 + random_int(rng, 1000).get_si());
    const ProjPoint v = exact(p, random_int(rng, 1000).get_si(), 1 + random_int(rng, 1000).get_si());
    const ExtVal lhs = proj_distance(apply_matrix(B, w), v);
    const ExtVal rhs = min(proj_distance(apply_matrix(A, w), v), ExtVal::integer(k));
    EXPECT_GE(lhs, rhs);
  }
}

// A point q within p^-k of the trajectory point x_l: any u close to q is
// also close to x_l, up to p^-k.
TEST(ProjDistanceTest, TrajectoryNeighbourhoodTransfersBounds) {
  std::mt19937_64 rng(29);
  const unsigned long p = 7;
  const int k = 4;
  const Word w = parse_word("12112121");
  const ProjPoint x = exact(p, 2, 9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t l = rng() % w.size();
    const ProjPoint xl = apply_matrix(matrix_of_word(w.substr(0, l)).transpose(), x);
    const Mat2 nudge = Mat2::unipotent(static_cast<long>(ipow(p, k).get_si()) * (1 + static_cast<long>(rng() % 9)));
    const ProjPoint q = apply_matrix(nudge, xl);
    ASSERT_TRUE(within(q, xl, k));
    const ProjPoint u = exact(p, random_int(rng, 2000).get_si(), 1 + random_int(rng, 2000).get_si());
    const ExtVal delta = proj_distance(u, q);
    EXPECT_GE(proj_distance(u, xl), min(delta, ExtVal::integer(k)));
  }
}

// Direct scan of |a + b y|_p max(a^2, b^2) with y a residue mod p^k.
ScaledPower pbad_oracle(unsigned long p, int k, const mpz_class& y, long B) {
  const mpz_class mod = ipow(p, k);
  ScaledPower best;
  bool have = false;
  for (long b = 0; b <= B; ++b) {
    for (long a = -B; a <= B; ++a) {
      if (b == 0 && a <= 0) continue;
      mpz_class r = mod_floor(a + b * y, mod);
      long v = k;
      if (r != 0) v = remove_factor(r, p);
      const long h = std::max(a * a, b * b);
      const ScaledPower c(p, mpq_class(h), -2 * v);
      if (!have || c < best) best = c, have = true;
    }
  }
  return best;
}

TEST(PBadTest, RationalPointIsNotBadlyApproximable) {
  const PBadReport r = pbad_estimate(exact(11, 0, 1), 10);
  EXPECT_TRUE(r.epsilon.is_zero());
  EXPECT_EQ(std::abs(r.witness_a) + std::abs(r.witness_b), 1);
}

TEST(PBadTest, EigenvectorOfA1MatchesDirectScan) {
  const int k = 16;
  const EigenData e = eigen_decompose(Mat2::letter(1), 11, k);
  ASSERT_TRUE(e.v1);
  const mpz_class y = e.v1->free_coordinate().a().residue(k);
  ScaledPower prev;
  for (long B : {10L, 50L, 100L}) {
    const PBadReport r = pbad_estimate(*e.v1, B);
    EXPECT_FALSE(r.precision_limited);
    EXPECT_FALSE(r.epsilon.is_zero());
    EXPECT_EQ(r.epsilon, pbad_oracle(11, k, y, B)) << "B=" << B;
    if (B > 10) EXPECT_LE(r.epsilon, prev);
    prev = r.epsilon;
  }
  EXPECT_EQ(prev.to_string(), "9*11^(-1)");
}

TEST(PBadTest, ImageOfBadPointStaysBad) {
  const EigenData e = eigen_decompose(Mat2::letter(1), 11, 16);
  for (const Word& w : {parse_word("2"), parse_word("13"), parse_word("221")}) {
    const PBadReport r = pbad_estimate(apply_matrix(matrix_of_word(w), *e.v1), 30);
    EXPECT_FALSE(r.epsilon.is_zero()) << format_word(w);
  }
}

TEST(PBadTest, NonIncreasingInBound) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const ProjPoint x = affine_residue(3, 14, random_int(rng, ipow(3, 14)));
    ScaledPower prev;
    for (long B = 1; B <= 25; B += 4) {
      const PBadReport r = pbad_estimate(x, B);
      if (B > 1) EXPECT_LE(r.epsilon, prev);
      prev = r.epsilon;
    }
  }
}

}  // namespace
}  // namespace padiclab
