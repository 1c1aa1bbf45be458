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

#include "padiclab/semigroup.hpp"
#include "test_support.hpp"

namespace padiclab {
namespace {

using testing::all_words;

// Root of x^2 - x - 1 mod p^k lifted digit by digit from r0.
mpz_class golden_root(unsigned long p, int k, long r0) {
  mpz_class r = r0;
  for (int j = 2; j <= k; ++j) {
    const mpz_class pj = ipow(p, j), step = ipow(p, j - 1);
    for (unsigned long t = 0; t < p; ++t) {
      const mpz_class c = r + step * t;
      if (mod_floor(c * c - c - 1, pj) == 0) {
        r = c;
        break;
      }
    }
  }
  return r;
}

TEST(Mat2Test, WordMatrices) {
  EXPECT_EQ(matrix_of_word(parse_word("1")), Mat2(0, 1, 1, 1));
  const Mat2 a12 = matrix_of_word(parse_word("12"));
  EXPECT_EQ(a12, Mat2(1, 2, 1, 3));
  EXPECT_EQ(a12.det(), 1);
  EXPECT_EQ(a12.trace(), 4);
  EXPECT_EQ(matrix_of_word(Word()), Mat2::identity());
}

TEST(Mat2Test, OnesGiveFibonacciEntries) {
  mpz_class f0 = 0, f1 = 1;  // F_{n-1}, F_n
  Word w;
  for (int n = 1; n <= 80; ++n) {
    w.push_back(1);
    const mpz_class f2 = f0 + f1;
    EXPECT_EQ(matrix_of_word(w), Mat2(f0, f1, f1, f2)) << n;
    f0 = f1;
    f1 = f2;
  }
}

TEST(Mat2Test, HomomorphismExactAndModular) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    Word u, v;
    for (int j = 0, n = rng() % 10; j < n; ++j) u.push_back(1 + rng() % 5);
    for (int j = 0, n = rng() % 10; j < n; ++j) v.push_back(1 + rng() % 5);
    const Mat2 Au = matrix_of_word(u), Av = matrix_of_word(v);
    EXPECT_EQ(matrix_of_word(u + v), Au * Av);
    EXPECT_EQ((u + v).size() % 2 ? -1 : 1, matrix_of_word(u + v).det());
    EXPECT_EQ(matrix_of_word(u + v).reduce(7, 5), Au.reduce(7, 5) * Av.reduce(7, 5));
  }
}

TEST(Mat2Test, ModularInverseAndPower) {
  const Mat2 A = matrix_of_word(parse_word("1213"));
  const Mat2Mod a = A.reduce(3, 7);
  EXPECT_TRUE((a * a.inverse(3)).is_identity());
  EXPECT_EQ(a.pow(13), A.pow(13).reduce(3, 7));
  EXPECT_EQ(A * A.inverse(), Mat2::identity());
  EXPECT_THROW(modulus_of(2, 62), std::invalid_argument);
}

TEST(Mat2Test, OrderModMatchesBruteForce) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (int k = 1; k <= 3; ++k) {
      for (const Word& w : all_words(3, 3)) {
        const Mat2Mod a = matrix_of_word(w).reduce(p, k);
        Mat2Mod cur = a;
        unsigned long n = 1;
        while (!cur.is_identity()) cur = cur * a, ++n;
        EXPECT_EQ(order_mod(matrix_of_word(w), p, k), n) << format_word(w) << " p=" << p << " k=" << k;
      }
    }
  }
}

TEST(EigenTest, A12OverQ5IsQuadratic) {
  const EigenData e = eigen_decompose(matrix_of_word(parse_word("12")), 5, 10);
  EXPECT_EQ(e.cls, EigenClass::quad_distinct);
  EXPECT_EQ(e.discriminant, 12);
  EXPECT_EQ(e.radicand, 3);
  EXPECT_EQ(e.scale, 2);
  EXPECT_FALSE(e.ramified);
  // 2 + sqrt3 and 2 - sqrt3.
  EXPECT_TRUE(e.lambda1.a().agrees_with(PAdic::from_integer(5, 10, 2)));
  EXPECT_TRUE(e.lambda1.b().agrees_with(PAdic::one(5, 10)));
  EXPECT_TRUE(e.lambda2.b().agrees_with(PAdic::from_integer(5, 10, -1)));
}

TEST(EigenTest, IdentityIsNonSemisimple) {
  EXPECT_EQ(eigen_decompose(Mat2::identity(), 5, 6).cls, EigenClass::non_semisimple);
  EXPECT_EQ(eigen_decompose(Mat2::unipotent(3), 5, 6).cls, EigenClass::non_semisimple);
}

TEST(EigenTest, A1OverQ11Splits) {
  const int k = 10;
  const EigenData e = eigen_decompose(Mat2::letter(1), 11, k);
  EXPECT_EQ(e.cls, EigenClass::split_distinct);
  // lambda1 takes the square root of 5 with the smaller residue mod 11^k.
  const mpz_class r8 = golden_root(11, k, 8), r4 = golden_root(11, k, 4);
  const mpz_class sqrt5 = mod_floor(2 * r8 - 1, ipow(11, k));
  const bool eight_first = 2 * sqrt5 <= ipow(11, k) - 1;
  EXPECT_EQ(e.lambda1.a().residue(k), eight_first ? r8 : r4);
  EXPECT_EQ(e.lambda2.a().residue(k), eight_first ? r4 : r8);
  ASSERT_TRUE(e.v1 && e.v2);
  // A_1 is symmetric, so its eigenvector for lambda is (1, lambda).
  EXPECT_EQ(e.v1->free_coordinate().a().residue(k - 1), mod_floor(e.lambda1.a().residue(k), ipow(11, k - 1)));
}

TEST(EigenTest, EigenpairsAreConsistent) {
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const Word& w : all_words(n, 3)) {
        const Mat2 A = matrix_of_word(w);
        const EigenData e = eigen_decompose(A, p, 12);
        const PAdic tr = (e.lambda1 + e.lambda2).a();
        EXPECT_TRUE(tr.agrees_with(PAdic::from_integer(p, 12, A.trace())));
        const QuadExt prod = e.lambda1 * e.lambda2;
        EXPECT_TRUE(prod.a().agrees_with(PAdic::from_integer(p, 12, A.det())));
        EXPECT_EQ(padic_norm(e.lambda1), ExtVal::integer(0));
        if (e.cls == EigenClass::split_distinct) {
          ASSERT_TRUE(e.v1 && e.v2);
          EXPECT_TRUE(within(apply_matrix(A.transpose(), *e.v1), *e.v1, 8)) << format_word(w);
          EXPECT_TRUE(within(apply_matrix(A.transpose(), *e.v2), *e.v2, 8)) << format_word(w);
        }
      }
    }
  }
}

TEST(KappaTest, Examples) {
  EXPECT_EQ(kappa(Mat2::letter(1), 11), 10u);
  // Eigenvalues congruent to 1 mod 5.
  EXPECT_EQ(kappa(Mat2(1, 5, 5, 26), 5), 1u);
}

TEST(KappaTest, BoundAndDefiningProperty) {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const Word& w : all_words(n, 4)) {
        const Mat2 A = matrix_of_word(w);
        const unsigned long t = kappa(A, p);
        ASSERT_GE(t, 1u);
        EXPECT_LE(t, p * p);
        const EigenData e = eigen_decompose(A, p, 8);
        for (const QuadExt& l : {e.lambda1, e.lambda2}) {
          const QuadExt d = l.pow(t) - QuadExt::embed(PAdic::one(p, 8));
          EXPECT_GE(d.valuation_lower_bound(), ExtVal::integer(1)) << format_word(w) << " p=" << p;
        }
        // Minimality.
        for (unsigned long s = 1; s < t; ++s) {
          const QuadExt d = e.lambda1.pow(s) - QuadExt::embed(PAdic::one(p, 8));
          const QuadExt d2 = e.lambda2.pow(s) - QuadExt::embed(PAdic::one(p, 8));
          EXPECT_TRUE(d.valuation_lower_bound() < ExtVal::integer(1) || d2.valuation_lower_bound() < ExtVal::integer(1));
        }
      }
    }
  }
}

TEST(TildeSlTest, Examples) {
  EXPECT_FALSE(in_tilde_sl(Mat2::unipotent(3)).member);
  EXPECT_FALSE(in_tilde_sl(Mat2(0, -1, 1, 0)).member);
  EXPECT_FALSE(in_tilde_sl(Mat2(1, -1, 1, 0)).member);  // sixth root of unity
  EXPECT_FALSE(in_tilde_sl(Mat2::identity()).member);
  EXPECT_FALSE(in_tilde_sl(Mat2(-1, 0, 0, 1)).member);
  EXPECT_TRUE(in_tilde_sl(Mat2::letter(1)).member);
  EXPECT_FALSE(in_tilde_sl(Mat2::unipotent(3)).reason.empty());
}

TEST(TildeSlTest, EveryWordMatrix) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Word& w : all_words(n, 4)) {
      ASSERT_TRUE(in_tilde_sl(matrix_of_word(w)).member) << format_word(w);
    }
  }
}

TEST(Eps3Test, A1AtEleven) {
  // kappa = 10, so eps3 = |lambda^40 - 1|_11 with lambda the lifted root.
  const int k = 10;
  const mpz_class lam = golden_root(11, k, 8);
  mpz_class pw;
  mpz_powm_ui(pw.get_mpz_t(), lam.get_mpz_t(), 40, ipow(11, k).get_mpz_t());
  mpz_class d = mod_floor(pw - 1, ipow(11, k));
  ASSERT_NE(d, 0);
  const long v = remove_factor(d, 11);
  EXPECT_EQ(v, 1);
  EXPECT_EQ(eps3(Mat2::letter(1), 11, k), ExtVal::integer(v));
  EXPECT_EQ(eps3(Mat2::letter(1), 11, 8), ExtVal::integer(1));
}

TEST(Eps3Test, BothLabelsAgreeAndBoundHolds) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const Word& w : all_words(n, 3)) {
        const Mat2 A = matrix_of_word(w);
        const ExtVal e = eps3(A, p, 8);
        EXPECT_GE(e, ExtVal::integer(1)) << format_word(w);
        EXPECT_FALSE(e.is_infinite());
        const EigenData d = eigen_decompose(A, p, 16);
        const unsigned long t = 4 * kappa(A, p);
        const QuadExt one = QuadExt::embed(PAdic::one(p, 16));
        EXPECT_EQ(padic_norm(d.lambda1.pow(t) - one), padic_norm(d.lambda2.pow(t) - one)) << format_word(w);
        EXPECT_EQ(padic_norm(d.lambda1.pow(t) - one), e) << format_word(w) << " p=" << p;
      }
    }
  }
}

TEST(Eps3Test, A12AtFiveInExtension) {
  const ExtVal e = eps3(matrix_of_word(parse_word("12")), 5, 10);
  EXPECT_FALSE(e.is_infinite());
  EXPECT_GE(e, ExtVal::integer(1));
}

TEST(ShareEigenvectorTest, Examples) {
  const Mat2 a12 = matrix_of_word(parse_word("12"));
  EXPECT_TRUE(share_eigenvector(a12, matrix_of_word(parse_word("1212"))));
  EXPECT_FALSE(share_eigenvector(Mat2::letter(1), Mat2::letter(2)));
  EXPECT_FALSE(share_eigenvector(a12, matrix_of_word(parse_word("21"))));
}

}  // namespace
}  // namespace padiclab
