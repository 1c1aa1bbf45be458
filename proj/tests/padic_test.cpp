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

#include "padiclab/padic.hpp"
#include "test_support.hpp"

namespace padiclab {
namespace {

using testing::random_int;
using testing::rational_mod;

TEST(ExtValTest, ParseRoundTrip) {
  for (const char* s : {"p^-3", "p^-7/2", "p^2", "p^0", "0", "p^1/2"}) {
    EXPECT_EQ(ExtVal::parse(s).to_string(), s) << s;
  }
  EXPECT_EQ(ExtVal::parse("1"), ExtVal::integer(0));
  EXPECT_TRUE(ExtVal::parse("0").is_infinite());
  EXPECT_THROW(ExtVal::parse("p^x"), std::invalid_argument);
}

TEST(ExtValTest, OrderAgreesWithExponent) {
  EXPECT_LT(ExtVal::integer(1), ExtVal::halves(3));
  EXPECT_LT(ExtVal::halves(3), ExtVal::integer(2));
  EXPECT_LT(ExtVal::integer(100), ExtVal::infinity());
  EXPECT_EQ(ExtVal::halves(4), ExtVal::integer(2));
  EXPECT_EQ(ExtVal::halves(-3).numerator(), -3);
  EXPECT_EQ(ExtVal::halves(-3).denominator(), 2);
  EXPECT_EQ(ExtVal::integer(2) + ExtVal::halves(1), ExtVal::halves(5));
  EXPECT_TRUE((ExtVal::infinity() + ExtVal::integer(3)).is_infinite());
  EXPECT_EQ(ExtVal::halves(-7).to_string(11), "11^7/2");
}

TEST(PAdicTest, IntegersKeepValuationAndUnit) {
  const PAdic x = PAdic::from_integer(5, 4, 250);
  EXPECT_TRUE(x.is_exact());
  EXPECT_EQ(x.valuation(), 3);
  EXPECT_EQ(x.unit(), 2);
  EXPECT_TRUE(PAdic::zero(5, 4).is_exact_zero());
  EXPECT_EQ(PAdic::from_rational(11, 4, mpq_class(9, 11)).valuation(), -1);
}

TEST(PAdicTest, ResidueArithmeticMatchesIntegers) {
  std::mt19937_64 rng(7);
  for (unsigned long p : {2ul, 3ul, 7ul}) {
    const int k = 10;
    const mpz_class mod = ipow(p, k);
    for (int i = 0; i < 200; ++i) {
      const mpz_class a = random_int(rng, mod) + 1;
      const mpz_class b = random_int(rng, mod) + 1;
      const PAdic x = PAdic::from_integer(p, k, a).truncated(k);
      const PAdic y = PAdic::from_integer(p, k, b).truncated(k);
      if (a % p != 0 && b % p != 0) {
        EXPECT_EQ((x * y).residue(k), mod_floor(a * b, mod));
        EXPECT_EQ((x / y).residue(k), mod_floor(a * inverse_mod(b, mod), mod));
      }
      const PAdic s = x + y;
      if (!s.is_indistinguishable_from_zero() && s.valuation() < k) {
        EXPECT_EQ(s.residue(s.absolute_precision()), mod_floor(a + b, ipow(p, s.absolute_precision())));
      }
    }
  }
}

TEST(PAdicTest, CancellationLosesDigits) {
  const PAdic x = PAdic::from_residue(5, 6, 1 + 5 * 5 * 5, 6);
  const PAdic y = PAdic::from_residue(5, 6, 1, 6);
  const PAdic d = x - y;
  EXPECT_EQ(d.valuation(), 3);
  EXPECT_EQ(d.absolute_precision(), 6);
  const PAdic z = x - x;
  EXPECT_TRUE(z.is_indistinguishable_from_zero());
  EXPECT_THROW(z.valuation(), PrecisionError);
  EXPECT_THROW(x.equals(x), PrecisionError);
  EXPECT_TRUE(x.agrees_with(x));
}

TEST(PAdicNormTest, Examples) {
  EXPECT_EQ(padic_norm(PAdic::from_integer(5, 4, 5)), ExtVal::integer(1));
  EXPECT_TRUE(padic_norm(PAdic::zero(5, 4)).is_infinite());
  const QuadExt two_plus_w(PAdic::from_integer(11, 6, 2), PAdic::one(11, 6), 3);
  EXPECT_EQ(two_plus_w.norm().exact_value(), 1);
  EXPECT_EQ(padic_norm(two_plus_w), ExtVal::integer(0));
}

TEST(PAdicNormTest, RamifiedNormHasHalfExponent) {
  // w^2 = 5 over Q_5: |w| = 5^(-1/2).
  const QuadExt w(PAdic::zero(5, 6), PAdic::one(5, 6), 5);
  EXPECT_EQ(padic_norm(w), ExtVal::halves(1));
  EXPECT_EQ(padic_norm(w * w * w), ExtVal::halves(3));
}

TEST(PAdicNormTest, NormIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const unsigned long p = i % 2 ? 3 : 7;
    const mpz_class a = random_int(rng, ipow(p, 8)) + 1;
    const mpz_class b = random_int(rng, ipow(p, 8)) + 1;
    const PAdic x = PAdic::from_integer(p, 12, a);
    const PAdic y = PAdic::from_integer(p, 12, b);
    EXPECT_EQ(padic_norm(x * y), padic_norm(x) + padic_norm(y));
  }
}

TEST(PAdicNormTest, Ultrametric) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const unsigned long p = 5;
    const mpz_class a = random_int(rng, ipow(p, 6)) + 1;
    const mpz_class b = random_int(rng, ipow(p, 6)) + 1;
    const PAdic x = PAdic::from_integer(p, 10, a);
    const PAdic y = PAdic::from_integer(p, 10, b);
    const ExtVal nx = padic_norm(x), ny = padic_norm(y), ns = padic_norm(x + y);
    EXPECT_GE(ns, min(nx, ny));
    if (nx != ny) EXPECT_EQ(ns, min(nx, ny));
  }
}

// log(1 + 5) mod 5^6 by summing the series over Q and reducing.
TEST(PAdicLogTest, MatchesRationalSeries) {
  const unsigned long p = 5;
  const int k = 6;
  mpq_class sum = 0;
  mpz_class t = 5;
  for (int n = 1; n <= 30; ++n) {
    mpq_class term(t, n);
    term.canonicalize();
    sum += n % 2 ? term : mpq_class(-term);
    t *= 5;
  }
  const mpz_class oracle = rational_mod(sum, ipow(p, k));
  EXPECT_EQ(oracle, 1805);

  const PAdic log6 = padic_log(PAdic::from_integer(p, k, 6));
  EXPECT_EQ(log6.valuation(), 1);
  EXPECT_EQ(log6.residue(k), oracle);
}

TEST(PAdicLogTest, Examples) {
  EXPECT_TRUE(padic_log(PAdic::one(5, 6)).is_exact_zero());
  EXPECT_EQ(padic_norm(padic_log(PAdic::from_integer(5, 6, 6))), ExtVal::integer(1));
  EXPECT_THROW(padic_log(PAdic::from_integer(5, 6, 2)), std::domain_error);
  EXPECT_THROW(padic_log(PAdic::from_rational(5, 6, mpq_class(1, 5))), std::domain_error);
}

TEST(PAdicLogTest, IsometryOnRandomPairs) {
  std::mt19937_64 rng(17);
  for (unsigned long p : {3ul, 5ul, 11ul}) {
    const int k = 12;
    for (int i = 0; i < 40; ++i) {
      const mpz_class a = 1 + p * random_int(rng, ipow(p, k - 1));
      const mpz_class b = 1 + p * random_int(rng, ipow(p, k - 1));
      if (a == b) continue;
      const PAdic x = PAdic::from_integer(p, k, a);
      const PAdic y = PAdic::from_integer(p, k, b);
      EXPECT_EQ(padic_norm(padic_log(x) - padic_log(y)), padic_norm(x - y));
    }
  }
}

TEST(PAdicLogTest, LogOfProductIsSum) {
  const unsigned long p = 7;
  const int k = 10;
  const PAdic x = PAdic::from_integer(p, k, 8);
  const PAdic y = PAdic::from_integer(p, k, 50);
  const PAdic lhs = padic_log(x * y);
  const PAdic rhs = padic_log(x) + padic_log(y);
  EXPECT_EQ(lhs.residue(k), rhs.residue(k));
}

TEST(HenselSqrtTest, Examples) {
  const auto r = hensel_sqrt(PAdic::from_integer(11, 1, 5));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->residue(1), 4);
  EXPECT_FALSE(hensel_sqrt(PAdic::from_integer(11, 6, 11)));
  const auto three = hensel_sqrt(PAdic::from_integer(11, 6, 9));
  ASSERT_TRUE(three);
  EXPECT_TRUE(three->is_exact());
  EXPECT_EQ(three->exact_value(), 3);
  EXPECT_FALSE(hensel_sqrt(PAdic::from_integer(5, 6, 2)));
}

TEST(HenselSqrtTest, RootSquaresBackAndPicksSmallResidue) {
  for (unsigned long p : {2ul, 3ul, 5ul, 13ul}) {
    const int k = 8;
    const mpz_class mod = ipow(p, k);
    for (long d = 1; d < 200; ++d) {
      const auto r = hensel_sqrt(PAdic::from_integer(p, k, d).truncated(k));
      // Brute force over Z/p^3 (Z/2^5 for p = 2) with the valuation rule.
      mpz_class unit = d;
      const long v = remove_factor(unit, p);
      bool exists = v % 2 == 0;
      if (exists) {
        const int m = p == 2 ? 3 : 1;
        const mpz_class pm = ipow(p, m);
        exists = false;
        for (mpz_class y = 1; y < pm && !exists; ++y) exists = mod_floor(y * y - unit, pm) == 0;
      }
      ASSERT_EQ(r.has_value(), exists) << "p=" << p << " d=" << d;
      if (!r) continue;
      const PAdic sq = *r * *r;
      const long prec = std::min(sq.absolute_precision(), static_cast<long>(k));
      EXPECT_EQ(sq.residue(prec), mod_floor(mpz_class(d), ipow(p, prec))) << "p=" << p << " d=" << d;
      if (!r->is_exact() && r->relative_precision() > 0) {
        EXPECT_LE(2 * r->unit(), ipow(p, r->relative_precision()) - 1);
      }
    }
  }
}

TEST(QuadExtTest, ConjugationAndInverse) {
  const unsigned long p = 11;
  const int k = 8;
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const QuadExt x(PAdic::from_integer(p, k, random_int(rng, 1000) + 1),
                    PAdic::from_integer(p, k, random_int(rng, 1000) + 1), 3);
    EXPECT_TRUE(quad_arith(quad_arith(x, x, QuadOp::conj), x, QuadOp::conj).a().agrees_with(x.a()));
    const QuadExt one = x * x.inverse();
    EXPECT_TRUE(one.a().agrees_with(PAdic::one(p, k)));
    EXPECT_TRUE(one.b().is_exact_zero() || one.b().agrees_with(PAdic::zero(p, k)));
    EXPECT_EQ(padic_norm(x * x.conj()), padic_norm(x) + padic_norm(x.conj()));
  }
}

TEST(QuadExtTest, EigenvalueOfA12HasUnitNorm) {
  // lambda = 2 + w with w^2 = 3: lambda * conj(lambda) = 4 - 3 = det A_12.
  const QuadExt lambda(PAdic::from_integer(11, 6, 2), PAdic::one(11, 6), 3);
  const PAdic n = (lambda * lambda.conj()).a();
  EXPECT_EQ(n.exact_value(), 1);
  EXPECT_THROW(QuadExt::embed(PAdic::zero(11, 6)).inverse(), std::domain_error);
}

TEST(QuadExtTest, MismatchedDiscriminantsRejected) {
  const QuadExt x(PAdic::one(5, 4), PAdic::one(5, 4), 2);
  const QuadExt y(PAdic::one(5, 4), PAdic::one(5, 4), 3);
  EXPECT_THROW(x + y, std::invalid_argument);
}

}  // namespace
}  // namespace padiclab
