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

#include <algorithm>
#include <array>

#include "padiclab/semigroup.hpp"

namespace padiclab {

std::string to_string(EigenClass c) {
  switch (c) {
    case EigenClass::split_distinct: return "split-distinct";
    case EigenClass::quad_distinct: return "quad-distinct";
    case EigenClass::non_semisimple: return "non-semisimple";
  }
  return "unknown";
}

namespace {

void check_det(const Mat2& A) {
  const mpz_class d = A.det();
  if (d != 1 && d != -1) throw std::invalid_argument("matrix determinant " + d.get_str() + " is not +-1");
}

/// delta = s^2 * r, removing square factors of small primes and of p.
void split_square(const mpz_class& delta, unsigned long p, mpz_class& s, mpz_class& r) {
  s = 1;
  r = delta;
  if (r == 0) return;
  const auto strip = [&](const mpz_class& q) {
    const mpz_class q2 = q * q;
    while (mpz_divisible_p(r.get_mpz_t(), q2.get_mpz_t())) {
      r /= q2;
      s *= q;
    }
  };
  strip(mpz_class(p));
  for (unsigned long q = 2; q < 10000; ++q) {
    const mpz_class qq(q);
    if (qq * qq > abs(r)) break;
    strip(qq);
  }
  if (r > 0 && mpz_perfect_square_p(r.get_mpz_t())) {
    s *= sqrt(r);
    r = 1;
  }
}

QuadExt embed_rational(unsigned long p, int cap, const mpq_class& q) {
  return QuadExt::embed(PAdic::from_rational(p, cap, q));
}

std::optional<ProjPoint> eigenvector_of_transpose(const Mat2& A, const QuadExt& lambda) {
  const unsigned long p = lambda.prime();
  const int cap = lambda.cap();
  const auto emb = [&](const mpz_class& n) { return QuadExt::embed(PAdic::from_integer(p, cap, n)); };
  // (A^T - lambda) v = 0 with A^T = [[a, c], [b, d]].
  const QuadExt u1 = emb(A.c());
  const QuadExt u2 = lambda - emb(A.a());
  const QuadExt w1 = lambda - emb(A.d());
  const QuadExt w2 = emb(A.b());
  const auto size = [](const QuadExt& x, const QuadExt& y) {
    const ExtVal vx = x.is_exact_zero() ? ExtVal::infinity() : x.valuation_lower_bound();
    const ExtVal vy = y.is_exact_zero() ? ExtVal::infinity() : y.valuation_lower_bound();
    return min(vx, vy);
  };
  const bool first_zero = u1.is_exact_zero() && u2.is_exact_zero();
  const bool second_zero = w1.is_exact_zero() && w2.is_exact_zero();
  if (first_zero && second_zero) return std::nullopt;
  if (second_zero || (!first_zero && size(u1, u2) <= size(w1, w2))) return ProjPoint::normalize(u1, u2);
  return ProjPoint::normalize(w1, w2);
}

}  // namespace

EigenData eigen_decompose(const Mat2& A, unsigned long p, int k) {
  check_det(A);
  EigenData e;
  e.discriminant = A.discriminant();
  const mpq_class half_tr(A.trace(), 2);
  if (e.discriminant == 0) {
    e.cls = EigenClass::non_semisimple;
    e.scale = 0;
    e.radicand = 0;
    e.lambda1 = e.lambda2 = embed_rational(p, k, half_tr);
    e.v1 = e.v2 = eigenvector_of_transpose(A, e.lambda1);
    return e;
  }
  split_square(e.discriminant, p, e.scale, e.radicand);
  const PAdic rad = PAdic::from_integer(p, k, e.radicand);
  const std::optional<PAdic> root = hensel_sqrt(rad);
  if (root) {
    e.cls = EigenClass::split_distinct;
    const PAdic sr = PAdic::from_integer(p, k, e.scale) * *root;
    const PAdic half = PAdic::from_rational(p, k, mpq_class(1, 2));
    const PAdic tr = PAdic::from_integer(p, k, A.trace());
    e.lambda1 = QuadExt::embed((tr + sr) * half);
    e.lambda2 = QuadExt::embed((tr - sr) * half);
  } else {
    e.cls = EigenClass::quad_distinct;
    mpz_class r = e.radicand;
    const long vr = remove_factor(r, p);
    e.ramified = vr % 2 != 0 || (p == 2 && mod_floor(r, 4) == 3);
    const PAdic a = PAdic::from_rational(p, k, half_tr);
    const PAdic b = PAdic::from_rational(p, k, mpq_class(e.scale, 2));
    e.lambda1 = QuadExt(a, b, e.radicand);
    e.lambda2 = e.lambda1.conj();
  }
  e.v1 = eigenvector_of_transpose(A, e.lambda1);
  e.v2 = eigenvector_of_transpose(A, e.lambda2);
  return e;
}

unsigned long kappa(const Mat2& A, unsigned long p) {
  check_det(A);
  if (A.discriminant() == 0) throw std::domain_error("kappa: repeated eigenvalue");
  // Order of x in F_p[x] / (x^2 - t x + d): track x^n = u + v x.
  const mpz_class pz(p);
  const unsigned long t = mod_floor(A.trace(), pz).get_ui();
  const unsigned long d = mod_floor(A.det(), pz).get_ui();
  unsigned long u = 0, v = 1, n = 1;
  while (!(u == 1 % p && v == 0)) {
    // (u + v x) x = u x + v x^2 = -d v + (u + t v) x
    const unsigned long nu = (p - (d * v) % p) % p;
    const unsigned long nv = (u + t * v) % p;
    u = nu;
    v = nv;
    ++n;
    if (n > p * p) throw std::logic_error("kappa: order search exceeded p^2");
  }
  std::vector<unsigned long> divisors;
  for (unsigned long i = 1; i <= n; ++i) {
    if (n % i == 0) divisors.push_back(i);
  }
  const EigenData e = eigen_decompose(A, p, 8);
  const QuadExt one = QuadExt::embed(PAdic::one(p, 8));
  for (unsigned long cand : divisors) {
    const std::array<QuadExt, 2> lambdas{e.lambda1, e.lambda2};
    const bool ok = std::all_of(lambdas.begin(), lambdas.end(), [&](const QuadExt& lam) {
                                  const QuadExt diff = lam.pow(cand) - one;
                                  return diff.is_exact_zero() || diff.valuation_lower_bound() >= ExtVal::integer(1);
                                });
    if (ok) return cand;
  }
  return n;
}

TildeSlVerdict in_tilde_sl(const Mat2& A) {
  const mpz_class d = A.det();
  if (d != 1 && d != -1) return {false, "determinant " + d.get_str() + " is not +-1"};
  if (A.discriminant() == 0) return {false, "repeated eigenvalue; no second eigenvector"};
  const mpz_class t = A.trace();
  struct Q {
    long tr, det;
    const char* name;
  };
  static const Q roots_of_unity[] = {{0, -1, "x^2 - 1"}, {0, 1, "x^2 + 1"},     {2, 1, "x^2 - 2x + 1"},
                                     {-2, 1, "x^2 + 2x + 1"}, {1, 1, "x^2 - x + 1"}, {-1, 1, "x^2 + x + 1"}};
  for (const auto& q : roots_of_unity) {
    if (t == q.tr && d == q.det) return {false, std::string("eigenvalues are roots of unity (") + q.name + ")"};
  }
  if (1 - t + d == 0 || 1 + t + d == 0) return {false, "eigenvalue +-1"};
  return {true, "distinct eigenvalues, neither a root of unity"};
}

ExtVal eps3(const Mat2& A, unsigned long p, int k) {
  const TildeSlVerdict v = in_tilde_sl(A);
  if (!v.member) throw std::domain_error("eps3: " + v.reason);
  const unsigned long kap = kappa(A, p);
  for (int prec = std::max(k, 2); prec <= 4 * std::max(k, 2); prec *= 2) {
    const EigenData e = eigen_decompose(A, p, prec);
    const QuadExt lg = padic_log(e.lambda1.pow(4 * kap));
    if (lg.is_exact_zero()) throw std::domain_error("eps3: log vanishes exactly");
    if (!lg.is_indistinguishable_from_zero()) return lg.valuation();
  }
  throw PrecisionError("eps3: lambda^(4 kappa) is 1 to every digit tried");
}

bool share_eigenvector(const Mat2& A, const Mat2& B) {
  const Mat2 ab = A * B;
  const Mat2 ba = B * A;
  const Mat2 comm(ab.a() - ba.a(), ab.b() - ba.b(), ab.c() - ba.c(), ab.d() - ba.d());
  return comm.det() == 0;
}

}  // namespace padiclab
