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

#include <cmath>

#include "padiclab/padic.hpp"

namespace padiclab {

namespace {

long floor_log(unsigned long p, unsigned long n) {
  long e = 0;
  unsigned long q = 1;
  while (q <= n / p) {
    q *= p;
    ++e;
  }
  return e;
}

double valuation_of(const PAdic& y) { return static_cast<double>(y.valuation()); }
double valuation_of(const QuadExt& y) { return 0.5 * static_cast<double>(y.valuation().twice()); }

PAdic inverse_of(unsigned long p, int cap, unsigned long n) {
  return PAdic::from_rational(p, cap, mpq_class(1, n));
}

PAdic lift(const PAdic& x, int cap) { return x.with_cap(cap); }
QuadExt lift(const QuadExt& x, int cap) { return x.with_cap(cap); }

// Exact inputs would make every power exact; keep only the digits that matter.
PAdic drop_below(const PAdic& x, long abs) { return x.is_exact() ? x.truncated_absolute(abs) : x; }
QuadExt drop_below(const QuadExt& x, long abs) {
  return QuadExt(drop_below(x.a(), abs), drop_below(x.b(), abs), x.disc());
}

PAdic one_like(const PAdic& x, int cap) { return PAdic::one(x.prime(), cap); }
QuadExt one_like(const QuadExt& x, int cap) {
  return QuadExt(PAdic::one(x.prime(), cap), PAdic::zero(x.prime(), cap), x.disc());
}

QuadExt scale(const QuadExt& x, const PAdic& c) { return x * QuadExt::embed(c); }
PAdic scale(const PAdic& x, const PAdic& c) { return x * c; }

bool vanishes(const PAdic& y) { return y.is_indistinguishable_from_zero(); }
bool vanishes(const QuadExt& y) { return y.is_indistinguishable_from_zero(); }

template <class T>
T log_series(const T& x) {
  const unsigned long p = x.prime();
  const int cap = x.cap();
  const T y0 = x - one_like(x, cap);
  if (y0.is_exact_zero()) return y0;
  if (vanishes(y0)) return y0;  // x = 1 + O(p^n) gives log x = O(p^n)
  const double s = valuation_of(y0);
  if (s <= 0) throw std::domain_error("padic_log: |x - 1|_p must be below 1");

  // Terms n with n*s - log_p(n) >= target are below every retained digit.
  const double lnp = std::log(static_cast<double>(p));
  const auto reached = [&](unsigned long n, double target) {
    return n >= 2 && static_cast<double>(n) * s - std::log(static_cast<double>(n)) / lnp >= target;
  };
  unsigned long terms = 1;
  while (!reached(terms, s + cap + 1.0)) ++terms;
  const int guard = static_cast<int>(floor_log(p, terms)) + 3;
  const int work = cap + guard;
  const double target = s + work;
  while (!reached(terms, target)) ++terms;

  const T y = drop_below(lift(y0, work), static_cast<long>(std::ceil(target)) + 1);
  T power = y;
  T sum = y;
  for (unsigned long n = 2; n <= terms; ++n) {
    power = power * y;
    const T term = scale(power, inverse_of(p, work, n));
    sum = (n % 2 == 0) ? sum - term : sum + term;
  }
  return lift(sum, cap);
}

mpz_class sqrt_mod_prime(const mpz_class& a, unsigned long p) {
  const mpz_class pz(p);
  if (p == 2) return a % 2;
  mpz_class q = pz - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), pz.get_mpz_t()) != -1) ++z;
  mpz_class c, r, t, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
  const mpz_class e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % pz;
      ++i;
    }
    b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % pz;
    r = r * b % pz;
    c = b * b % pz;
    t = t * c % pz;
    m = i;
  }
  return r;
}

}  // namespace

PAdic padic_log(const PAdic& x) { return log_series(x); }
QuadExt padic_log(const QuadExt& x) {
  if (x.disc() == 0) return QuadExt::embed(log_series(x.a()));
  return log_series(x);
}

std::optional<PAdic> hensel_sqrt(const PAdic& d) {
  if (d.is_exact_zero()) throw std::invalid_argument("hensel_sqrt: zero has no unit part");
  if (d.is_indistinguishable_from_zero()) {
    throw PrecisionError("hensel_sqrt: no significant digit is known");
  }
  const unsigned long p = d.prime();
  const int cap = d.cap();
  const long v = d.valuation();
  if (v % 2 != 0) return std::nullopt;
  const mpq_class scale = v >= 0 ? mpq_class(ipow(p, static_cast<unsigned long>(v / 2)))
                                  : mpq_class(1, ipow(p, static_cast<unsigned long>(-v / 2)));
  const PAdic shift = PAdic::from_rational(p, cap, scale);

  if (d.is_exact() && d.unit() > 0 && mpz_perfect_square_p(d.unit().get_mpz_t())) {
    return PAdic::from_integer(p, cap, sqrt(d.unit())) * shift;
  }

  const int r = d.is_exact() ? cap : d.relative_precision();
  mpz_class mod = ipow(p, static_cast<unsigned long>(r));
  const mpz_class u = mod_floor(d.unit(), mod);
  mpz_class x;
  int out_prec = r;
  if (p == 2) {
    if (r < 3) throw PrecisionError("hensel_sqrt: p = 2 needs three known digits");
    if (u % 8 != 1) return std::nullopt;
    // x^2 = u mod 2^(j+1) determines x mod 2^j.
    x = 1;
    for (int j = 3; j < r; ++j) {
      const mpz_class m = ipow(2, static_cast<unsigned long>(j + 1));
      if (mod_floor(x * x - u, m) != 0) x += ipow(2, static_cast<unsigned long>(j - 1));
    }
    out_prec = r - 1;
    mod = ipow(2, static_cast<unsigned long>(out_prec));
    x = mod_floor(x, mod);
  } else {
    const mpz_class pz(p);
    const mpz_class u0 = mod_floor(u, pz);
    if (mpz_legendre(u0.get_mpz_t(), pz.get_mpz_t()) != 1) return std::nullopt;
    x = sqrt_mod_prime(u0, p);
    long have = 1;
    while (have < r) {
      have = std::min<long>(2 * have, r);
      const mpz_class m = ipow(p, static_cast<unsigned long>(have));
      x = mod_floor(x - (x * x - u) * inverse_mod(2 * x, m), m);
    }
  }
  if (x > (mod - 1) / 2) x = mod - x;
  return PAdic::from_residue(p, cap, x, out_prec) * shift;
}

}  // namespace padiclab
