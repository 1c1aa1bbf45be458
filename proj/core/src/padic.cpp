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
#include <sstream>

#include "padiclab/padic.hpp"

namespace padiclab {

mpz_class ipow(unsigned long p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

long remove_factor(mpz_class& n, unsigned long p) {
  if (n == 0) throw std::invalid_argument("remove_factor: zero has infinite valuation");
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

mpz_class mod_floor(const mpz_class& n, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("inverse_mod: not invertible");
  }
  return r;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

namespace {

void check_params(unsigned long p, int cap) {
  if (!is_prime(p)) throw std::invalid_argument("PAdic: modulus " + std::to_string(p) + " is not prime");
  if (cap < 1) throw std::invalid_argument("PAdic: precision must be at least 1");
}

}  // namespace

PAdic PAdic::zero(unsigned long p, int cap) {
  check_params(p, cap);
  PAdic r;
  r.p_ = p;
  r.cap_ = cap;
  return r;
}

PAdic PAdic::one(unsigned long p, int cap) { return from_integer(p, cap, mpz_class(1)); }

PAdic PAdic::from_integer(unsigned long p, int cap, const mpz_class& n) {
  PAdic r = zero(p, cap);
  if (n == 0) return r;
  mpz_class u = n;
  r.val_ = remove_factor(u, p);
  r.unit_ = u;
  r.prec_ = kExact;
  return r;
}

PAdic PAdic::from_rational(unsigned long p, int cap, const mpq_class& q) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (num == 0) return zero(p, cap);
  const long vn = remove_factor(num, p);
  const long vd = remove_factor(den, p);
  if (den == 1) {
    PAdic r = from_integer(p, cap, num);
    r.val_ = vn - vd;
    return r;
  }
  PAdic r = zero(p, cap);
  const mpz_class mod = ipow(p, static_cast<unsigned long>(cap));
  r.val_ = vn - vd;
  r.prec_ = cap;
  r.unit_ = mod_floor(num * inverse_mod(den, mod), mod);
  return r;
}

PAdic PAdic::approximate_zero(unsigned long p, int cap, long abs_precision) {
  PAdic r = zero(p, cap);
  r.val_ = abs_precision;
  r.prec_ = 0;
  r.unit_ = 0;
  return r;
}

PAdic PAdic::from_residue(unsigned long p, int cap, const mpz_class& residue, long abs_precision) {
  check_params(p, cap);
  if (abs_precision < 0) throw std::invalid_argument("PAdic: negative absolute precision");
  const mpz_class mod = ipow(p, static_cast<unsigned long>(abs_precision));
  mpz_class r = mod_floor(residue, mod);
  if (r == 0) return approximate_zero(p, cap, abs_precision);
  PAdic x = zero(p, cap);
  x.val_ = remove_factor(r, p);
  x.prec_ = static_cast<int>(std::min<long>(abs_precision - x.val_, cap));
  x.unit_ = mod_floor(r, ipow(p, static_cast<unsigned long>(x.prec_)));
  return x;
}

long PAdic::valuation() const {
  if (prec_ == 0) {
    throw PrecisionError("p-adic value is zero modulo p^" + std::to_string(val_) +
                         "; no significant digit is known");
  }
  return val_;
}

long PAdic::absolute_precision() const {
  if (prec_ == kExact) return kInfinite;
  return val_ + prec_;
}

mpz_class PAdic::residue(long n) const {
  if (n < 0) throw std::invalid_argument("residue: negative exponent");
  if (n > absolute_precision()) {
    throw PrecisionError("residue mod p^" + std::to_string(n) + " needs more digits than known");
  }
  const mpz_class mod = ipow(p_, static_cast<unsigned long>(n));
  if (val_ == kInfinite || val_ >= n) return 0;
  if (val_ < 0) throw std::domain_error("residue: value is not a p-adic integer");
  return mod_floor(unit_ * ipow(p_, static_cast<unsigned long>(val_)), mod);
}

mpq_class PAdic::exact_value() const {
  if (!is_exact()) throw PrecisionError("exact_value: value is known only to finite precision");
  if (is_exact_zero()) return 0;
  mpq_class r(unit_);
  if (val_ >= 0) {
    r *= ipow(p_, static_cast<unsigned long>(val_));
  } else {
    r /= ipow(p_, static_cast<unsigned long>(-val_));
  }
  r.canonicalize();
  return r;
}

void PAdic::check_compatible(const PAdic& o) const {
  if (p_ != o.p_) throw std::invalid_argument("PAdic: mixing different primes");
}

PAdic PAdic::operator-() const {
  PAdic r = *this;
  if (val_ == kInfinite || prec_ == 0) return r;
  if (prec_ == kExact) {
    r.unit_ = -unit_;
  } else {
    r.unit_ = ipow(p_, static_cast<unsigned long>(prec_)) - unit_;
  }
  return r;
}

PAdic operator+(const PAdic& a, const PAdic& b) {
  a.check_compatible(b);
  const int cap = std::max(a.cap_, b.cap_);
  if (a.is_exact_zero()) return b.with_cap(cap);
  if (b.is_exact_zero()) return a.with_cap(cap);
  const unsigned long p = a.p_;

  if (a.is_exact() && b.is_exact()) {
    const long vmin = std::min(a.val_, b.val_);
    mpz_class s = a.unit_ * ipow(p, static_cast<unsigned long>(a.val_ - vmin)) +
                  b.unit_ * ipow(p, static_cast<unsigned long>(b.val_ - vmin));
    PAdic r = PAdic::zero(p, cap);
    if (s == 0) return r;
    r.val_ = vmin + remove_factor(s, p);
    r.unit_ = s;
    r.prec_ = PAdic::kExact;
    return r;
  }

  const long n = std::min(a.absolute_precision(), b.absolute_precision());
  // Approximate zeros only contribute their precision.
  const bool a_live = a.prec_ != 0;
  const bool b_live = b.prec_ != 0;
  long vmin = n;
  if (a_live) vmin = std::min(vmin, a.val_);
  if (b_live) vmin = std::min(vmin, b.val_);
  if (vmin >= n) return PAdic::approximate_zero(p, cap, n);

  const mpz_class mod = ipow(p, static_cast<unsigned long>(n - vmin));
  mpz_class s = 0;
  if (a_live && a.val_ < n) s += a.unit_ * ipow(p, static_cast<unsigned long>(a.val_ - vmin));
  if (b_live && b.val_ < n) s += b.unit_ * ipow(p, static_cast<unsigned long>(b.val_ - vmin));
  s = mod_floor(s, mod);
  if (s == 0) return PAdic::approximate_zero(p, cap, n);
  PAdic r = PAdic::zero(p, cap);
  r.val_ = vmin + remove_factor(s, p);
  r.prec_ = static_cast<int>(std::min<long>(n - r.val_, cap));
  r.unit_ = mod_floor(s, ipow(p, static_cast<unsigned long>(r.prec_)));
  return r;
}

PAdic operator*(const PAdic& a, const PAdic& b) {
  a.check_compatible(b);
  const int cap = std::max(a.cap_, b.cap_);
  const unsigned long p = a.p_;
  if (a.is_exact_zero() || b.is_exact_zero()) return PAdic::zero(p, cap);
  if (a.prec_ == 0 || b.prec_ == 0) {
    // O(p^n) * y = O(p^(n + v(y))).
    return PAdic::approximate_zero(p, cap, a.val_ + b.val_);
  }
  PAdic r = PAdic::zero(p, cap);
  r.val_ = a.val_ + b.val_;
  if (a.is_exact() && b.is_exact()) {
    r.unit_ = a.unit_ * b.unit_;
    r.prec_ = PAdic::kExact;
    return r;
  }
  r.prec_ = std::min({a.prec_, b.prec_, cap});
  r.unit_ = mod_floor(a.unit_ * b.unit_, ipow(p, static_cast<unsigned long>(r.prec_)));
  return r;
}

PAdic PAdic::inverse() const {
  if (is_exact_zero()) throw std::domain_error("PAdic: division by zero");
  if (prec_ == 0) throw PrecisionError("PAdic: inverting a value indistinguishable from zero");
  PAdic r = *this;
  r.val_ = -val_;
  if (prec_ == kExact) {
    if (unit_ == 1 || unit_ == -1) return r;
    r.prec_ = cap_;
  }
  const mpz_class mod = ipow(p_, static_cast<unsigned long>(r.prec_));
  r.unit_ = inverse_mod(mod_floor(unit_, mod), mod);
  return r;
}

PAdic PAdic::pow(unsigned long n) const {
  PAdic result = one(p_, cap_);
  PAdic base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

PAdic PAdic::truncated(int rel) const {
  if (rel < 0) throw std::invalid_argument("truncated: negative precision");
  if (is_exact_zero() || prec_ == 0) return *this;
  if (prec_ != kExact && prec_ <= rel) return *this;
  if (rel == 0) return approximate_zero(p_, cap_, val_);
  PAdic r = *this;
  r.prec_ = rel;
  r.unit_ = mod_floor(unit_, ipow(p_, static_cast<unsigned long>(rel)));
  return r;
}

PAdic PAdic::truncated_absolute(long abs) const {
  if (is_exact_zero()) return approximate_zero(p_, cap_, abs);
  if (prec_ == 0) return val_ <= abs ? *this : approximate_zero(p_, cap_, abs);
  if (val_ >= abs) return approximate_zero(p_, cap_, abs);
  const long rel = abs - val_;
  if (prec_ != kExact && prec_ <= rel) return *this;
  return truncated(static_cast<int>(std::min<long>(rel, INT_MAX - 1)));
}

PAdic PAdic::with_cap(int cap) const {
  if (cap < 1) throw std::invalid_argument("with_cap: precision must be at least 1");
  PAdic r = *this;
  r.cap_ = cap;
  if (r.prec_ != kExact && r.prec_ > cap) r = r.truncated(cap);
  return r;
}

bool PAdic::agrees_with(const PAdic& o) const {
  const PAdic d = *this - o;
  return d.is_exact_zero() || d.is_indistinguishable_from_zero();
}

bool PAdic::equals(const PAdic& o) const {
  const PAdic d = *this - o;
  if (d.is_exact_zero()) return true;
  if (d.is_indistinguishable_from_zero()) {
    throw PrecisionError("PAdic: values agree to all " + std::to_string(d.val_) +
                         " known digits; equality is undecidable");
  }
  return false;
}

std::string PAdic::to_string() const {
  std::ostringstream os;
  if (is_exact_zero()) return "0";
  if (prec_ == 0) {
    os << "O(" << p_ << "^" << val_ << ")";
    return os.str();
  }
  os << unit_.get_str();
  if (val_ != 0) os << "*" << p_ << "^" << val_;
  if (prec_ != kExact) os << " + O(" << p_ << "^" << val_ + prec_ << ")";
  return os.str();
}

ExtVal padic_norm(const PAdic& x) {
  if (x.is_exact_zero()) return ExtVal::infinity();
  return ExtVal::integer(x.valuation());
}

}  // namespace padiclab
