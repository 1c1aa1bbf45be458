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
#include <sstream>

#include "padiclab/numeric.hpp"

namespace padiclab {

mpz_class isqrt(const mpz_class& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

ScaledPower::ScaledPower(unsigned long p, mpq_class coeff, long twice_exponent)
    : p_(p), coeff_(std::move(coeff)), twice_(twice_exponent) {
  if (coeff_ < 0) throw std::invalid_argument("ScaledPower: negative coefficient");
  coeff_.canonicalize();
  normalize();
}

ScaledPower ScaledPower::from_norm(unsigned long p, ExtVal norm) {
  if (norm.is_infinite()) return ScaledPower(p, 0, 0);
  return ScaledPower(p, 1, -norm.twice());
}

void ScaledPower::normalize() {
  if (coeff_ == 0) {
    twice_ = 0;
    return;
  }
  // Move whole powers of p from the coefficient into the exponent.
  mpz_class num = coeff_.get_num();
  mpz_class den = coeff_.get_den();
  const mpz_class pz(p_);
  while (mpz_divisible_p(num.get_mpz_t(), pz.get_mpz_t())) {
    num /= pz;
    twice_ += 2;
  }
  while (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t())) {
    den /= pz;
    twice_ -= 2;
  }
  coeff_ = mpq_class(num, den);
  coeff_.canonicalize();
}

ScaledPower ScaledPower::operator*(const ScaledPower& o) const {
  if (p_ != o.p_) throw std::invalid_argument("ScaledPower: mixing different primes");
  return ScaledPower(p_, coeff_ * o.coeff_, twice_ + o.twice_);
}

ScaledPower ScaledPower::operator/(const ScaledPower& o) const {
  if (p_ != o.p_) throw std::invalid_argument("ScaledPower: mixing different primes");
  if (o.is_zero()) throw std::domain_error("ScaledPower: division by zero");
  return ScaledPower(p_, coeff_ / o.coeff_, twice_ - o.twice_);
}

ScaledPower ScaledPower::operator*(const mpq_class& q) const { return ScaledPower(p_, coeff_ * q, twice_); }

mpq_class ScaledPower::squared() const {
  mpq_class r = coeff_ * coeff_;
  if (twice_ >= 0) {
    r *= ipow(p_, static_cast<unsigned long>(twice_));
  } else {
    r /= ipow(p_, static_cast<unsigned long>(-twice_));
  }
  r.canonicalize();
  return r;
}

std::strong_ordering operator<=>(const ScaledPower& a, const ScaledPower& b) {
  if (a.p_ != b.p_ && !a.is_zero() && !b.is_zero()) {
    throw std::invalid_argument("ScaledPower: mixing different primes");
  }
  const int c = cmp(a.squared(), b.squared());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool ScaledPower::sqrt_at_least(const mpz_class& n) const {
  if (n <= 0) return true;
  const mpq_class n4 = mpq_class(n * n * n * n);
  return squared() >= n4;
}

mpz_class ScaledPower::floor() const {
  // value^2 = squared(); floor(value) = floor(sqrt(num/den)).
  const mpq_class s = squared();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
  mpz_class r = isqrt(q);
  // isqrt(floor(x)) == floor(sqrt(x)) for x >= 0.
  return r;
}

mpz_class ScaledPower::floor_sqrt() const {
  // floor(value^(1/2)) = floor(squared()^(1/4)).
  mpz_class r = isqrt(floor());
  const mpq_class s = squared();
  while (mpq_class((r + 1) * (r + 1) * (r + 1) * (r + 1)) <= s) ++r;
  while (r > 0 && mpq_class(r * r * r * r) > s) --r;
  return r;
}

double ScaledPower::to_double() const {
  return coeff_.get_d() * std::pow(static_cast<double>(p_), 0.5 * static_cast<double>(twice_));
}

std::string ScaledPower::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (twice_ == 0 || coeff_ != 1) os << coeff_.get_str();
  if (twice_ != 0) {
    os << (coeff_ != 1 ? "*" : "") << p_ << "^";
    if (twice_ % 2 == 0) {
      os << (twice_ / 2 < 0 ? "(" : "") << twice_ / 2 << (twice_ / 2 < 0 ? ")" : "");
    } else {
      os << "(" << twice_ << "/2)";
    }
  }
  return os.str();
}

}  // namespace padiclab
