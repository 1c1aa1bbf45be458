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

RealQuadratic::RealQuadratic(mpz_class a, mpz_class b, mpz_class D, mpz_class c)
    : a_(std::move(a)), b_(std::move(b)), D_(std::move(D)), c_(std::move(c)) {
  if (c_ == 0) throw std::invalid_argument("RealQuadratic: zero denominator");
  if (D_ <= 0) throw std::invalid_argument("RealQuadratic: radicand must be positive");
  if (b_ != 0 && mpz_perfect_square_p(D_.get_mpz_t())) {
    throw std::invalid_argument("RealQuadratic: radicand " + D_.get_str() + " is a perfect square");
  }
  reduce();
}

RealQuadratic RealQuadratic::rational(const mpq_class& q) { return {q.get_num(), 0, 2, q.get_den()}; }

void RealQuadratic::reduce() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

void RealQuadratic::check_compatible(const RealQuadratic& o) const {
  if (b_ != 0 && o.b_ != 0 && D_ != o.D_) {
    throw std::invalid_argument("RealQuadratic: mismatched radicands " + D_.get_str() + " and " + o.D_.get_str());
  }
}

int RealQuadratic::sign() const {
  // sign(a + b*sqrt(D)); c > 0.
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 D (never equal since D is not a square).
  const int c = cmp(a_ * a_, b_ * b_ * D_);
  return c > 0 ? sa : sb;
}

mpz_class RealQuadratic::floor() const {
  // Bracket b*sqrt(D) between consecutive integers, then correct by sign tests.
  mpz_class s = 0;
  if (b_ != 0) {
    s = isqrt(b_ * b_ * D_);
    if (b_ < 0) s = -s - 1;
  }
  mpz_class t;
  const mpz_class num = a_ + s;
  mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), c_.get_mpz_t());
  while ((*this - (t + 1)).sign() >= 0) ++t;
  while ((*this - t).sign() < 0) --t;
  return t;
}

RealQuadratic RealQuadratic::operator+(const RealQuadratic& o) const {
  check_compatible(o);
  RealQuadratic r;
  r.D_ = b_ != 0 ? D_ : o.D_;
  r.a_ = a_ * o.c_ + o.a_ * c_;
  r.b_ = b_ * o.c_ + o.b_ * c_;
  r.c_ = c_ * o.c_;
  r.reduce();
  return r;
}

RealQuadratic RealQuadratic::operator-() const {
  RealQuadratic r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

RealQuadratic RealQuadratic::operator-(const RealQuadratic& o) const { return *this + (-o); }

RealQuadratic RealQuadratic::operator*(const mpz_class& n) const {
  RealQuadratic r = *this;
  r.a_ *= n;
  r.b_ *= n;
  r.reduce();
  return r;
}

RealQuadratic RealQuadratic::operator+(const mpz_class& n) const {
  RealQuadratic r = *this;
  r.a_ += n * c_;
  r.reduce();
  return r;
}

RealQuadratic RealQuadratic::operator-(const mpz_class& n) const { return *this + mpz_class(-n); }

RealQuadratic RealQuadratic::inverse() const {
  // c / (a + b sqrt D) = c (a - b sqrt D) / (a^2 - b^2 D)
  const mpz_class n = a_ * a_ - b_ * b_ * D_;
  if (n == 0) throw std::domain_error("RealQuadratic: division by zero");
  RealQuadratic r;
  r.D_ = D_;
  r.a_ = c_ * a_;
  r.b_ = -c_ * b_;
  r.c_ = n;
  r.reduce();
  return r;
}

std::strong_ordering operator<=>(const RealQuadratic& x, const RealQuadratic& y) {
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

RealQuadratic RealQuadratic::distance_to_nearest_integer() const {
  const mpz_class f = floor();
  const RealQuadratic below = *this - f;
  const RealQuadratic above = RealQuadratic::rational(mpq_class(f + 1)) - *this;
  return below <= above ? below : above;
}

std::vector<mpz_class> RealQuadratic::continued_fraction(std::size_t n) const {
  std::vector<mpz_class> out;
  RealQuadratic x = *this;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class q = x.floor();
    out.push_back(q);
    const RealQuadratic frac = x - q;
    if (frac.sign() == 0) break;
    x = frac.inverse();
  }
  return out;
}

double RealQuadratic::to_double() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(D_.get_d())) / c_.get_d();
}

std::string RealQuadratic::to_string() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << mpq_class(a_, c_).get_str();
    return os.str();
  }
  os << "(" << a_.get_str() << (b_ < 0 ? " - " : " + ") << mpz_class(abs(b_)).get_str() << "*sqrt(" << D_.get_str() << "))";
  if (c_ != 1) os << "/" << c_.get_str();
  return os.str();
}

}  // namespace padiclab
