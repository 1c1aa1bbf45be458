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

#include <sstream>

#include "padiclab/padic.hpp"

namespace padiclab {

namespace {

mpz_class merged_disc(const QuadExt& x, const QuadExt& y) {
  if (x.prime() != y.prime()) throw std::invalid_argument("QuadExt: mixing different primes");
  if (x.disc() == 0) return y.disc();
  if (y.disc() == 0 || x.disc() == y.disc()) return x.disc();
  throw std::invalid_argument("QuadExt: mismatched discriminants " + x.disc().get_str() + " and " +
                              y.disc().get_str());
}

}  // namespace

QuadExt::QuadExt(PAdic a, PAdic b, mpz_class disc) : a_(std::move(a)), b_(std::move(b)), disc_(std::move(disc)) {
  if (a_.prime() != b_.prime()) throw std::invalid_argument("QuadExt: mixing different primes");
  if (disc_ == 0 && !b_.is_exact_zero()) {
    throw std::invalid_argument("QuadExt: base-field element with a nonzero w-coefficient");
  }
}

QuadExt QuadExt::embed(const PAdic& a) { return QuadExt(a, PAdic::zero(a.prime(), a.cap()), 0); }

PAdic QuadExt::norm() const {
  if (in_base_field()) return a_ * a_;
  return a_ * a_ - PAdic::from_integer(prime(), cap(), disc_) * b_ * b_;
}

bool QuadExt::is_indistinguishable_from_zero() const {
  if (is_exact_zero()) return false;
  if (in_base_field()) return a_.is_indistinguishable_from_zero();
  return norm().is_indistinguishable_from_zero();
}

ExtVal QuadExt::valuation() const {
  if (is_exact_zero()) return ExtVal::infinity();
  if (in_base_field()) return ExtVal::integer(a_.valuation());
  const PAdic n = norm();
  if (n.is_exact_zero()) {
    throw std::domain_error("QuadExt: nonzero element of zero norm; discriminant is a square");
  }
  return ExtVal::halves(n.valuation());
}

ExtVal QuadExt::valuation_lower_bound() const {
  if (is_exact_zero()) return ExtVal::infinity();
  if (in_base_field()) return ExtVal::integer(a_.valuation_lower_bound());
  return ExtVal::halves(norm().valuation_lower_bound());
}

QuadExt QuadExt::conj() const { return QuadExt(a_, -b_, disc_); }

QuadExt QuadExt::operator-() const { return QuadExt(-a_, -b_, disc_); }

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  mpz_class d = merged_disc(x, y);
  return QuadExt(x.a_ + y.a_, x.b_ + y.b_, std::move(d));
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  mpz_class d = merged_disc(x, y);
  if (x.in_base_field()) return QuadExt(x.a_ * y.a_, x.a_ * y.b_, std::move(d));
  if (y.in_base_field()) return QuadExt(x.a_ * y.a_, x.b_ * y.a_, std::move(d));
  const PAdic delta = PAdic::from_integer(x.prime(), std::max(x.cap(), y.cap()), d);
  PAdic a = x.a_ * y.a_ + delta * x.b_ * y.b_;
  PAdic b = x.a_ * y.b_ + x.b_ * y.a_;
  return QuadExt(std::move(a), std::move(b), std::move(d));
}

QuadExt QuadExt::inverse() const {
  if (is_exact_zero()) throw std::domain_error("QuadExt: division by zero");
  if (in_base_field()) return QuadExt(a_.inverse(), b_, disc_);
  const PAdic n = norm();
  if (n.is_exact_zero()) {
    throw std::domain_error("QuadExt: zero-norm element is not invertible; discriminant is a square");
  }
  const PAdic inv = n.inverse();
  return QuadExt(a_ * inv, -(b_ * inv), disc_);
}

QuadExt QuadExt::pow(unsigned long n) const {
  QuadExt result(PAdic::one(prime(), cap()), PAdic::zero(prime(), cap()), disc_);
  QuadExt base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

QuadExt QuadExt::with_cap(int cap) const { return QuadExt(a_.with_cap(cap), b_.with_cap(cap), disc_); }

std::string QuadExt::to_string() const {
  if (in_base_field()) return a_.to_string();
  std::ostringstream os;
  os << "(" << a_.to_string() << ") + (" << b_.to_string() << ")*sqrt(" << disc_.get_str() << ")";
  return os.str();
}

ExtVal padic_norm(const QuadExt& x) { return x.valuation(); }

QuadExt quad_arith(const QuadExt& x, const QuadExt& y, QuadOp op) {
  switch (op) {
    case QuadOp::add: return x + y;
    case QuadOp::mul: return x * y;
    case QuadOp::inv: return x.inverse();
    case QuadOp::conj: return x.conj();
  }
  throw std::invalid_argument("quad_arith: unknown operation");
}

}  // namespace padiclab
