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

#include <limits>
#include <sstream>

#include "padiclab/mat2.hpp"
#include "padiclab/padic.hpp"

namespace padiclab {

__extension__ typedef unsigned __int128 wide_uint;

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  if (m <= 0xffffffffULL) return x * y % m;  // x, y < m: the product fits
  return static_cast<std::uint64_t>(static_cast<wide_uint>(x) * y % m);
}

namespace {

std::uint64_t addmod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  const std::uint64_t s = x + y;  // both < 2^62
  return s >= m ? s - m : s;
}

std::uint64_t to_residue(const mpz_class& x, std::uint64_t m) {
  const mpz_class r = mod_floor(x, mpz_class(static_cast<unsigned long>(m)));
  return r.get_ui();
}

}  // namespace

mpz_class Mat2::discriminant() const {
  const mpz_class t = trace();
  return t * t - 4 * det();
}

Mat2 Mat2::inverse() const {
  const mpz_class dt = det();
  if (dt == 1) return {d_, -b_, -c_, a_};
  if (dt == -1) return {-d_, b_, c_, -a_};
  throw std::domain_error("Mat2: determinant " + dt.get_str() + " is not +-1");
}

Mat2 Mat2::pow(unsigned long n) const {
  Mat2 result;
  Mat2 base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
          x.c_ * y.b_ + x.d_ * y.d_};
}

Mat2Mod Mat2::reduce(unsigned long p, int k) const {
  const std::uint64_t m = modulus_of(p, k);
  return {m, to_residue(a_, m), to_residue(b_, m), to_residue(c_, m), to_residue(d_, m)};
}

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "[[" << a_.get_str() << "," << b_.get_str() << "],[" << c_.get_str() << "," << d_.get_str() << "]]";
  return os.str();
}

Mat2 matrix_of_word(const Word& w) {
  // Running product of letter matrices: [[x, y], [z, t]] * [[0,1],[1,a]] = [[y, x + a y], [t, z + a t]].
  mpz_class x = 1, y = 0, z = 0, t = 1;
  for (char32_t letter : w) {
    const unsigned long a = letter;
    mpz_class nx = y;
    mpz_class ny = x + a * y;
    mpz_class nz = t;
    mpz_class nt = z + a * t;
    x = std::move(nx);
    y = std::move(ny);
    z = std::move(nz);
    t = std::move(nt);
  }
  return {x, y, z, t};
}

Mat2Mod::Mat2Mod(std::uint64_t modulus, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d)
    : m_(modulus), e_{a % modulus, b % modulus, c % modulus, d % modulus} {
  if (modulus == 0) throw std::invalid_argument("Mat2Mod: zero modulus");
}

std::uint64_t Mat2Mod::det() const {
  const std::uint64_t ad = mulmod(e_[0], e_[3], m_);
  const std::uint64_t bc = mulmod(e_[1], e_[2], m_);
  return ad >= bc ? ad - bc : ad + (m_ - bc);
}

Mat2Mod operator*(const Mat2Mod& x, const Mat2Mod& y) {
  if (x.m_ != y.m_) throw std::invalid_argument("Mat2Mod: mixing moduli");
  const auto m = x.m_;
  const auto& a = x.e_;
  const auto& b = y.e_;
  return {m, addmod(mulmod(a[0], b[0], m), mulmod(a[1], b[2], m), m),
          addmod(mulmod(a[0], b[1], m), mulmod(a[1], b[3], m), m),
          addmod(mulmod(a[2], b[0], m), mulmod(a[3], b[2], m), m),
          addmod(mulmod(a[2], b[1], m), mulmod(a[3], b[3], m), m)};
}

Mat2Mod Mat2Mod::inverse(unsigned long p) const {
  const std::uint64_t dt = det();
  if (dt % p == 0) throw std::domain_error("Mat2Mod: determinant is not a unit");
  const mpz_class inv = inverse_mod(mpz_class(static_cast<unsigned long>(dt)), mpz_class(static_cast<unsigned long>(m_)));
  const std::uint64_t di = inv.get_ui();
  const auto neg = [this](std::uint64_t v) { return v == 0 ? 0 : m_ - v; };
  return {m_, mulmod(e_[3], di, m_), mulmod(neg(e_[1]), di, m_), mulmod(neg(e_[2]), di, m_), mulmod(e_[0], di, m_)};
}

Mat2Mod Mat2Mod::pow(std::uint64_t n) const {
  Mat2Mod result = identity(m_);
  Mat2Mod base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string Mat2Mod::to_string() const {
  std::ostringstream os;
  os << "[" << e_[0] << " " << e_[1] << ";" << e_[2] << " " << e_[3] << "]";
  return os.str();
}

std::size_t Mat2ModHash::operator()(const Mat2Mod& x) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint64_t v : x.entries()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t modulus_of(unsigned long p, int k) {
  if (k < 1) throw std::invalid_argument("modulus_of: precision must be at least 1");
  const mpz_class m = ipow(p, static_cast<unsigned long>(k));
  if (m >= (mpz_class(1) << 62)) {
    throw std::invalid_argument("modulus_of: " + std::to_string(p) + "^" + std::to_string(k) + " is too large");
  }
  return m.get_ui();
}

mpz_class order_mod(const Mat2& A, unsigned long p, int k) {
  const Mat2Mod a1 = A.reduce(p, 1);
  if (a1.det() == 0) throw std::domain_error("order_mod: matrix is singular mod p");
  std::uint64_t o = 1;
  Mat2Mod x = a1;
  while (!x.is_identity()) {
    x = x * a1;
    ++o;
  }
  mpz_class order = o;
  Mat2Mod y = A.reduce(p, k).pow(o);
  while (!y.is_identity()) {
    y = y.pow(p);
    order *= p;
  }
  return order;
}

std::uint64_t group_order_bound(unsigned long p, int k) {
  // |SL2(Z/p^k)| = p^(3k) (1 - 1/p^2); det -1 doubles it for p^k > 2.
  const mpz_class pk = ipow(p, static_cast<unsigned long>(k));
  mpz_class sl = pk * pk * pk / (mpz_class(p) * p) * (mpz_class(p) * p - 1);
  if (pk > 2) sl *= 2;
  if (!sl.fits_ulong_p()) return std::numeric_limits<std::uint64_t>::max();
  return sl.get_ui();
}

}  // namespace padiclab
