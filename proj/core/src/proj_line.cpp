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

#include <numeric>
#include <sstream>

#include "padiclab/proj_line.hpp"

namespace padiclab {

namespace {

QuadExt embed_int(unsigned long p, int cap, const mpz_class& n) {
  return QuadExt::embed(PAdic::from_integer(p, cap, n));
}

QuadExt one_q(unsigned long p, int cap) { return embed_int(p, cap, 1); }

}  // namespace

ProjPoint ProjPoint::normalize(const QuadExt& x, const QuadExt& y) {
  if (x.prime() != y.prime()) throw std::invalid_argument("ProjPoint: mixing different primes");
  if (x.is_exact_zero() && y.is_exact_zero()) throw std::invalid_argument("ProjPoint: (0, 0) is not a point");
  const unsigned long p = x.prime();
  const int cap = std::max(x.cap(), y.cap());
  const bool x_zeroish = x.is_exact_zero() || x.is_indistinguishable_from_zero();
  const bool y_zeroish = y.is_exact_zero() || y.is_indistinguishable_from_zero();
  if (x_zeroish && y_zeroish && !(x.is_exact_zero() || y.is_exact_zero())) {
    throw PrecisionError("ProjPoint: both coordinates are zero to the known precision");
  }
  bool first;
  if (x_zeroish && !y_zeroish) {
    first = false;
    if (x.valuation_lower_bound() <= y.valuation()) {
      throw PrecisionError("ProjPoint: cannot tell which coordinate dominates");
    }
  } else if (y_zeroish && !x_zeroish) {
    first = true;
    if (y.valuation_lower_bound() < x.valuation()) {
      throw PrecisionError("ProjPoint: cannot tell which coordinate dominates");
    }
  } else if (x.is_exact_zero()) {
    first = false;
  } else if (y.is_exact_zero()) {
    first = true;
  } else {
    first = x.valuation() <= y.valuation();
  }
  ProjPoint pt;
  pt.first_ = first;
  if (first) {
    pt.x_ = one_q(p, cap);
    pt.y_ = y.is_exact_zero() ? embed_int(p, cap, 0) : (y / x).with_cap(cap);
  } else {
    pt.x_ = x.is_exact_zero() ? embed_int(p, cap, 0) : (x / y).with_cap(cap);
    pt.y_ = one_q(p, cap);
  }
  return pt;
}

ProjPoint ProjPoint::normalize(const PAdic& x, const PAdic& y) { return normalize(QuadExt::embed(x), QuadExt::embed(y)); }

ProjPoint ProjPoint::from_integers(unsigned long p, int cap, const mpz_class& x, const mpz_class& y) {
  return normalize(PAdic::from_integer(p, cap, x), PAdic::from_integer(p, cap, y));
}

ProjPoint ProjPoint::affine(const PAdic& w) { return normalize(w, PAdic::one(w.prime(), w.cap())); }

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << "(" << x_.to_string() << " : " << y_.to_string() << ")";
  return os.str();
}

Distance try_proj_distance(const ProjPoint& w, const ProjPoint& v) {
  const QuadExt cross = w.x() * v.y() - w.y() * v.x();
  if (cross.is_exact_zero()) return {ExtVal::infinity(), true};
  if (cross.is_indistinguishable_from_zero()) return {cross.valuation_lower_bound(), false};
  return {cross.valuation(), true};
}

ExtVal proj_distance(const ProjPoint& w, const ProjPoint& v) {
  const Distance d = try_proj_distance(w, v);
  if (!d.resolved) {
    throw PrecisionError("proj_distance: points are indistinguishable at the working precision (d <= " +
                         d.value.to_string(w.prime()) + ")");
  }
  return d.value;
}

bool within(const ProjPoint& w, const ProjPoint& v, long k) {
  const Distance d = try_proj_distance(w, v);
  if (d.resolved || d.value >= ExtVal::integer(k)) return d.value >= ExtVal::integer(k);
  throw PrecisionError("within: distance known only to be at most " + d.value.to_string(w.prime()));
}

ProjPoint apply_matrix(const Mat2& A, const ProjPoint& x) {
  const unsigned long p = x.prime();
  const int cap = x.cap();
  const mpz_class dt = A.det();
  if (dt == 0 || mpz_divisible_ui_p(dt.get_mpz_t(), p)) {
    throw std::invalid_argument("apply_matrix: determinant " + dt.get_str() + " is not a p-adic unit");
  }
  const QuadExt nx = embed_int(p, cap, A.a()) * x.x() + embed_int(p, cap, A.b()) * x.y();
  const QuadExt ny = embed_int(p, cap, A.c()) * x.x() + embed_int(p, cap, A.d()) * x.y();
  return ProjPoint::normalize(nx, ny);
}

ProjPointMod reduce_point(const ProjPoint& x, unsigned long p, int k) {
  if (x.prime() != p) throw std::invalid_argument("reduce_point: mixing different primes");
  if (x.is_quadratic()) throw std::invalid_argument("reduce_point: point is not defined over Q_p");
  const PAdic& f = x.free_coordinate().a();
  ProjPointMod r;
  r.first_chart = x.first_chart();
  r.residue = f.residue(k).get_ui();
  return r;
}

ProjPointMod apply_mod(const Mat2Mod& A, const ProjPointMod& x, unsigned long p) {
  const std::uint64_t m = A.modulus();
  const auto& e = A.entries();
  const auto mul = [m](std::uint64_t u, std::uint64_t v) { return mulmod(u, v, m); };
  const std::uint64_t u = x.first_chart ? 1 % m : x.residue;
  const std::uint64_t v = x.first_chart ? x.residue : 1 % m;
  const std::uint64_t nu = (mul(e[0], u) + mul(e[1], v)) % m;
  const std::uint64_t nv = (mul(e[2], u) + mul(e[3], v)) % m;
  ProjPointMod r;
  const auto inv = [&](std::uint64_t t) {
    return inverse_mod(mpz_class(static_cast<unsigned long>(t)), mpz_class(static_cast<unsigned long>(m))).get_ui();
  };
  if (nu % p != 0) {  // unit determinant: one coordinate is a unit
    r.first_chart = true;
    r.residue = mul(nv, inv(nu));
  } else {
    r.first_chart = false;
    r.residue = mul(nu, inv(nv));
  }
  return r;
}

PBadReport pbad_estimate(const ProjPoint& x, long B) {
  if (B < 1) throw std::invalid_argument("pbad_estimate: bound must be positive");
  const unsigned long p = x.prime();
  const int cap = x.cap();
  PBadReport rep;
  rep.point = x;
  rep.bound = B;
  bool have = false;
  std::optional<ScaledPower> unresolved_floor;

  const auto better = [](const ScaledPower& v, long a, long b, const ScaledPower& best, long ba, long bb) {
    if (v != best) return v < best;
    const long s = std::labs(a) + std::labs(b);
    const long bs = std::labs(ba) + std::labs(bb);
    if (s != bs) return s < bs;
    if (a != ba) return a < ba;
    return b < bb;
  };

  for (long b = 0; b <= B; ++b) {
    for (long a = -B; a <= B; ++a) {
      if (b == 0 && a <= 0) continue;
      if (std::gcd(a, b) != 1) continue;
      const QuadExt lin = embed_int(p, cap, a) * x.x() + embed_int(p, cap, b) * x.y();
      const mpq_class weight(std::max(a * a, b * b));
      if (!lin.is_exact_zero() && lin.is_indistinguishable_from_zero()) {
        const ScaledPower ub = ScaledPower::from_norm(p, lin.valuation_lower_bound()) * weight;
        if (!unresolved_floor || ub < *unresolved_floor) unresolved_floor = ub;
        continue;
      }
      const ExtVal v = lin.is_exact_zero() ? ExtVal::infinity() : lin.valuation();
      const ScaledPower value = ScaledPower::from_norm(p, v) * weight;
      if (!have || better(value, a, b, rep.epsilon, rep.witness_a, rep.witness_b)) {
        rep.epsilon = value;
        rep.witness_a = a;
        rep.witness_b = b;
        have = true;
      }
    }
  }
  if (unresolved_floor && (!have || *unresolved_floor <= rep.epsilon)) rep.precision_limited = true;
  if (!have) rep.epsilon = ScaledPower(p, 0, 0);
  return rep;
}

}  // namespace padiclab
