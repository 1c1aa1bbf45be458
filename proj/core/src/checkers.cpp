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
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "padiclab/checkers.hpp"

namespace padiclab {

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::applies: return "applies";
    case VerdictKind::hypothesis_failed: return "hypothesis_failed";
    case VerdictKind::precision_limited: return "precision_limited";
    case VerdictKind::not_in_lmad: return "not_in_lmad";
  }
  return "unknown";
}

std::string to_string(VpwReport::Kind k) {
  switch (k) {
    case VpwReport::Kind::excluded_every_point: return "excluded_every_point";
    case VpwReport::Kind::excluded_point: return "excluded_point";
    case VpwReport::Kind::survivors: return "survivors";
    case VpwReport::Kind::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kPowerSearch = 100'000;

std::size_t clamp_size(const mpz_class& n, std::size_t hi) {
  if (n <= 0) return 0;
  if (n >= mpz_class(static_cast<unsigned long>(hi))) return hi;
  return n.get_ui();
}

mpz_class default_window(unsigned long p, int k) { return 10 * ipow(p, static_cast<unsigned long>(k)); }

// A = A_u^t mod p^k for the minimal period u of a purely periodic source: then
// A^j x_p and x_{p, j t |u|} share every class mod p^k.
std::optional<std::size_t> periodic_power(const Mat2& A, const WordSource& src, unsigned long p, int k) {
  const auto u = src.period();
  if (!u) return std::nullopt;
  const Mat2Mod target = A.reduce(p, k);
  const Mat2Mod au = matrix_of_word(*u).reduce(p, k);
  Mat2Mod x = au;
  for (std::size_t t = 1; t <= kPowerSearch; ++t) {
    if (x == target) return t;
    if (x.is_identity()) return std::nullopt;
    x = x * au;
  }
  return std::nullopt;
}

OrbitCheck verify_orbit(const Mat2& A, const ProjPoint& x_p, const WordSource& src, unsigned long p, int k,
                        const mpz_class& m, const OrbitLimits& limits) {
  OrbitCheck oc;
  if (auto t = periodic_power(A, src, p, k)) {
    oc.verified = true;
    oc.route = "periodic-certificate";
    std::ostringstream os;
    os << "A = A_u^" << *t << " mod p^" << k << " with u = " << format_word(*src.period()) << "; (A^T)^j x_p"
       << " lies within p^-" << k << " of x_{p," << *t * src.period()->size() << "j} for every j";
    oc.detail = os.str();
    return oc;
  }

  const mpz_class window = limits.window > 0 ? limits.window : default_window(p, k);
  std::size_t W = clamp_size(window, limits.budget);
  if (auto len = src.finite_length()) W = std::min(W, *len);
  const std::string window_note =
      W < window ? " (window " + window.get_str() + " capped at " + std::to_string(W) + ")" : std::string();
  const std::uint64_t mod = modulus_of(p, k);
  const Mat2Mod at = A.transpose().reduce(p, k);
  const std::size_t steps = clamp_size(m, limits.budget);

  std::optional<ProjPointMod> start;
  try {
    start = reduce_point(x_p, p, k);
  } catch (const PrecisionError&) {
  }

  const Word w = src.prefix(W);
  std::vector<Mat2Mod> letters;
  const auto letter = [&](char32_t a) -> const Mat2Mod& {
    if (letters.size() <= a) letters.resize(a + 1);
    if (letters[a].modulus() != mod) letters[a] = Mat2::letter(a).reduce(p, k);
    return letters[a];
  };

  if (start) {
    oc.route = "trajectory-enumeration";
    std::unordered_map<ProjPointMod, std::size_t, ProjPointModHash> seen;
    ProjPointMod cur = *start;
    seen.emplace(cur, 0);
    for (std::size_t n = 0; n < w.size(); ++n) {
      cur = apply_mod(letter(w[n]), cur, p);
      seen.try_emplace(cur, n + 1);
    }
    ProjPointMod y = *start;
    std::size_t needed = 0;
    for (std::size_t j = 0;; ++j) {
      auto it = seen.find(y);
      if (it == seen.end()) {
        oc.detail = "(A^T)^" + std::to_string(j) + " x_p is not within p^-" + std::to_string(k) +
                    " of any x_{p,n}, n <= " + std::to_string(W) + window_note;
        return oc;
      }
      needed = std::max(needed, it->second);
      if (j == steps) break;
      y = apply_mod(at, y, p);
      if (y == *start) break;  // the orbit of classes is a cycle
    }
    if (steps < m && !(y == *start)) {
      oc.detail = "orbit longer than the work budget of " + std::to_string(limits.budget) + " steps";
      return oc;
    }
    oc.verified = true;
    oc.index_needed = static_cast<unsigned long>(needed);
    oc.detail = "every orbit class matched a trajectory class" + window_note;
    return oc;
  }

  // x_p is known to fewer than k digits: compare matrices instead.
  oc.route = "prefix-matrices";
  std::unordered_map<Mat2Mod, std::size_t, Mat2ModHash> seen;
  Mat2Mod cur = Mat2Mod::identity(mod);
  seen.emplace(cur, 0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    cur = cur * letter(w[n]);
    seen.try_emplace(cur, n + 1);
  }
  const Mat2Mod a = A.reduce(p, k);
  Mat2Mod y = Mat2Mod::identity(mod);
  std::size_t needed = 0;
  for (std::size_t j = 0;; ++j) {
    auto it = seen.find(y);
    if (it == seen.end()) {
      oc.detail = "A^" + std::to_string(j) + " mod p^" + std::to_string(k) + " is not a prefix matrix A_{w_n}, n <= " +
                  std::to_string(W) + window_note;
      return oc;
    }
    needed = std::max(needed, it->second);
    if (j == steps) break;
    y = y * a;
    if (y.is_identity()) break;
  }
  if (steps < m && !y.is_identity()) {
    oc.detail = "matrix powers exceed the work budget of " + std::to_string(limits.budget) + " steps";
    return oc;
  }
  oc.verified = true;
  oc.index_needed = static_cast<unsigned long>(needed);
  oc.detail = "every power A^j mod p^k is a prefix matrix" + window_note;
  return oc;
}

// Eigen data precise enough to resolve d(x_p, w_i); doubles the precision a
// few times before giving up.
struct EigenDistances {
  EigenData eig;
  Distance d1, d2;
};

EigenDistances eigen_distances(const Mat2& A, const ProjPoint& x_p, unsigned long p, int k) {
  EigenDistances r;
  int prec = std::max(2 * k + 8, x_p.cap());
  for (int round = 0; round < 4; ++round, prec *= 2) {
    r.eig = eigen_decompose(A, p, prec);
    r.d1 = try_proj_distance(x_p, *r.eig.v1);
    r.d2 = try_proj_distance(x_p, *r.eig.v2);
    if (r.d1.resolved && r.d2.resolved) break;
    if (!x_p.x().is_exact() || !x_p.y().is_exact()) break;  // more eigen digits cannot help
  }
  return r;
}

std::string deficit_text(const mpz_class& m, const mpz_class& m_max, int k) {
  std::ostringstream os;
  os << "precision condition fails: m = " << m << " exceeds the largest admissible m = " << m_max << " at k = " << k
     << " (deficit " << m - m_max << ")";
  return os.str();
}

}  // namespace

ThResult check_th_main(const ThMainInstance& in, const OrbitLimits& limits) {
  ThResult r;
  r.p = in.p;
  r.k = in.k;
  if (in.k < 1) throw std::invalid_argument("check_th_main: k must be positive");
  if (in.x_p.prime() != in.p) throw std::invalid_argument("check_th_main: x_p lives over a different prime");
  if (in.x_p.is_quadratic()) throw std::invalid_argument("check_th_main: x_p must be a point over Q_p");

  const TildeSlVerdict member = in_tilde_sl(in.A);
  if (!member.member) {
    r.reason = "A is not in the tilde-SL set: " + member.reason;
    return r;
  }
  r.kappa = kappa(in.A, in.p);

  const EigenDistances ed = eigen_distances(in.A, in.x_p, in.p, in.k);
  r.ramified = ed.eig.ramified;
  r.d_w1w2 = proj_distance(*ed.eig.v1, *ed.eig.v2);
  for (const Distance* d : {&ed.d1, &ed.d2}) {
    if (d->value.is_infinite()) {
      r.reason = "delta zero: x_p is an eigenvector of A^T";
      return r;
    }
    if (!d->resolved) {
      const bool exact_point = in.x_p.x().is_exact() && in.x_p.y().is_exact();
      if (exact_point) {
        r.verdict = VerdictKind::precision_limited;
        r.reason = "distance from x_p to an eigenvector is unresolved at the working precision";
      } else {
        r.reason = "delta zero to working precision: x_p agrees with an eigenvector of A^T in every known digit";
      }
      return r;
    }
  }
  r.eps1 = ed.d1.value;
  r.eps2 = ed.d2.value;
  r.delta = max(max(r.eps1, r.eps2), ExtVal::integer(1));
  try {
    r.eps3 = eps3(in.A, in.p, in.k);
  } catch (const PrecisionError& e) {
    r.verdict = VerdictKind::precision_limited;
    r.reason = e.what();
    return r;
  }

  // m <= 2 kappa p^(2k + 1 - 2 E3 - 2 Ed - E1 - E2 + Ew), E the valuations.
  const long twice_T = 4L * in.k + 2 - 2 * r.eps3.twice() - 2 * r.delta.twice() - r.eps1.twice() - r.eps2.twice() +
                       r.d_w1w2.twice();
  r.m_max = ScaledPower(in.p, mpq_class(2 * r.kappa), twice_T).floor();
  if (r.m_max < 1) {
    r.reason = "precision condition fails for every m >= 1 at k = " + std::to_string(in.k);
    return r;
  }
  r.m = in.m ? *in.m : r.m_max;
  if (r.m < 1) throw std::invalid_argument("check_th_main: m must be positive");
  if (r.m > r.m_max) {
    r.reason = deficit_text(r.m, r.m_max, in.k);
    return r;
  }

  r.orbit = verify_orbit(in.A, in.x_p, in.source, in.p, in.k, r.m, limits);
  if (!r.orbit.verified) {
    r.reason = "orbit condition unverified within window: " + r.orbit.detail;
    return r;
  }

  const long twice_eps = 2 - r.eps1.twice() - r.eps2.twice() + 2 * r.eps3.twice() + 2 * r.delta.twice() +
                         r.d_w1w2.twice();
  r.epsilon_squared = ScaledPower(in.p, mpq_class(2 * r.kappa) / mpq_class(r.m), twice_eps);
  r.epsilon_decimal = std::sqrt(r.epsilon_squared->to_double());
  r.verdict = VerdictKind::applies;
  r.reason = "x is not in LMad_epsilon";
  if (r.orbit.route != "periodic-certificate") {
    r.caveats.push_back("orbit condition checked against the trajectory prefix only");
  }
  return r;
}

ThResult check_th_da(const mpz_class& a, const ProjPoint& x_p, const WordSource& source, unsigned long p, int k,
                     std::optional<mpz_class> m, const OrbitLimits& limits) {
  if (a == 0) throw std::invalid_argument("check_th_da: a must be nonzero");
  if (k < 1) throw std::invalid_argument("check_th_da: k must be positive");
  if (x_p.prime() != p) throw std::invalid_argument("check_th_da: x_p lives over a different prime");
  if (x_p.is_quadratic()) throw std::invalid_argument("check_th_da: x_p must be a point over Q_p");
  ThResult r;
  r.p = p;
  r.k = k;

  // On the canonical representative (q, q') the quantity is |a q'|_p.
  const QuadExt& q2 = x_p.y();
  if (q2.is_exact_zero()) {
    r.verdict = VerdictKind::not_in_lmad;
    r.delta = ExtVal::infinity();
    r.reason = "delta zero: x is not in LMad";
    return r;
  }
  if (q2.is_indistinguishable_from_zero()) {
    r.verdict = VerdictKind::precision_limited;
    r.reason = "second coordinate of x_p vanishes to the known precision";
    return r;
  }
  mpz_class a_copy = abs(a);
  const long va = remove_factor(a_copy, p);
  r.delta = q2.valuation() + ExtVal::integer(va);
  const long e_delta = r.delta.numerator();

  // m <= p^(k + 1) delta.
  r.m_max = ScaledPower(p, 1, 2 * (k + 1 - e_delta)).floor();
  if (r.m_max < 1) {
    r.reason = "precision condition fails for every m >= 1 at k = " + std::to_string(k);
    return r;
  }
  r.m = m ? *m : r.m_max;
  if (r.m < 1) throw std::invalid_argument("check_th_da: m must be positive");
  if (r.m > r.m_max) {
    r.reason = deficit_text(r.m, r.m_max, k);
    return r;
  }
  r.orbit = verify_orbit(Mat2::unipotent(a), x_p, source, p, k, r.m, limits);
  if (!r.orbit.verified) {
    r.reason = "orbit condition unverified within window: " + r.orbit.detail;
    return r;
  }
  // epsilon = p^(1 + E_delta) / m.
  r.epsilon_squared = ScaledPower(p, mpq_class(1) / mpq_class(r.m * r.m), 4 * (1 + e_delta));
  r.epsilon_decimal = std::sqrt(r.epsilon_squared->to_double());
  r.verdict = VerdictKind::applies;
  r.reason = "x is not in LMad_epsilon";
  if (r.orbit.route != "periodic-certificate") {
    r.caveats.push_back("orbit condition checked against the trajectory prefix only");
  }
  return r;
}

LmadPeriodicReport lmad_certificate_periodic(const Word& period, unsigned long p, const LmadPeriodicOptions& opt) {
  if (period.empty()) throw std::invalid_argument("lmad_certificate_periodic: empty period");
  if (opt.bounds.empty()) throw std::invalid_argument("lmad_certificate_periodic: no bounds");
  LmadPeriodicReport rep;
  rep.period = primitive_root(period);
  rep.p = p;
  if (rep.period.size() != period.size()) {
    rep.caveats.push_back("period reduced to its primitive root " + format_word(rep.period));
  }
  const Mat2 A = matrix_of_word(rep.period);
  const EigenData eig = eigen_decompose(A, p, opt.eigen_precision);
  rep.cls = eig.cls;
  rep.caveats.push_back("bad-approximability evidence is limited to max(|a|,|b|) <= " +
                        std::to_string(*std::max_element(opt.bounds.begin(), opt.bounds.end())));

  rep.if_direction = true;
  for (const auto& v : {eig.v1, eig.v2}) {
    if (!v) continue;
    LmadPeriodicReport::EigenEvidence ev;
    ev.point = *v;
    ev.positive = true;
    ev.stable = true;
    // The eigenvector and its images x_{p,1}, ..., x_{p,|u|-1} (x_{p,|u|} is the eigenvector again).
    ProjPoint pt = *v;
    for (std::size_t n = 0; n < rep.period.size(); ++n) {
      std::vector<PBadReport> per_bound;
      for (long B : opt.bounds) {
        per_bound.push_back(pbad_estimate(pt, B));
        const PBadReport& b = per_bound.back();
        if (b.epsilon.is_zero() || b.precision_limited) ev.positive = false;
      }
      // Stable: the minimum no longer moves over the two largest bounds.
      if (per_bound.size() >= 2 &&
          !(per_bound[per_bound.size() - 1].epsilon == per_bound[per_bound.size() - 2].epsilon)) {
        ev.stable = false;
      }
      ev.reports.push_back(std::move(per_bound));
      pt = apply_matrix(Mat2::letter(rep.period[n]), pt);
    }
    rep.if_direction = rep.if_direction && ev.positive && ev.stable;
    rep.eigenvectors.push_back(std::move(ev));
  }
  if (rep.eigenvectors.empty()) rep.if_direction = false;

  std::mt19937_64 rng(opt.seed);
  const mpz_class range = ipow(p, static_cast<unsigned long>(opt.sample_digits));
  const int cap = std::max(opt.eigen_precision,
                           *std::max_element(opt.sample_precisions.begin(), opt.sample_precisions.end()));
  const WordSource src = WordSource::periodic(rep.period);
  rep.only_if_direction = !opt.sample_precisions.empty() && opt.samples > 0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    std::uniform_int_distribution<unsigned long> dist(0, range.get_ui() - 1);
    const ProjPoint x = ProjPoint::from_integers(p, cap, 1, mpz_class(dist(rng)));
    LmadPeriodicReport::Sample s;
    s.point = x;
    s.all_apply = true;
    s.strictly_decreasing = true;
    for (int k : opt.sample_precisions) {
      ThMainInstance in{A, x, src, p, k, std::nullopt};
      s.results.push_back(check_th_main(in));
      const ThResult& res = s.results.back();
      if (res.verdict != VerdictKind::applies) s.all_apply = false;
      if (s.results.size() >= 2) {
        const auto& prev = s.results[s.results.size() - 2];
        if (!(prev.epsilon_squared && res.epsilon_squared && *res.epsilon_squared < *prev.epsilon_squared)) {
          s.strictly_decreasing = false;
        }
      }
    }
    rep.only_if_direction = rep.only_if_direction && s.all_apply && s.strictly_decreasing;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

namespace {

// W~(X, B_1, ..., B_{m-1}) for the placeholder list, with X in slot 1.
Mat2Mod apply_program(const ConcatProgram& prog, const std::vector<Mat2Mod>& args) {
  Mat2Mod r = Mat2Mod::identity(args.front().modulus());
  for (std::size_t i : prog.placeholders) r = r * args[i - 1];
  return r;
}

// Every matrix mod p^k with determinant +-1, or nothing when there are too many.
std::vector<Mat2Mod> unimodular_group(unsigned long p, int k, std::size_t limit) {
  const std::uint64_t mod = modulus_of(p, k);
  std::vector<Mat2Mod> out;
  if (static_cast<double>(mod) * mod * mod * mod > 4.0 * static_cast<double>(limit)) return out;
  for (std::uint64_t a = 0; a < mod; ++a)
    for (std::uint64_t b = 0; b < mod; ++b)
      for (std::uint64_t c = 0; c < mod; ++c)
        for (std::uint64_t d = 0; d < mod; ++d) {
          const Mat2Mod x(mod, a, b, c, d);
          const std::uint64_t det = x.det();
          if (det == 1 % mod || det == mod - 1) out.push_back(x);
        }
  return out;
}

}  // namespace

ConcatReport concat_scheme_checker(const ConcatProgram& program, const std::vector<Word>& seeds, unsigned long p,
                                   int k, std::size_t n_max) {
  program.validate();
  const std::size_t m = program.arity;
  if (seeds.size() != m) throw std::invalid_argument("concat_scheme_checker: need one seed per placeholder");
  for (const Word& s : seeds) {
    if (s.size() != 1) throw std::invalid_argument("concat_scheme_checker: seeds must be single letters");
  }
  if (std::all_of(seeds.begin(), seeds.end(), [&](const Word& s) { return s == seeds.front(); })) {
    throw std::invalid_argument("concat_scheme_checker: seeds are all equal");
  }
  ConcatReport rep;
  rep.program = program;
  rep.seeds = seeds;
  rep.p = p;
  rep.k = k;
  rep.group_bound = group_order_bound(p, k);

  // s_{n+m} = s_{n+m-1} W~(s_n, ..., s_{n+m-1}); states are m-tuples.
  std::vector<Mat2Mod> s;
  for (const Word& w : seeds) s.push_back(matrix_of_word(w).reduce(p, k));
  std::map<std::vector<Mat2Mod>, std::size_t> first;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<Mat2Mod> state(s.begin() + static_cast<long>(n), s.begin() + static_cast<long>(n + m));
    auto [it, inserted] = first.try_emplace(state, n);
    if (!inserted) {
      rep.cycle_found = true;
      rep.preperiod = it->second;
      rep.period = n - it->second;
      break;
    }
    s.push_back(s[n + m - 1] * apply_program(program, state));
  }
  rep.purely_periodic = rep.cycle_found && rep.preperiod == 0;
  rep.within_group_bound = rep.cycle_found && rep.preperiod + rep.period <= rep.group_bound;

  // Uniqueness of X in s_{n+m} = s_{n+m-1} W~(X, s_{n+1}, ..., s_{n+m-1}).
  const auto uses = static_cast<std::size_t>(std::count(program.placeholders.begin(), program.placeholders.end(), 1));
  if (uses == 1) {
    rep.uniqueness_method = "unique-by-inversion";
    rep.uniqueness_holds = true;
  } else if (uses == 0) {
    rep.uniqueness_method = "violated";
    rep.uniqueness_holds = false;
    rep.caveats.push_back("X_1 does not occur in the concatenation map, so sigma_n is not determined by its successors");
  } else {
    const auto group = unimodular_group(p, k, 1'000'000);
    if (group.empty()) {
      rep.uniqueness_method = "unverified";
      rep.caveats.push_back("group mod p^k too large for exhaustive uniqueness check");
    } else {
      rep.uniqueness_method = "brute-force";
      rep.uniqueness_holds = true;
      const std::size_t upto = rep.cycle_found ? rep.preperiod + rep.period : s.size() - m;
      for (std::size_t n = 0; n < upto && rep.uniqueness_holds; ++n) {
        std::vector<Mat2Mod> args(s.begin() + static_cast<long>(n), s.begin() + static_cast<long>(n + m));
        const Mat2Mod rhs = s[n + m - 1].inverse(p) * s[n + m];
        std::size_t solutions = 0;
        for (const Mat2Mod& x : group) {
          args[0] = x;
          if (apply_program(program, args) == rhs) ++solutions;
        }
        if (solutions > 1) {
          rep.uniqueness_holds = false;
          rep.uniqueness_method = "violated";
          rep.caveats.push_back("the matrix equation at step " + std::to_string(n + 1) + " has " +
                                std::to_string(solutions) + " solutions mod p^k");
        }
      }
    }
  }

  // sigma_{n-m} is a prefix of T^{L(n-1)} sigma_n for n > 2m.
  rep.tower_holds = true;
  constexpr std::size_t kTowerLength = 1u << 20;
  for (std::size_t n = 2 * m + 1;; ++n) {
    const Word sn = concat_expand(program, seeds, n);
    if (sn.size() > kTowerLength) break;
    const Word prev = concat_expand(program, seeds, n - 1);
    const Word back = concat_expand(program, seeds, n - m);
    const bool prefix_ok = sn.compare(0, prev.size(), prev) == 0;
    const bool tail_ok = sn.size() >= prev.size() + back.size() && sn.compare(prev.size(), back.size(), back) == 0;
    ++rep.tower_checked;
    if (!prefix_ok || !tail_ok) {
      rep.tower_holds = false;
      break;
    }
    if (sn.size() == prev.size()) break;  // no growth: nothing more to learn
  }
  if (rep.tower_checked == 0) rep.tower_holds = false;

  for (std::size_t i = 0; i < m && !rep.exclusion_pair; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Mat2 a = matrix_of_word(seeds[i]);
      const Mat2 b = matrix_of_word(seeds[j]);
      if (a == b) continue;
      if (in_tilde_sl(a).member && in_tilde_sl(b).member && !share_eigenvector(a, b)) {
        rep.exclusion_pair = std::make_pair(i, j);
        break;
      }
    }
  }
  rep.excluded_for_every_point = rep.purely_periodic && rep.uniqueness_holds && rep.tower_holds &&
                                 rep.exclusion_pair.has_value();
  if (rep.excluded_for_every_point) {
    rep.caveats.push_back("not in LMad for any x_p: the seed matrices recur in V_k(l, w) for arbitrarily large l "
                          "at this k; membership for every k is inferred from the construction");
  }
  return rep;
}

PropLem1Report prop_lem1_check(const RealQuadratic& x, std::size_t n_max, long ab_max, unsigned long p,
                               std::optional<mpq_class> eps) {
  if (ab_max < 0) throw std::invalid_argument("prop_lem1_check: negative coefficient bound");
  if (eps && *eps <= 0) throw std::invalid_argument("prop_lem1_check: epsilon must be positive");
  PropLem1Report rep;
  rep.x = x;
  rep.p = p;
  rep.partial_quotients = x.continued_fraction(n_max + 2);

  // q_{-1} = 0, q_0 = 1, q_i = a_i q_{i-1} + q_{i-2}.
  std::vector<mpz_class> q{1};
  mpz_class before = 0;
  for (std::size_t i = 1; i <= n_max + 1; ++i) {
    const mpz_class next = rep.partial_quotients[i] * q.back() + before;
    before = q.back();
    q.push_back(next);
  }
  mpz_class N = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    N = std::max(N, rep.partial_quotients[n + 1]);
    for (long a = -ab_max; a <= ab_max; ++a) {
      for (long b = -ab_max; b <= ab_max; ++b) {
        if (a == 0 && b == 0) continue;
        PropLem1Row row;
        row.n = n;
        row.a = a;
        row.b = b;
        row.q_n = q[n];
        row.q_next = q[n + 1];
        row.N = N;
        row.r = abs(a * q[n] + b * q[n + 1]);
        const long M2 = std::max(a * a, b * b);
        const mpz_class rhs = 4 * M2 * (N + 1);
        if (row.r == 0) {
          row.r_norm = ExtVal::infinity();
          row.holds = true;
          row.critical_epsilon = ScaledPower(p, 0, 0);
        } else {
          mpz_class rr = row.r;
          const long v = remove_factor(rr, p);
          row.r_norm = ExtVal::integer(v);
          // After dividing by |r|_p > 0: r ||r x|| <= 4 M^2 (N + 1).
          const RealQuadratic lhs = (x * row.r).distance_to_nearest_integer() * row.r;
          row.holds = (RealQuadratic::rational(mpq_class(rhs)) - lhs).sign() >= 0;
          row.critical_epsilon = ScaledPower(p, mpq_class(rhs), -2 * v);
        }
        if (eps) row.dichotomy = row.r == 0 || ScaledPower(p, *eps, 0) <= row.critical_epsilon;
        rep.all_hold = rep.all_hold && row.holds;
        rep.rows.push_back(std::move(row));
      }
    }
  }
  return rep;
}

namespace {

bool same_point(const ProjPoint& u, const ProjPoint& v, int k) {
  const Distance d = try_proj_distance(u, v);
  return !d.resolved || d.value >= ExtVal::integer(k);
}

}  // namespace

VpwReport th_vpw_screen(const std::vector<VpwCandidate>& candidates, const std::optional<ProjPoint>& x_p,
                        unsigned long p, int k) {
  VpwReport rep;
  std::vector<std::optional<EigenData>> eig(candidates.size());
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const bool in = in_tilde_sl(candidates[i].A).member;
    rep.in_tilde_sl.push_back(in);
    if (in) {
      eig[i] = eigen_decompose(candidates[i].A, p, k);
      members.push_back(i);
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (!share_eigenvector(candidates[i].A, candidates[j].A)) continue;
      rep.common_eigenvector.emplace_back(i, j);
      const auto& u = candidates[i].word;
      const auto& v = candidates[j].word;
      if (u && v && primitive_root(*u) == primitive_root(*v)) rep.same_root.emplace_back(i, j);
    }
  }
  rep.caveats.push_back("conditional on the candidates lying in Vp(w); evidence is finite-k");
  if (members.empty()) {
    rep.kind = VpwReport::Kind::inconclusive;
    rep.verdict = "no candidate lies in the tilde-SL set";
    return rep;
  }

  // Two members without a common eigenvector leave no point.
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (!share_eigenvector(candidates[members[a]].A, candidates[members[b]].A)) {
        rep.kind = VpwReport::Kind::excluded_every_point;
        rep.verdict = "excluded for every x_p: " + candidates[members[a]].label + " and " +
                      candidates[members[b]].label + " have four distinct eigenvectors";
        return rep;
      }
    }
  }

  // Eigenvectors common to all members.
  const EigenData& e0 = *eig[members.front()];
  for (const auto& v : {e0.v1, e0.v2}) {
    if (!v) continue;
    bool shared = true;
    for (std::size_t i : members) {
      const EigenData& e = *eig[i];
      if (!((e.v1 && same_point(*v, *e.v1, k)) || (e.v2 && same_point(*v, *e.v2, k)))) shared = false;
    }
    if (shared && std::none_of(rep.survivors.begin(), rep.survivors.end(),
                               [&](const ProjPoint& s) { return same_point(s, *v, k); })) {
      rep.survivors.push_back(*v);
    }
  }

  if (x_p) {
    const bool survives = std::any_of(rep.survivors.begin(), rep.survivors.end(),
                                      [&](const ProjPoint& s) { return same_point(s, *x_p, k); });
    if (!survives) {
      rep.kind = VpwReport::Kind::excluded_point;
      rep.verdict = "excluded: x_p is not an eigenvector of " + candidates[members.front()].label;
      return rep;
    }
  }
  rep.kind = VpwReport::Kind::survivors;
  std::ostringstream os;
  os << "at most " << rep.survivors.size() << " surviving point" << (rep.survivors.size() == 1 ? "" : "s") << ":";
  for (const auto& s : rep.survivors) os << " " << s.to_string();
  rep.verdict = os.str();
  return rep;
}

}  // namespace padiclab
