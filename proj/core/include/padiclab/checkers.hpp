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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padiclab/dynamics.hpp"
#include "padiclab/numeric.hpp"
#include "padiclab/proj_line.hpp"
#include "padiclab/semigroup.hpp"
#include "padiclab/words.hpp"

namespace padiclab {

enum class VerdictKind { applies, hypothesis_failed, precision_limited, not_in_lmad };
std::string to_string(VerdictKind v);

/// How the orbit condition {x, A^T x, ..., (A^T)^m x} in B_k was settled.
struct OrbitCheck {
  bool verified = false;
  /// "periodic-certificate", "prefix-matrices", "trajectory-enumeration" or "none".
  std::string route = "none";
  /// Largest trajectory index the certificate relies on.
  mpz_class index_needed = 0;
  std::string detail;
};

/// Limits for the orbit condition. window bounds the trajectory indices n;
/// budget bounds the explicit work of the enumerating routes.
struct OrbitLimits {
  mpz_class window = 0;  // 0: 10 * p^k
  std::size_t budget = 5'000'000;
};

struct ThMainInstance {
  Mat2 A;
  ProjPoint x_p;
  WordSource source = WordSource::periodic(Word(1, 1));
  unsigned long p = 2;
  int k = 1;
  /// nullopt: the largest m allowed by the precision condition.
  std::optional<mpz_class> m;
};

struct ThResult {
  VerdictKind verdict = VerdictKind::hypothesis_failed;
  std::string reason;
  unsigned long p = 2;
  int k = 1;
  unsigned long kappa = 0;
  ExtVal eps1, eps2, eps3, delta, d_w1w2;
  bool ramified = false;
  mpz_class m = 0;
  mpz_class m_max = 0;
  /// epsilon^2 as an exact radicand (set when the verdict is applies).
  std::optional<ScaledPower> epsilon_squared;
  double epsilon_decimal = 0.0;
  OrbitCheck orbit;
  std::vector<std::string> caveats;
};

/// Hypotheses and exact epsilon for a matrix in the tilde-SL set.
ThResult check_th_main(const ThMainInstance& instance, const OrbitLimits& limits = {});

/// Unipotent variant: A = D_a with a != 0.
ThResult check_th_da(const mpz_class& a, const ProjPoint& x_p, const WordSource& source, unsigned long p, int k,
                     std::optional<mpz_class> m, const OrbitLimits& limits = {});

/// Empirical bad-approximability of the eigenvectors of A_u^T and the
/// exclusion of sample points, for the periodic word u^infinity.
struct LmadPeriodicReport {
  Word period;
  unsigned long p = 2;
  EigenClass cls = EigenClass::non_semisimple;
  struct EigenEvidence {
    ProjPoint point;
    /// One report per bound, for the eigenvector and each trajectory image.
    std::vector<std::vector<PBadReport>> reports;
    bool positive = false;
    bool stable = false;
  };
  std::vector<EigenEvidence> eigenvectors;
  struct Sample {
    ProjPoint point;
    std::vector<ThResult> results;  // one per precision
    bool all_apply = false;
    bool strictly_decreasing = false;
  };
  std::vector<Sample> samples;
  bool if_direction = false;
  bool only_if_direction = false;
  std::vector<std::string> caveats;
};

struct LmadPeriodicOptions {
  int eigen_precision = 16;
  std::vector<long> bounds{10, 50};
  std::vector<int> sample_precisions{4, 8, 12};
  std::size_t samples = 20;
  /// Sample points are (1, y) with y drawn from [0, p^sample_digits).
  int sample_digits = 2;
  unsigned long seed = 1;
};

LmadPeriodicReport lmad_certificate_periodic(const Word& period, unsigned long p, const LmadPeriodicOptions& opt = {});

/// Prefix residues s_n = A_{sigma_n} mod p^k of a concatenation scheme.
struct ConcatReport {
  ConcatProgram program;
  std::vector<Word> seeds;
  unsigned long p = 2;
  int k = 1;
  bool cycle_found = false;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  bool purely_periodic = false;
  std::uint64_t group_bound = 0;
  bool within_group_bound = false;
  /// "unique-by-inversion", "brute-force", or "violated".
  std::string uniqueness_method;
  bool uniqueness_holds = false;
  /// sigma_{n-m} is a prefix of T^{|sigma_{n-1}|} w for every checked n.
  bool tower_holds = false;
  std::size_t tower_checked = 0;
  /// Seed pair with no common eigenvector, both in the tilde-SL set.
  std::optional<std::pair<std::size_t, std::size_t>> exclusion_pair;
  bool excluded_for_every_point = false;
  std::vector<std::string> caveats;
};

ConcatReport concat_scheme_checker(const ConcatProgram& program, const std::vector<Word>& seeds, unsigned long p,
                                   int k, std::size_t n_max);

/// One row of the real-side inequality r |r|_p ||r x|| <= 4 max(a^2,b^2) (N+1) |r|_p.
struct PropLem1Row {
  std::size_t n = 0;
  long a = 0, b = 0;
  mpz_class q_n, q_next, r;
  mpz_class N;
  ExtVal r_norm;
  bool holds = false;
  /// |r|_p * 4 (N+1) max(a^2,b^2): the pair satisfies the dichotomy for eps
  /// exactly when eps <= this (or r = 0).
  ScaledPower critical_epsilon;
  std::optional<bool> dichotomy;  // set when an epsilon is given
};

struct PropLem1Report {
  RealQuadratic x;
  unsigned long p = 2;
  std::vector<mpz_class> partial_quotients;
  std::vector<PropLem1Row> rows;
  bool all_hold = true;
};

PropLem1Report prop_lem1_check(const RealQuadratic& x, std::size_t n_max, long ab_max, unsigned long p,
                               std::optional<mpq_class> eps = std::nullopt);

/// Screening of stabilizer candidates.
struct VpwCandidate {
  std::string label;
  Mat2 A;
  std::optional<Word> word;
};

struct VpwReport {
  enum class Kind { excluded_every_point, excluded_point, survivors, inconclusive };
  Kind kind = Kind::inconclusive;
  std::string verdict;
  std::vector<bool> in_tilde_sl;
  /// Pairs (i, j) of candidates with a common eigenvector.
  std::vector<std::pair<std::size_t, std::size_t>> common_eigenvector;
  /// Of those, pairs whose words are powers of one word.
  std::vector<std::pair<std::size_t, std::size_t>> same_root;
  std::vector<ProjPoint> survivors;
  std::vector<std::string> caveats;
};

std::string to_string(VpwReport::Kind k);

VpwReport th_vpw_screen(const std::vector<VpwCandidate>& candidates, const std::optional<ProjPoint>& x_p,
                        unsigned long p, int k);

}  // namespace padiclab
