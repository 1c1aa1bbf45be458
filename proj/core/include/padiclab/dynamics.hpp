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
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "padiclab/mat2.hpp"
#include "padiclab/words.hpp"

namespace padiclab {

/// U_k(w): residues of the prefix matrices A_{w_n}, n >= 0, mod p^k.
struct UkSet {
  unsigned long p = 2;
  int k = 1;
  /// Sorted, distinct.
  std::vector<Mat2Mod> matrices;
  /// Believed complete; see certificate for how.
  bool saturated = false;
  /// "cycle": a full period of the residue stream of a periodic word.
  /// "substitution": computed exactly from the substitutive form.
  /// "upper-bound": the scan filled A_{w_s}^-1 U_k(w), which contains the set.
  /// "window": heuristic, no new residue in max(group bound, last_new)
  /// further prefixes. Empty when not saturated.
  std::string certificate;
  /// Prefix lengths 0 .. prefixes_scanned were examined.
  std::size_t prefixes_scanned = 0;
  /// Prefix length at which the last new residue appeared.
  std::size_t last_new = 0;

  std::size_t size() const { return matrices.size(); }
  bool contains(const Mat2Mod& m) const;
  /// Canonical text of the sorted residues.
  std::string encoding() const;
  friend bool operator==(const UkSet& a, const UkSet& b) { return a.matrices == b.matrices; }
};

/// Incremental scan of the prefix matrices of one word.
class UkScan {
 public:
  UkScan(WordSource source, unsigned long p, int k);
  /// Extends the scan to prefix length n (no-op if already there).
  void advance(std::size_t n);
  /// Scans until saturated or until the prefix length reaches limit.
  void advance_until_saturated(std::size_t limit);
  /// Supplies U_k of the unshifted word (see substitution_closure): the
  /// answer itself at offset 0, an upper bound on the size otherwise.
  void use_closure(const std::vector<Mat2Mod>& closure);
  UkSet snapshot() const;
  bool saturated() const;
  const Mat2Mod& current() const { return current_; }
  std::string certificate() const;

 private:
  WordSource source_;
  unsigned long p_;
  int k_;
  std::uint64_t bound_;
  std::optional<std::size_t> cycle_length_;  // periodic words: |u| * ord(A_u)
  std::vector<Mat2Mod> letters_;
  std::unordered_set<Mat2Mod, Mat2ModHash> seen_;
  Mat2Mod current_;
  std::size_t scanned_ = 0;
  std::size_t last_new_ = 0;
  bool closure_tried_ = false;
  bool exact_ = false;
  std::optional<std::size_t> upper_size_;
  void insert(const Mat2Mod& m);
  void use_substitution(std::size_t max_size);
  const Mat2Mod& letter(char32_t a);
};

/// Exact U_k(w) for w = h(tau^infinity(seed)).
///
/// Iterates the state (A_{h(tau^i c)}, prefix residues of h(tau^i c)) over
/// the letters c until it repeats; the prefix residues of the seed then hold
/// all of U_k(w). nullopt when a set would exceed max_size residues, when the
/// residues produced overall pass 8 max_size, or when no repeat shows up
/// within 2^16 levels.
std::optional<std::vector<Mat2Mod>> substitution_closure(const Substitution& s, unsigned long p, int k,
                                                         std::size_t max_size);

UkSet uk_set(const WordSource& source, unsigned long p, int k, std::size_t n_max);
/// Scans until saturated, at most `limit` prefixes. Substitutive words use
/// substitution_closure (with at most `limit` residues) for the unshifted set
/// and as an upper bound for shifted ones.
UkSet uk_set_saturated(const WordSource& source, unsigned long p, int k, std::size_t limit);

/// Distinct sets among U_k(T^m w), 0 <= m <= shift_max.
struct UkCollection {
  std::vector<UkSet> members;  // in order of first appearance
  std::vector<std::size_t> index_of_shift;
  bool all_saturated = true;
  /// #members <= #U_k(w); only meaningful when all_saturated.
  bool bound_holds = true;
  /// All members have the same size; only meaningful when all_saturated.
  bool equal_cardinality = true;
};

/// Each member is scanned until saturated, at most `limit` prefixes.
UkCollection uk_collection(const WordSource& source, unsigned long p, int k, std::size_t shift_max,
                           std::size_t limit);

/// Least m >= 1 with A_{w_m} = Id mod p^k, if it occurs within n_max letters.
std::optional<std::size_t> identity_return(const WordSource& source, unsigned long p, int k, std::size_t n_max);

/// V_k(n, w): A_{w_m} mod p^k over 0 <= m <= shift_max with w_n a prefix of T^m w.
std::vector<Mat2Mod> vk_set(const WordSource& source, std::size_t n, unsigned long p, int k, std::size_t shift_max);

/// u(k) = b_1 b_2 ... with b_{s+1} the index of U_k(T^s w) in the collection.
struct DerivedWord {
  std::vector<std::size_t> letters;
  UkCollection collection;
};

DerivedWord derived_word(const WordSource& source, unsigned long p, int k, std::size_t length, std::size_t limit);

/// phi_k(A_{w_m}) U_k(T^m w) = U_k(w) for each m <= shift_max.
struct Lem3Report {
  bool holds = true;
  bool all_saturated = true;
  std::vector<std::size_t> failing_shifts;
};

Lem3Report lem3_identity(const WordSource& source, unsigned long p, int k, std::size_t shift_max, std::size_t limit);

/// Two shifts s, s' with equal (b_s, b_{s+1}) but different letters w_s != w_s'.
struct Lem7Conflict {
  std::size_t shift_a = 0, shift_b = 0;
  char32_t letter_a = 0, letter_b = 0;
};

struct Lem7Report {
  /// (b_s, b_{s+1}) -> the letter w_s, when unique.
  std::map<std::pair<std::size_t, std::size_t>, char32_t> letter_of_pair;
  std::vector<Lem7Conflict> conflicts;
};

Lem7Report lem7_check(const DerivedWord& u, const WordSource& source);

/// Least l <= l_max such that every l-letter factor of w (at the observed
/// shifts) determines the (l+1)-letter factor of u at the same shift.
std::optional<std::size_t> lem8_min_length(const DerivedWord& u, const WordSource& source, std::size_t l_max);

/// Least n <= n_max with A U_k(w) = U_k(w) for every A in V_k(n, w).
std::optional<std::size_t> prop1_search(const WordSource& source, unsigned long p, int k, std::size_t n_max,
                                        std::size_t shift_max, std::size_t limit);

/// Bipartite graph G_n on length-n factors; s -- t when st is a factor.
struct FactorGraph {
  std::size_t n = 0;
  std::vector<Word> left, right;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t component_count = 0;
  std::size_t isolated_vertices = 0;
  /// Both factor sets (lengths n and 2n) are certified.
  bool exact = false;
};

FactorGraph factor_graph(const WordSource& source, std::size_t n, std::size_t window);

}  // namespace padiclab
