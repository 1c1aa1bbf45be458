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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padiclab/numeric.hpp"

namespace padiclab {

/// Finite word over the alphabet {1, ..., N}; letters are stored as code units.
using Word = std::u32string;

/// "12112" -> {1,2,1,1,2}; letters above 9 need a comma-separated form "1,10,2".
Word parse_word(std::string_view text);
/// Inverse of parse_word.
std::string format_word(const Word& w);

/// sigma_{n+m} = sigma_{n+m-1} W(sigma_n, ..., sigma_{n+m-1}) where W
/// concatenates the listed placeholders X_1 ... X_m.
struct ConcatProgram {
  std::size_t arity = 2;
  /// 1-based placeholder indices in concatenation order.
  std::vector<std::size_t> placeholders{1};

  /// Fibonacci recursion sigma_{n+2} = sigma_{n+1} sigma_n.
  static ConcatProgram fibonacci() { return {2, {1}}; }
  /// Parses "X1 X2 X1" with the given arity.
  static ConcatProgram parse(std::size_t arity, std::string_view text);
  std::string to_string() const;
  void validate() const;
};

/// sigma_n for n >= 1; seeds are sigma_1 .. sigma_m. Rejects seeds that are
/// all equal.
Word concat_expand(const ConcatProgram& program, const std::vector<Word>& seeds, std::size_t n);

/// w = h(tau^infinity(seed)) with tau prolongable on seed and h nonerasing.
struct Substitution {
  std::map<char32_t, Word> table;  // tau
  char32_t seed = 1;
  std::map<char32_t, Word> image;  // h
};

/// Lazy, memoized infinite (or, for explicit words, finite) word.
class WordSource {
 public:
  enum class Kind { periodic, morphic, sturmian, concat, explicit_word, shifted };

  static WordSource periodic(Word period);
  /// Fixed point of a prolongable morphism started at seed, then coded letter
  /// by letter (an empty coding is the identity).
  static WordSource morphic(std::map<char32_t, Word> table, char32_t seed,
                            std::map<char32_t, char32_t> coding = {});
  static WordSource fibonacci();
  static WordSource thue_morse();
  /// s_n = floor((n+1) slope + intercept) - floor(n slope + intercept) + 1,
  /// for 0 < slope < 1.
  static WordSource sturmian(RealQuadratic slope, RealQuadratic intercept);
  static WordSource concat(ConcatProgram program, std::vector<Word> seeds);
  /// Finite word; prefix() past its end throws std::out_of_range.
  static WordSource explicit_word(Word w);

  /// T^s w.
  WordSource shift(std::size_t s) const;

  Kind kind() const;
  std::size_t alphabet_size() const;
  /// First L letters.
  Word prefix(std::size_t L) const;
  char32_t at(std::size_t i) const;
  /// Letters i .. i+len-1.
  Word slice(std::size_t i, std::size_t len) const;
  /// Minimal period for (shifts of) periodic sources.
  std::optional<Word> period() const;
  /// Length for explicit words.
  std::optional<std::size_t> finite_length() const;
  /// Substitutive form of morphic and concatenation words. A shifted source
  /// reports the form of the word it was shifted from; see offset().
  std::optional<Substitution> substitution() const;
  /// Total shift relative to the word described by substitution().
  std::size_t offset() const;
  std::string describe() const;

  struct Impl;

 private:
  explicit WordSource(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Minimal period of a finite word (the word is a power of its first p letters).
Word primitive_root(const Word& w);

/// Length-n factors of prefix(window).
struct FactorSet {
  std::size_t n = 0;
  std::size_t window = 0;
  std::vector<Word> factors;  // sorted
  /// True when the set is certified to be the full factor set of the word.
  bool exact = false;
};

FactorSet factors(const WordSource& source, std::size_t n, std::size_t window);
/// P(w, n) counted on prefix(window); see factors() for exactness.
std::size_t complexity(const WordSource& source, std::size_t n, std::size_t window);

/// Largest gap between consecutive occurrences of u within prefix(window);
/// nullopt when u occurs fewer than twice.
std::optional<std::size_t> recurrence_gap(const WordSource& source, const Word& u, std::size_t window);

}  // namespace padiclab
