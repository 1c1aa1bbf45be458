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
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "padiclab/dynamics.hpp"

namespace padiclab {

bool UkSet::contains(const Mat2Mod& m) const { return std::binary_search(matrices.begin(), matrices.end(), m); }

std::string UkSet::encoding() const {
  std::ostringstream os;
  for (const auto& m : matrices) os << m.to_string();
  return os.str();
}

UkScan::UkScan(WordSource source, unsigned long p, int k)
    : source_(std::move(source)), p_(p), k_(k), bound_(group_order_bound(p, k)) {
  const std::uint64_t mod = modulus_of(p, k);
  current_ = Mat2Mod::identity(mod);
  seen_.insert(current_);
  if (auto u = source_.period()) {
    const mpz_class len = order_mod(matrix_of_word(*u), p, k) * static_cast<unsigned long>(u->size());
    cycle_length_ = len.fits_ulong_p() ? len.get_ui() : std::numeric_limits<std::size_t>::max();
  }
}

const Mat2Mod& UkScan::letter(char32_t a) {
  if (letters_.size() <= a) letters_.resize(a + 1);
  Mat2Mod& slot = letters_[a];
  if (slot.modulus() == 1 && modulus_of(p_, k_) != 1) slot = Mat2::letter(a).reduce(p_, k_);
  return slot;
}

void UkScan::insert(const Mat2Mod& m) {
  if (seen_.insert(m).second) last_new_ = scanned_;
}

void UkScan::advance(std::size_t n) {
  if (auto len = source_.finite_length()) n = std::min(n, *len);
  if (n <= scanned_) return;
  const Word w = source_.slice(scanned_, n - scanned_);
  for (char32_t a : w) {
    current_ = current_ * letter(a);
    ++scanned_;
    insert(current_);
  }
}

namespace {

std::size_t saturating_add(std::size_t a, std::uint64_t b) {
  const std::size_t cap = std::numeric_limits<std::size_t>::max();
  return b > cap - a ? cap : a + static_cast<std::size_t>(b);
}

}  // namespace

bool UkScan::saturated() const { return !certificate().empty(); }

std::string UkScan::certificate() const {
  if (exact_) return "substitution";
  if (cycle_length_) return scanned_ + 1 >= *cycle_length_ ? "cycle" : "";
  if (upper_size_) return seen_.size() >= *upper_size_ ? "upper-bound" : "";
  if (source_.finite_length()) return "";
  return scanned_ - last_new_ >= std::max<std::uint64_t>(bound_, last_new_) ? "window" : "";
}

void UkScan::use_substitution(std::size_t max_size) {
  closure_tried_ = true;
  const auto sub = source_.substitution();
  if (!sub) return;
  if (const auto closure = substitution_closure(*sub, p_, k_, max_size)) use_closure(*closure);
}

void UkScan::use_closure(const std::vector<Mat2Mod>& closure) {
  closure_tried_ = true;
  if (source_.offset() == 0) {
    seen_.insert(closure.begin(), closure.end());
    exact_ = true;
  } else {
    // U_k(T^s w) lies in A_{w_s}^-1 U_k(w), a set of the same size.
    upper_size_ = closure.size();
  }
}

void UkScan::advance_until_saturated(std::size_t limit) {
  if (!closure_tried_ && !cycle_length_) use_substitution(limit);
  while (!saturated() && scanned_ < limit) {
    std::size_t target = cycle_length_ ? *cycle_length_ - 1
                         : upper_size_  ? scanned_ + std::max<std::size_t>(1024, scanned_)
                                        : saturating_add(last_new_, std::max<std::uint64_t>(bound_, last_new_));
    target = std::min(std::max(target, scanned_ + 1), limit);
    const std::size_t before = scanned_;
    advance(target);
    if (scanned_ == before) break;  // finite word exhausted
  }
}

UkSet UkScan::snapshot() const {
  UkSet s;
  s.p = p_;
  s.k = k_;
  s.matrices.assign(seen_.begin(), seen_.end());
  std::sort(s.matrices.begin(), s.matrices.end());
  s.certificate = certificate();
  s.saturated = !s.certificate.empty();
  s.prefixes_scanned = scanned_;
  s.last_new = last_new_;
  return s;
}

namespace {

struct LevelState {
  std::vector<Mat2Mod> whole;                  // A_{h(tau^i c)}
  std::vector<std::vector<Mat2Mod>> prefixes;  // proper prefixes, sorted
  friend bool operator==(const LevelState&, const LevelState&) = default;
};

}  // namespace

std::optional<std::vector<Mat2Mod>> substitution_closure(const Substitution& s, unsigned long p, int k,
                                                         std::size_t max_size) {
  const std::uint64_t mod = modulus_of(p, k);
  std::map<char32_t, std::size_t> index;
  for (const auto& entry : s.table) index.emplace(entry.first, index.size());
  if (!index.count(s.seed)) throw std::invalid_argument("substitution_closure: seed has no image");
  std::vector<std::vector<std::size_t>> images(index.size());
  for (const auto& [c, img] : s.table) {
    for (char32_t d : img) {
      const auto it = index.find(d);
      if (it == index.end()) throw std::invalid_argument("substitution_closure: letter without an image");
      images[index.at(c)].push_back(it->second);
    }
  }

  LevelState state;
  state.whole.resize(index.size());
  state.prefixes.resize(index.size());
  for (const auto& [c, i] : index) {
    Mat2Mod run = Mat2Mod::identity(mod);
    for (char32_t a : s.image.at(c)) {
      state.prefixes[i].push_back(run);
      run = run * Mat2::letter(a).reduce(p, k);
    }
    state.whole[i] = run;
    std::sort(state.prefixes[i].begin(), state.prefixes[i].end());
    state.prefixes[i].erase(std::unique(state.prefixes[i].begin(), state.prefixes[i].end()),
                            state.prefixes[i].end());
  }

  // Total residues produced; long whole-matrix cycles can otherwise run for minutes.
  const std::uint64_t budget = 8 * static_cast<std::uint64_t>(std::max<std::size_t>(max_size, 1024));
  std::uint64_t work = 0;
  bool too_big = false;
  const auto next = [&](const LevelState& cur) {
    LevelState out;
    out.whole.resize(cur.whole.size());
    out.prefixes.resize(cur.prefixes.size());
    for (std::size_t c = 0; c < images.size() && !too_big; ++c) {
      Mat2Mod run = Mat2Mod::identity(mod);
      std::vector<Mat2Mod>& set = out.prefixes[c];
      for (std::size_t d : images[c]) {
        for (const auto& x : cur.prefixes[d]) set.push_back(run * x);
        run = run * cur.whole[d];
      }
      out.whole[c] = run;
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      work += set.size();
      too_big = set.size() > max_size || work > budget;
    }
    return out;
  };

  // Brent's cycle search; once the state repeats every later level is a
  // repeat, and the seed's prefix sets only grow along the way.
  LevelState saved = state;
  LevelState cur = next(state);
  std::size_t power = 1, lam = 1, levels = 1;
  while (!too_big && !(cur == saved)) {
    if (++levels > (std::size_t{1} << 16)) return std::nullopt;
    if (power == lam) {
      saved = cur;
      power *= 2;
      lam = 0;
    }
    cur = next(cur);
    ++lam;
  }
  if (too_big) return std::nullopt;
  return cur.prefixes[index.at(s.seed)];
}

UkSet uk_set(const WordSource& source, unsigned long p, int k, std::size_t n_max) {
  UkScan scan(source, p, k);
  scan.advance(n_max);
  return scan.snapshot();
}

UkSet uk_set_saturated(const WordSource& source, unsigned long p, int k, std::size_t limit) {
  UkScan scan(source, p, k);
  scan.advance_until_saturated(limit);
  return scan.snapshot();
}

namespace {

// U_k(T^m w) by shift; a periodic word only has |u| distinct shifts.
class ShiftedSets {
 public:
  ShiftedSets(const WordSource& source, unsigned long p, int k, std::size_t limit)
      : source_(source), p_(p), k_(k), limit_(limit) {
    if (auto u = source.period()) {
      period_ = u->size();
    } else if (auto sub = source.substitution()) {
      closure_ = substitution_closure(*sub, p, k, limit);
    }
  }
  const UkSet& at(std::size_t m) {
    const std::size_t key = period_ ? m % period_ : m;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      UkScan scan(source_.shift(key), p_, k_);
      if (closure_) scan.use_closure(*closure_);
      scan.advance_until_saturated(limit_);
      it = cache_.emplace(key, scan.snapshot()).first;
    }
    const UkSet& s = it->second;
    if (!period_) {
      held_ = std::move(it->second);
      cache_.erase(it);
      return held_;
    }
    return s;
  }

 private:
  WordSource source_;
  unsigned long p_;
  int k_;
  std::size_t limit_;
  std::size_t period_ = 0;
  std::optional<std::vector<Mat2Mod>> closure_;
  std::unordered_map<std::size_t, UkSet> cache_;
  UkSet held_;
};

}  // namespace

UkCollection uk_collection(const WordSource& source, unsigned long p, int k, std::size_t shift_max,
                           std::size_t limit) {
  UkCollection c;
  std::map<std::vector<Mat2Mod>, std::size_t> index;
  ShiftedSets sets(source, p, k, limit);
  for (std::size_t m = 0; m <= shift_max; ++m) {
    const UkSet& s = sets.at(m);
    c.all_saturated = c.all_saturated && s.saturated;
    auto [it, inserted] = index.try_emplace(s.matrices, c.members.size());
    if (inserted) c.members.push_back(s);
    c.index_of_shift.push_back(it->second);
  }
  if (c.all_saturated) {
    const std::size_t base = c.members.front().size();
    c.bound_holds = c.members.size() <= base;
    c.equal_cardinality =
        std::all_of(c.members.begin(), c.members.end(), [&](const UkSet& s) { return s.size() == base; });
  }
  return c;
}

std::optional<std::size_t> identity_return(const WordSource& source, unsigned long p, int k, std::size_t n_max) {
  if (auto len = source.finite_length()) n_max = std::min(n_max, *len);
  const Word w = source.prefix(n_max);
  Mat2Mod cur = Mat2Mod::identity(modulus_of(p, k));
  for (std::size_t m = 0; m < w.size(); ++m) {
    cur = cur * Mat2::letter(w[m]).reduce(p, k);
    if (cur.is_identity()) return m + 1;
  }
  return std::nullopt;
}

std::vector<Mat2Mod> vk_set(const WordSource& source, std::size_t n, unsigned long p, int k, std::size_t shift_max) {
  const Word w = source.prefix(shift_max + n);
  const Word head = w.substr(0, n);
  Mat2Mod cur = Mat2Mod::identity(modulus_of(p, k));
  std::vector<Mat2Mod> out;
  for (std::size_t m = 0; m <= shift_max; ++m) {
    if (w.compare(m, n, head) == 0) out.push_back(cur);
    if (m < shift_max) cur = cur * Mat2::letter(w[m]).reduce(p, k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DerivedWord derived_word(const WordSource& source, unsigned long p, int k, std::size_t length, std::size_t limit) {
  if (length == 0) throw std::invalid_argument("derived_word: length must be positive");
  DerivedWord u;
  u.collection = uk_collection(source, p, k, length - 1, limit);
  u.letters = u.collection.index_of_shift;
  return u;
}

namespace {

bool stabilizes(const Mat2Mod& a, const UkSet& u) {
  return std::all_of(u.matrices.begin(), u.matrices.end(), [&](const Mat2Mod& x) { return u.contains(a * x); });
}

}  // namespace

Lem3Report lem3_identity(const WordSource& source, unsigned long p, int k, std::size_t shift_max, std::size_t limit) {
  Lem3Report r;
  ShiftedSets sets(source, p, k, limit);
  const UkSet base = sets.at(0);
  r.all_saturated = base.saturated;
  const std::unordered_set<Mat2Mod, Mat2ModHash> lookup(base.matrices.begin(), base.matrices.end());
  const Word w = source.prefix(shift_max);
  Mat2Mod prefix = Mat2Mod::identity(modulus_of(p, k));
  for (std::size_t m = 0; m <= shift_max; ++m) {
    const UkSet& shifted = sets.at(m);
    r.all_saturated = r.all_saturated && shifted.saturated;
    // x -> prefix * x is injective, so equal sizes and inclusion give equality.
    const bool equal = shifted.size() == base.size() &&
                       std::all_of(shifted.matrices.begin(), shifted.matrices.end(),
                                   [&](const Mat2Mod& x) { return lookup.count(prefix * x) > 0; });
    if (!equal) {
      r.holds = false;
      r.failing_shifts.push_back(m);
    }
    if (m < shift_max) prefix = prefix * Mat2::letter(w[m]).reduce(p, k);
  }
  return r;
}

Lem7Report lem7_check(const DerivedWord& u, const WordSource& source) {
  Lem7Report r;
  const std::size_t n = u.letters.size();
  if (n < 2) return r;
  const Word w = source.prefix(n);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_shift;
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const auto key = std::make_pair(u.letters[s], u.letters[s + 1]);
    auto [it, inserted] = first_shift.try_emplace(key, s);
    if (inserted) {
      r.letter_of_pair[key] = w[s];
    } else if (w[it->second] != w[s]) {
      r.conflicts.push_back({it->second, s, w[it->second], w[s]});
    }
  }
  for (const auto& c : r.conflicts) r.letter_of_pair.erase({u.letters[c.shift_a], u.letters[c.shift_a + 1]});
  return r;
}

std::optional<std::size_t> lem8_min_length(const DerivedWord& u, const WordSource& source, std::size_t l_max) {
  const std::size_t n = u.letters.size();
  const Word w = source.prefix(n);
  for (std::size_t l = 1; l <= l_max && l < n; ++l) {
    std::map<Word, std::vector<std::size_t>> image;
    bool unique = true;
    for (std::size_t s = 0; s + l < n && unique; ++s) {
      std::vector<std::size_t> block(u.letters.begin() + static_cast<long>(s),
                                     u.letters.begin() + static_cast<long>(s + l + 1));
      auto [it, inserted] = image.try_emplace(w.substr(s, l), block);
      if (!inserted && it->second != block) unique = false;
    }
    if (unique) return l;
  }
  return std::nullopt;
}

std::optional<std::size_t> prop1_search(const WordSource& source, unsigned long p, int k, std::size_t n_max,
                                        std::size_t shift_max, std::size_t limit) {
  const UkSet u = uk_set_saturated(source, p, k, limit);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto v = vk_set(source, n, p, k, shift_max);
    if (std::all_of(v.begin(), v.end(), [&](const Mat2Mod& a) { return stabilizes(a, u); })) return n;
  }
  return std::nullopt;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace

FactorGraph factor_graph(const WordSource& source, std::size_t n, std::size_t window) {
  const FactorSet fn = factors(source, n, window);
  const FactorSet f2n = factors(source, 2 * n, window);
  FactorGraph g;
  g.n = n;
  g.left = fn.factors;
  g.right = fn.factors;
  g.exact = fn.exact && f2n.exact;
  const std::size_t m = fn.factors.size();
  const auto index = [&](const Word& s) {
    auto it = std::lower_bound(fn.factors.begin(), fn.factors.end(), s);
    if (it == fn.factors.end() || *it != s) throw std::logic_error("factor_graph: half of a factor is not a factor");
    return static_cast<std::size_t>(it - fn.factors.begin());
  };
  DisjointSets dsu(2 * m);
  std::vector<std::size_t> degree(2 * m, 0);
  for (const Word& f : f2n.factors) {
    const std::size_t s = index(f.substr(0, n));
    const std::size_t t = index(f.substr(n));
    g.edges.emplace_back(s, t);
    dsu.unite(s, m + t);
    ++degree[s];
    ++degree[m + t];
  }
  for (std::size_t v = 0; v < 2 * m; ++v) {
    if (dsu.find(v) == v) ++g.component_count;
    if (degree[v] == 0) ++g.isolated_vertices;
  }
  return g;
}

}  // namespace padiclab
