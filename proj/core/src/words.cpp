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
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "padiclab/words.hpp"

namespace padiclab {

Word parse_word(std::string_view text) {
  Word w;
  if (text.find(',') != std::string_view::npos) {
    std::string token;
    std::istringstream is{std::string(text)};
    while (std::getline(is, token, ',')) {
      const auto v = std::stoul(token);
      if (v == 0) throw std::invalid_argument("parse_word: letters start at 1");
      w.push_back(static_cast<char32_t>(v));
    }
    return w;
  }
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch < '1' || ch > '9') throw std::invalid_argument("parse_word: bad letter '" + std::string(1, ch) + "'");
    w.push_back(static_cast<char32_t>(ch - '0'));
  }
  return w;
}

std::string format_word(const Word& w) {
  const bool small = std::all_of(w.begin(), w.end(), [](char32_t c) { return c <= 9; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (small) {
      out.push_back(static_cast<char>('0' + w[i]));
    } else {
      if (i) out.push_back(',');
      out += std::to_string(static_cast<unsigned long>(w[i]));
    }
  }
  return out;
}

ConcatProgram ConcatProgram::parse(std::size_t arity, std::string_view text) {
  ConcatProgram prog;
  prog.arity = arity;
  prog.placeholders.clear();
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || (tok[0] != 'X' && tok[0] != 'x')) {
      throw std::invalid_argument("ConcatProgram: expected placeholder like X1, got '" + tok + "'");
    }
    prog.placeholders.push_back(std::stoul(tok.substr(1)));
  }
  prog.validate();
  return prog;
}

void ConcatProgram::validate() const {
  if (arity < 1) throw std::invalid_argument("ConcatProgram: arity must be positive");
  if (placeholders.empty()) throw std::invalid_argument("ConcatProgram: empty concatenation map");
  for (auto i : placeholders) {
    if (i < 1 || i > arity) {
      throw std::invalid_argument("ConcatProgram: placeholder X" + std::to_string(i) + " out of range");
    }
  }
}

std::string ConcatProgram::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < placeholders.size(); ++i) {
    if (i) out += ' ';
    out += "X" + std::to_string(placeholders[i]);
  }
  return out;
}

namespace {

void check_seeds(const ConcatProgram& program, const std::vector<Word>& seeds) {
  program.validate();
  if (seeds.size() != program.arity) {
    throw std::invalid_argument("concat: expected " + std::to_string(program.arity) + " seeds");
  }
  for (const auto& s : seeds) {
    if (s.size() != 1) throw std::invalid_argument("concat: seeds must be single letters");
  }
  if (std::all_of(seeds.begin(), seeds.end(), [&](const Word& s) { return s == seeds.front(); })) {
    throw std::invalid_argument("concat: seeds must not all be equal");
  }
}

Word next_sigma(const ConcatProgram& program, const std::vector<Word>& window) {
  // window holds sigma_n .. sigma_{n+m-1}
  Word next = window.back();
  for (auto i : program.placeholders) next += window[i - 1];
  return next;
}

}  // namespace

Word concat_expand(const ConcatProgram& program, const std::vector<Word>& seeds, std::size_t n) {
  check_seeds(program, seeds);
  if (n < 1) throw std::invalid_argument("concat_expand: index starts at 1");
  if (n <= seeds.size()) return seeds[n - 1];
  std::vector<Word> window = seeds;
  for (std::size_t i = seeds.size() + 1; i <= n; ++i) {
    Word next = next_sigma(program, window);
    window.erase(window.begin());
    window.push_back(std::move(next));
  }
  return window.back();
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return w.substr(0, p);
  }
  return w;
}

struct WordSource::Impl {
  Kind kind = Kind::periodic;
  Word period;
  std::map<char32_t, Word> table;
  char32_t seed = 1;
  std::map<char32_t, char32_t> coding;
  std::optional<RealQuadratic> slope, intercept;
  ConcatProgram program;
  std::vector<Word> seeds;
  Word finite;
  std::shared_ptr<Impl> base;
  std::size_t offset = 0;
  std::size_t alphabet = 0;

  mutable std::mutex mu;
  mutable Word cache;
  mutable std::vector<Word> sigma_window;

  void extend(std::size_t L) const;
  Word prefix(std::size_t L) const;
};

void WordSource::Impl::extend(std::size_t L) const {
  switch (kind) {
    case Kind::morphic: {
      if (cache.empty()) cache = Word(1, seed);
      while (cache.size() < L) {
        Word next;
        next.reserve(cache.size() * 2);
        for (char32_t c : cache) next += table.at(c);
        cache = std::move(next);
      }
      break;
    }
    case Kind::sturmian: {
      const RealQuadratic& a = *slope;
      const RealQuadratic& r = *intercept;
      mpz_class prev = (a * mpz_class(cache.size()) + r).floor();
      while (cache.size() < L) {
        const mpz_class next = (a * mpz_class(cache.size() + 1) + r).floor();
        cache.push_back(static_cast<char32_t>(mpz_class(next - prev).get_ui() + 1));
        prev = next;
      }
      break;
    }
    case Kind::concat: {
      if (sigma_window.empty()) {
        sigma_window = seeds;
        cache = seeds.back();
      }
      while (cache.size() < L) {
        Word next = next_sigma(program, sigma_window);
        sigma_window.erase(sigma_window.begin());
        sigma_window.push_back(next);
        cache = std::move(next);
      }
      break;
    }
    default:
      break;
  }
}

Word WordSource::Impl::prefix(std::size_t L) const {
  switch (kind) {
    case Kind::periodic: {
      Word out;
      out.reserve(L);
      for (std::size_t i = 0; i < L; ++i) out.push_back(period[i % period.size()]);
      return out;
    }
    case Kind::explicit_word:
      if (L > finite.size()) {
        throw std::out_of_range("explicit word has only " + std::to_string(finite.size()) + " letters");
      }
      return finite.substr(0, L);
    case Kind::shifted:
      return base->prefix(offset + L).substr(offset);
    default:
      break;
  }
  std::lock_guard<std::mutex> lock(mu);
  extend(L);
  Word out = cache.substr(0, L);
  if (kind == Kind::morphic && !coding.empty()) {
    for (auto& c : out) {
      auto it = coding.find(c);
      if (it != coding.end()) c = it->second;
    }
  }
  return out;
}

namespace {

std::size_t max_letter(const Word& w) {
  std::size_t m = 0;
  for (char32_t c : w) m = std::max<std::size_t>(m, c);
  return m;
}

void check_letters(const Word& w) {
  if (std::any_of(w.begin(), w.end(), [](char32_t c) { return c == 0; })) {
    throw std::invalid_argument("word letters start at 1");
  }
}

}  // namespace

WordSource WordSource::periodic(Word period) {
  if (period.empty()) throw std::invalid_argument("periodic source needs a nonempty period");
  check_letters(period);
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::periodic;
  impl->period = primitive_root(period);
  impl->alphabet = max_letter(period);
  return WordSource(impl);
}

WordSource WordSource::morphic(std::map<char32_t, Word> table, char32_t seed, std::map<char32_t, char32_t> coding) {
  auto it = table.find(seed);
  if (it == table.end() || it->second.size() < 2 || it->second.front() != seed) {
    throw std::invalid_argument("morphic source: the seed image must start with the seed and be longer than it");
  }
  std::size_t alphabet = 0;
  for (const auto& [letter, image] : table) {
    if (letter == 0 || image.empty()) throw std::invalid_argument("morphic source: bad table entry");
    check_letters(image);
    for (char32_t c : image) {
      if (!table.count(c)) throw std::invalid_argument("morphic source: letter without an image");
    }
    const char32_t coded = coding.count(letter) ? coding.at(letter) : letter;
    if (coded == 0) throw std::invalid_argument("morphic source: coding must map to letters >= 1");
    alphabet = std::max<std::size_t>(alphabet, coded);
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::morphic;
  impl->table = std::move(table);
  impl->seed = seed;
  impl->coding = std::move(coding);
  impl->alphabet = alphabet;
  return WordSource(impl);
}

WordSource WordSource::fibonacci() { return morphic({{1, parse_word("12")}, {2, parse_word("1")}}, 1); }

WordSource WordSource::thue_morse() { return morphic({{1, parse_word("12")}, {2, parse_word("21")}}, 1); }

WordSource WordSource::sturmian(RealQuadratic slope, RealQuadratic intercept) {
  if (slope.sign() <= 0 || (slope - mpz_class(1)).sign() >= 0) {
    throw std::invalid_argument("sturmian source: slope must lie in (0, 1)");
  }
  if (slope.is_rational()) throw std::invalid_argument("sturmian source: slope must be irrational");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::sturmian;
  impl->slope = std::move(slope);
  impl->intercept = std::move(intercept);
  impl->alphabet = 2;
  return WordSource(impl);
}

WordSource WordSource::concat(ConcatProgram program, std::vector<Word> seeds) {
  check_seeds(program, seeds);
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::concat;
  std::size_t alphabet = 0;
  for (const auto& s : seeds) {
    check_letters(s);
    alphabet = std::max(alphabet, max_letter(s));
  }
  impl->program = std::move(program);
  impl->seeds = std::move(seeds);
  impl->alphabet = alphabet;
  return WordSource(impl);
}

WordSource WordSource::explicit_word(Word w) {
  check_letters(w);
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::explicit_word;
  impl->alphabet = max_letter(w);
  impl->finite = std::move(w);
  return WordSource(impl);
}

WordSource WordSource::shift(std::size_t s) const {
  if (s == 0) return *this;
  if (impl_->kind == Kind::periodic) {
    const Word& u = impl_->period;
    const std::size_t r = s % u.size();
    return periodic(u.substr(r) + u.substr(0, r));
  }
  if (impl_->kind == Kind::explicit_word) {
    if (s > impl_->finite.size()) throw std::out_of_range("shift past the end of an explicit word");
    return explicit_word(impl_->finite.substr(s));
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::shifted;
  if (impl_->kind == Kind::shifted) {
    impl->base = impl_->base;
    impl->offset = impl_->offset + s;
  } else {
    impl->base = impl_;
    impl->offset = s;
  }
  impl->alphabet = impl_->alphabet;
  return WordSource(impl);
}

WordSource::Kind WordSource::kind() const { return impl_->kind; }
std::size_t WordSource::alphabet_size() const { return impl_->alphabet; }
Word WordSource::prefix(std::size_t L) const { return impl_->prefix(L); }
char32_t WordSource::at(std::size_t i) const { return impl_->prefix(i + 1).back(); }
Word WordSource::slice(std::size_t i, std::size_t len) const { return impl_->prefix(i + len).substr(i); }

std::optional<Word> WordSource::period() const {
  if (impl_->kind == Kind::periodic) return impl_->period;
  return std::nullopt;
}

std::optional<Substitution> WordSource::substitution() const {
  const Impl& base = impl_->kind == Kind::shifted ? *impl_->base : *impl_;
  Substitution s;
  if (base.kind == Kind::morphic) {
    s.table = base.table;
    s.seed = base.seed;
    for (const auto& entry : base.table) {
      const char32_t c = entry.first;
      s.image[c] = Word(1, base.coding.count(c) ? base.coding.at(c) : c);
    }
    return s;
  }
  if (base.kind == Kind::concat) {
    // Letter i stands for sigma_i: tau(i) = i+1 below the arity and
    // tau(m) = m W(1, ..., m), so sigma_{m+j} = h(tau^j(m)).
    const std::size_t m = base.seeds.size();
    for (std::size_t i = 1; i < m; ++i) s.table[i] = Word(1, static_cast<char32_t>(i + 1));
    Word top(1, static_cast<char32_t>(m));
    for (auto j : base.program.placeholders) top.push_back(static_cast<char32_t>(j));
    s.table[m] = top;
    s.seed = static_cast<char32_t>(m);
    for (std::size_t i = 1; i <= m; ++i) s.image[i] = base.seeds[i - 1];
    return s;
  }
  return std::nullopt;
}

std::size_t WordSource::offset() const { return impl_->kind == Kind::shifted ? impl_->offset : 0; }

std::optional<std::size_t> WordSource::finite_length() const {
  if (impl_->kind == Kind::explicit_word) return impl_->finite.size();
  return std::nullopt;
}

std::string WordSource::describe() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case Kind::periodic:
      os << "periodic(" << format_word(impl_->period) << ")";
      break;
    case Kind::morphic: {
      os << "morphic(";
      bool first = true;
      for (const auto& [a, img] : impl_->table) {
        os << (first ? "" : ",") << static_cast<unsigned long>(a) << "->" << format_word(img);
        first = false;
      }
      os << "; seed " << static_cast<unsigned long>(impl_->seed) << ")";
      break;
    }
    case Kind::sturmian:
      os << "sturmian(slope " << impl_->slope->to_string() << ", intercept " << impl_->intercept->to_string() << ")";
      break;
    case Kind::concat: {
      os << "concat(" << impl_->program.to_string() << "; seeds";
      for (const auto& s : impl_->seeds) os << " " << format_word(s);
      os << ")";
      break;
    }
    case Kind::explicit_word:
      os << "explicit(" << format_word(impl_->finite) << ")";
      break;
    case Kind::shifted:
      os << "shift(" << WordSource(impl_->base).describe() << ", " << impl_->offset << ")";
      break;
  }
  return os.str();
}

namespace {

struct Occurrence {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t max_gap = 0;
};

}  // namespace

FactorSet factors(const WordSource& source, std::size_t n, std::size_t window) {
  if (n == 0) throw std::invalid_argument("factors: length must be positive");
  if (window < n) throw std::invalid_argument("factors: window shorter than the factor length");
  FactorSet out;
  out.n = n;
  if (auto len = source.finite_length()) window = std::min(window, *len);
  out.window = window;
  if (window < n) return out;
  const Word w = source.prefix(window);

  std::unordered_map<Word, Occurrence> seen;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    auto [it, inserted] = seen.try_emplace(w.substr(i, n));
    Occurrence& o = it->second;
    if (inserted) {
      o.first = o.last = i;
    } else {
      o.max_gap = std::max(o.max_gap, i - o.last);
      o.last = i;
    }
  }
  out.factors.reserve(seen.size());
  for (const auto& [f, occ] : seen) out.factors.push_back(f);
  std::sort(out.factors.begin(), out.factors.end());

  switch (source.kind()) {
    case WordSource::Kind::explicit_word:
      out.exact = true;
      break;
    case WordSource::Kind::periodic:
      out.exact = window >= source.period()->size() + n - 1;
      break;
    default: {
      // Every factor seen must recur with a gap that fits twice in the window.
      const std::size_t half = window / 2;
      out.exact = std::all_of(seen.begin(), seen.end(), [&](const auto& kv) {
        const Occurrence& o = kv.second;
        return o.max_gap > 0 && o.first + n <= half && o.max_gap + n <= half && window - o.last <= half;
      });
      break;
    }
  }
  return out;
}

std::size_t complexity(const WordSource& source, std::size_t n, std::size_t window) {
  return factors(source, n, window).factors.size();
}

std::optional<std::size_t> recurrence_gap(const WordSource& source, const Word& u, std::size_t window) {
  if (u.empty()) throw std::invalid_argument("recurrence_gap: empty factor");
  if (auto len = source.finite_length()) window = std::min(window, *len);
  const Word w = source.prefix(window);
  std::optional<std::size_t> last;
  std::optional<std::size_t> gap;
  for (auto pos = w.find(u); pos != Word::npos; pos = w.find(u, pos + 1)) {
    if (last) gap = std::max(gap.value_or(0), pos - *last);
    last = pos;
  }
  return gap;
}

}  // namespace padiclab
