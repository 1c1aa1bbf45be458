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

#include "padiclab/padic.hpp"

#include <cmath>
#include <numeric>

namespace padiclab {

long ExtVal::numerator() const {
  if (inf_) throw std::logic_error("ExtVal: infinite exponent has no numerator");
  return twice_ % 2 == 0 ? twice_ / 2 : twice_;
}

long ExtVal::denominator() const {
  if (inf_) throw std::logic_error("ExtVal: infinite exponent has no denominator");
  return twice_ % 2 == 0 ? 1 : 2;
}

long ExtVal::twice() const {
  if (inf_) throw std::logic_error("ExtVal: infinite exponent");
  return twice_;
}

ExtVal ExtVal::operator+(ExtVal other) const {
  if (inf_ || other.inf_) return infinity();
  return halves(twice_ + other.twice_);
}

ExtVal ExtVal::operator-(ExtVal other) const {
  if (other.inf_) throw std::domain_error("ExtVal: subtracting an infinite exponent");
  if (inf_) return infinity();
  return halves(twice_ - other.twice_);
}

ExtVal ExtVal::operator-() const {
  if (inf_) throw std::domain_error("ExtVal: negating an infinite exponent");
  return halves(-twice_);
}

ExtVal ExtVal::scaled(long n) const {
  if (inf_) return n == 0 ? ExtVal{} : infinity();
  return halves(twice_ * n);
}

namespace {

std::string exponent_text(const ExtVal& e) {
  // |x| = p^(-e)
  const long num = -e.numerator();
  const long den = e.denominator();
  std::string s = std::to_string(num);
  if (den != 1) s += "/" + std::to_string(den);
  return s;
}

}  // namespace

std::string ExtVal::to_string() const {
  if (inf_) return "0";
  return "p^" + exponent_text(*this);
}

std::string ExtVal::to_string(unsigned long p) const {
  if (inf_) return "0";
  return std::to_string(p) + "^" + exponent_text(*this);
}

double ExtVal::to_double(unsigned long p) const {
  if (inf_) return 0.0;
  return std::pow(static_cast<double>(p), -0.5 * static_cast<double>(twice_));
}

ExtVal ExtVal::parse(const std::string& text) {
  if (text == "0") return infinity();
  if (text == "1") return ExtVal{};
  const auto caret = text.find('^');
  if (caret == std::string::npos) throw std::invalid_argument("ExtVal: malformed '" + text + "'");
  const std::string exp = text.substr(caret + 1);
  try {
    const auto slash = exp.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long num = std::stol(exp, &used);
      if (used != exp.size()) throw std::invalid_argument("trailing");
      return integer(-num);
    }
    const long num = std::stol(exp.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("trailing");
    const std::string den_text = exp.substr(slash + 1);
    const long den = std::stol(den_text, &used);
    if (used != den_text.size()) throw std::invalid_argument("trailing");
    if (den == 1) return integer(-num);
    if (den != 2) throw std::invalid_argument("denominator");
    return halves(-num);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("ExtVal: malformed '" + text + "'");
  }
}

}  // namespace padiclab
