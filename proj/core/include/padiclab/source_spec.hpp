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

#include <string>
#include <string_view>

#include "padiclab/mat2.hpp"
#include "padiclab/numeric.hpp"
#include "padiclab/proj_line.hpp"
#include "padiclab/words.hpp"

namespace padiclab {

/// Parses a word-source description:
///
///   periodic:12            fibonacci            thue_morse
///   morphic:table=1->12,2->1;seed=1[;coding=1->1,2->2]
///   sturmian:slope=golden-1[;intercept=0]
///   concat:seeds=1,2;program=X1
///   explicit:12112
///
/// Any of them may end in "@shift=N". Throws std::invalid_argument.
WordSource parse_source(std::string_view text);

/// "golden" ((1+sqrt5)/2), "golden-1", "sqrt2-1", "sqrt(D)", a rational
/// "a/b", or "a,b,D,c" for (a + b sqrt D) / c.
RealQuadratic parse_real(std::string_view text);

/// "x:y" with rational coordinates, as an exact point over Q_p.
ProjPoint parse_point(std::string_view text, unsigned long p, int cap);

/// "[a,b;c,d]" or a word w (meaning A_w).
Mat2 parse_matrix(std::string_view text);

/// Human-readable summary of the accepted source syntax.
std::string source_syntax();

}  // namespace padiclab
