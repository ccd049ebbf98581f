// Copyright 2026 The icbound Authors
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

// Line-oriented text formats.
//
//   pmf     header `pmf <k> <names...>`, atoms `<sym_1> ... <sym_k> TAB <prob>`
//   fn      header `fn <name>`, lines `<x> <y> TAB <z>`
//   protocol
//           `protocol <name>`, `inputs X <k> [labels...]`, `inputs Y <k> [labels...]`,
//           per round `round <i> sender <A|B> messages <m> [labels...]` followed by
//           `on <input> prefix <msg...|-> : <msg>=<prob> ...`, and
//           `terminal prefix <msg...>` lines anywhere after the rounds they name.
//
// Lines starting with `#` and blank lines are ignored. Symbols take their
// order of first appearance. Probabilities are decimals or rationals `a/b`.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "icbound/function.hpp"
#include "icbound/pmf.hpp"
#include "icbound/protocol.hpp"
#include "icbound/wyner.hpp"

namespace icb {

/// Decimal or `a/b`; throws ParseError.
double parse_probability(std::string_view text);

/// Shortest decimal that reads back to the same double.
std::string format_exact(double value);

/// Six decimals with "-0.000000" printed as "0.000000".
std::string format_bits(double value);

/// Parsed and validated; throws ParseError or NotAProbability.
JointPMF read_pmf(std::istream& in);
JointPMF read_pmf_file(const std::filesystem::path& path);
/// Positive-mass atoms only, in row-major order.
void write_pmf(std::ostream& out, const JointPMF& pmf);

/// The function must be defined on every (x, y) pair of the symbols it
/// mentions.
FunctionSpec read_function(std::istream& in);
FunctionSpec read_function_file(const std::filesystem::path& path);
void write_function(std::ostream& out, const FunctionSpec& f);

ProtocolSpec read_protocol(std::istream& in);
ProtocolSpec read_protocol_file(const std::filesystem::path& path);
void write_protocol(std::ostream& out, const ProtocolSpec& p);

/// The witness as a pmf over (Q, U, V).
void write_witness(std::ostream& out, const QAssignment& q);

}  // namespace icb
