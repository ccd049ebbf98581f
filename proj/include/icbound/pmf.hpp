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

// Finite joint distributions and the Shannon functionals computed from them.
//
// A JointPMF stores its masses densely in row-major order over the declared
// variables: the last variable varies fastest. Symbol order inside every
// Alphabet is the declaration order and is never rearranged, which makes all
// marginalizations and therefore all printed numbers bit-for-bit
// deterministic. All logarithms are base 2.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icb {

/// Information quantity in bits.
using Bits = double;

/// Tolerances shared across the library.
namespace tol {
inline constexpr double kIdentity = 1e-12;    // algebraic identity checks
inline constexpr double kValidation = 1e-9;   // accepted total-mass drift
inline constexpr double kSlack = 1e-9;        // clamping slack for I(.;.)
inline constexpr double kZeroMass = 1e-15;   // entries stored as exact zero
}  // namespace tol

class Alphabet {
 public:
  Alphabet(std::string name, std::vector<std::string> symbols);

  /// Symbols "0", "1", ..., "n-1".
  static Alphabet range(std::string name, std::size_t n);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  std::optional<std::size_t> index_of(std::string_view symbol) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::string name_;
  std::vector<std::string> symbols_;
};

using VarSet = std::vector<std::string>;

class JointPMF {
 public:
  /// `mass` is dense row-major over `variables`; its length must equal the
  /// product of the alphabet sizes. No normalization happens here; see
  /// validate().
  JointPMF(std::vector<Alphabet> variables, std::vector<double> mass);

  const std::vector<Alphabet>& variables() const { return variables_; }
  std::span<const double> mass() const { return mass_; }
  std::size_t arity() const { return variables_.size(); }
  std::size_t size() const { return mass_.size(); }
  std::vector<std::size_t> shape() const;

  const Alphabet& variable(std::size_t i) const { return variables_.at(i); }
  /// Position of a named variable; throws UnknownVariable.
  std::size_t variable_index(std::string_view name) const;

  /// Dense offset of a full symbol-index tuple.
  std::size_t offset(std::span<const std::size_t> index) const;
  /// Inverse of offset().
  std::vector<std::size_t> unravel(std::size_t offset) const;
  double at(std::span<const std::size_t> index) const { return mass_[offset(index)]; }

  /// Marginal over the given variable positions, dense row-major in the
  /// order given.
  std::vector<double> marginal(std::span<const std::size_t> positions) const;
  /// Marginal distribution as a new JointPMF over the named variables.
  JointPMF marginal_pmf(const VarSet& vars) const;

  double total() const;

 private:
  std::vector<Alphabet> variables_;
  std::vector<double> mass_;
  std::vector<std::size_t> strides_;
};

/// Returns a normalized copy. Entries below 1e-15 become exact zero.
/// Throws NotAProbability on a negative entry or total drift above 1e-9.
JointPMF validate(const JointPMF& pmf);

/// Whether clamped functionals snap small negatives to zero.
enum class Slack { clamp, raw };

/// Shannon entropy of a probability vector, 0 log 0 = 0.
Bits entropy_of(std::span<const double> probabilities);

Bits entropy(const JointPMF& pmf, const VarSet& vars);
Bits conditional_entropy(const JointPMF& pmf, const VarSet& target, const VarSet& given);
Bits mutual_information(const JointPMF& pmf, const VarSet& a, const VarSet& b,
                        Slack slack = Slack::clamp);
Bits conditional_mutual_information(const JointPMF& pmf, const VarSet& a, const VarSet& b,
                                    const VarSet& given, Slack slack = Slack::clamp);

/// Binary entropy H_2(p).
Bits binary_entropy(double p);

/// Maps values in [-1e-9, 0) to 0; anything else is returned unchanged.
inline double clamp_slack(double value) {
  return (value < 0.0 && value >= -tol::kSlack) ? 0.0 : value;
}

/// Uniform distribution on the product of the given alphabets.
JointPMF uniform_pmf(std::vector<Alphabet> variables);

/// Product distribution p(x) q(y) of two single-variable pmfs.
JointPMF product_pmf(const JointPMF& a, const JointPMF& b);

}  // namespace icb
