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

#include <string>
#include <utility>
#include <vector>

#include "icbound/pmf.hpp"

namespace icb {

/// A total function Z = f(X, Y) over finite alphabets.
class FunctionSpec {
 public:
  /// `table[x * |Y| + y]` is the index of f(x, y) in `z_alphabet`.
  FunctionSpec(std::string name, Alphabet x_alphabet, Alphabet y_alphabet, Alphabet z_alphabet,
               std::vector<std::size_t> table);

  const std::string& name() const { return name_; }
  const Alphabet& x_alphabet() const { return x_; }
  const Alphabet& y_alphabet() const { return y_; }
  const Alphabet& z_alphabet() const { return z_; }
  std::size_t operator()(std::size_t x, std::size_t y) const { return table_[x * y_.size() + y]; }

 private:
  std::string name_;
  Alphabet x_;
  Alphabet y_;
  Alphabet z_;
  std::vector<std::size_t> table_;
};

/// Equality on {0, ..., k-1}: Z = 1 iff X = Y, Z alphabet {"0", "1"}.
FunctionSpec eq_function(int k);

/// Independent uniform X, Y on {0, ..., k-1}, variables named "X" and "Y".
JointPMF uniform_inputs(int k);

/// Index of pmf_xy's X and Y symbols in f's alphabets, by label. Throws
/// InconsistentInputs when a label is missing.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> align_inputs(
    const JointPMF& pmf_xy, const FunctionSpec& f);

struct LiftedPMF {
  JointPMF uv;
  /// (x index, z index) behind each U symbol, (y index, z index) behind V.
  std::vector<std::pair<std::size_t, std::size_t>> u_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> v_pairs;
};

/// p(U = (x,z), V = (y,z')) = p(x,y) 1{z = z' = f(x,y)}. Only positive-mass
/// pairs become symbols, labelled "(x,z)" in (x, z) index order.
LiftedPMF lift_to_uv_detailed(const JointPMF& pmf_xy, const FunctionSpec& f);
JointPMF lift_to_uv(const JointPMF& pmf_xy, const FunctionSpec& f);

/// Joint pmf over (X, Y, Z).
JointPMF with_function(const JointPMF& pmf_xy, const FunctionSpec& f);

}  // namespace icb
