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

// Independent verification oracle for the sup term on tiny inputs.
//
// Every class symbol is parametrized in product form w * alpha x beta. For
// fixed directions (alpha, beta) the best weights solve a packing LP
//   max sum_c w_c (H(alpha_c) + H(beta_c))
//   s.t. sum_c w_c alpha_c(u) beta_c(v) <= p(u, v),  w >= 0,
// with any uncovered mass left to single-edge symbols. Directions start from
// a coarse grid over all classes, class-by-class sweeps on the step 1/32
// grid and random points, each followed by local refinement on successively
// halved grids. The best few are then polished by quasi-Newton ascent on a
// log-barrier smoothing of the weight fit.

#include <cstdint>
#include <vector>

#include "icbound/wyner.hpp"

namespace icb {

struct OracleConfig {
  int grid = 32;
  int refine_levels = 12;
  std::size_t max_sweeps = 50;
  std::size_t joint_starts = 10;  // best points of a coarse grid over all classes
  std::size_t random_starts = 4;
  std::size_t polished = 16;  // refined states passed on to the smooth polish
  std::size_t polish_steps = 60;  // per barrier stage
  std::size_t finishing_steps = 400;
  std::uint64_t seed = 7;
  // Guard.
  std::size_t max_classes = 9;
  std::size_t max_class_side = 3;
  std::size_t max_vertices = 6;  // active vertices per side
};

/// Throws TooLargeForOracle outside the guard.
SupResult brute_force_oracle(const JointPMF& pmf, const OracleConfig& config = {});

}  // namespace icb
