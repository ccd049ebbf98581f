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

// Product-form auxiliaries: each class symbol is w * alpha x beta on its
// biclique, with any uncovered edge mass left to single-edge symbols.

#include <vector>

#include "icbound/wyner.hpp"

namespace icb {

struct PackingSolution {
  double value = 0.0;
  std::vector<double> x;
  /// Optimal dual prices, one per row.
  std::vector<double> y;
};

/// max c.x  s.t.  A x <= b, x >= 0, for b >= 0 (dense tableau simplex,
/// Bland's rule). `rows` holds A row by row.
PackingSolution solve_packing_lp(const std::vector<double>& c,
                                 const std::vector<std::vector<double>>& rows,
                                 const std::vector<double>& b);

struct ProductDirection {
  std::size_t class_index = 0;
  std::vector<double> alpha;  // over the class's left set
  std::vector<double> beta;   // over the class's right set
};

struct ProductFit {
  double value = 0.0;
  std::vector<double> weights;      // per direction
  std::vector<double> edge_prices;  // per graph edge
};

/// Best class weights for fixed directions.
ProductFit fit_weights(const ClassDecomposition& dec, const std::vector<ProductDirection>& dirs);

/// Log-barrier smoothing of fit_weights:
///   max_w  c.w + tau * (sum_e log(slack_e) + sum_k log w_k),
/// solved by damped Newton. `value` is the barrier objective, which is
/// smooth in the directions and tends to the LP value as tau -> 0;
/// `edge_prices` are tau / slack. `warm` may hold strictly feasible weights.
ProductFit smoothed_fit(const ClassDecomposition& dec, const std::vector<ProductDirection>& dirs,
                        double tau, const std::vector<double>& warm = {});

/// Symbols for the given directions and weights, followed by single-edge
/// symbols for whatever mass is left. Overshoot from rounding is clipped.
std::vector<QSymbol> product_symbols(const ClassDecomposition& dec,
                                     const std::vector<ProductDirection>& dirs,
                                     const std::vector<double>& weights);

}  // namespace icb
