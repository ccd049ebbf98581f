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

// The supremum of H(U|Q) + H(V|Q) over auxiliaries Q with U - Q - V.
//
// Three routes produce values for the same quantity:
//   relaxed_sup_upper_bound  certified upper bound (per-edge LP relaxation)
//   achievability_search     feasible witness found by penalized ascent
//   brute_force_oracle       grid-based oracle for tiny inputs (oracle.hpp)
// and the k-ary equality family has closed forms with explicit optimizers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icbound/char_graph.hpp"
#include "icbound/pmf.hpp"

namespace icb {

/// One symbol q of the auxiliary alphabet. Its conditional support lies in the
/// biclique of `class_index`; `mass[i * |right_set| + j]` is
/// p(q, left_set[i], right_set[j]).
struct QSymbol {
  std::size_t class_index = 0;
  std::vector<double> mass;

  double weight() const;
};

class QAssignment {
 public:
  QAssignment(ClassDecomposition decomposition, std::vector<QSymbol> symbols);

  const ClassDecomposition& decomposition() const { return decomposition_; }
  const std::vector<QSymbol>& symbols() const { return symbols_; }
  const BicliqueClass& class_of(const QSymbol& s) const {
    return decomposition_.classes.at(s.class_index);
  }

  /// Sum over symbols of p(q, u, v), dense row-major over U x V.
  std::vector<double> uv_marginal() const;

  /// p(Q, U, V) as a three-variable pmf with Q symbols "q0", "q1", ...
  JointPMF to_pmf() const;

 private:
  ClassDecomposition decomposition_;
  std::vector<QSymbol> symbols_;
};

enum class SupKind { certified_upper, achieved_lower, exact };
std::string to_string(SupKind kind);

struct Residuals {
  double marginal = 0.0;  // max |sum_q p(q,u,v) - p(u,v)|
  double markov = 0.0;    // max_q I(U;V|Q=q)
};

struct SupResult {
  Bits value = 0.0;
  SupKind kind = SupKind::certified_upper;
  std::optional<QAssignment> witness;
  Residuals residuals;
  bool budget_exhausted = false;
  std::uint64_t input_fingerprint = 0;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
};

struct ResidualReport {
  double marginal_residual = 0.0;
  double markov_residual = 0.0;
  double mass_error = 0.0;
  bool valid_strict = false;   // all residuals <= 1e-9
  bool valid_relaxed = false;  // all residuals <= 1e-6
};

/// Exact H(U|Q) + H(V|Q). Throws InfeasibleAssignment when the U,V marginal
/// misses the graph's masses by more than 1e-6.
Bits objective(const QAssignment& q);

/// H(U|Q) and H(V|Q) separately.
std::pair<Bits, Bits> conditional_entropies(const QAssignment& q);

ResidualReport verify(const QAssignment& q, const JointPMF& pmf);

/// I(U;V|Q=q) of one symbol (0 for zero-weight symbols).
Bits symbol_markov_residual(const QAssignment& q, std::size_t symbol);

/// Replaces symbols `first` and `second` (same class) by one symbol carrying
/// their edge-wise summed masses, placed at min(first, second).
QAssignment merge_same_class(const QAssignment& q, std::size_t first, std::size_t second);

/// Sum over edges of p(e) * max over classes containing e of
/// log2|left| + log2|right|.
SupResult relaxed_sup_upper_bound(const JointPMF& pmf, const ClassDecomposition& dec);

struct SearchConfig {
  std::uint64_t seed = 1;
  std::size_t restarts = 32;
  std::size_t iterations = 500;  // per penalty stage
  std::vector<double> penalties = {1.0, 4.0, 16.0, 64.0, 256.0};
  double step = 0.05;
  std::size_t polish_iterations = 1200;
  std::size_t finishing_iterations = 20000;  // for the two best restarts
  std::size_t workers = 1;
  /// Total ascent iterations allowed across restarts; 0 means unlimited.
  std::size_t iteration_budget = 0;
};

SupResult achievability_search(const JointPMF& pmf, const ClassDecomposition& dec,
                               const SearchConfig& config = {});

/// Per-restart generator seed.
std::uint64_t restart_seed(std::uint64_t master, std::size_t restart);

/// Closed-form sup for k-ary equality on uniform inputs.
Bits eq_sup_closed_form(int k);

/// The optimal auxiliary for k-ary equality: uniform mass on the balanced
/// classes of the Z=0 component and the Z=1 singletons.
QAssignment eq_optimal_q(int k);

/// H(U|V) + H(V|U) - sup. A lower bound on the Wyner tension for a
/// certified_upper sup (floored at 0), an upper bound for achieved_lower,
/// exact for exact. Throws InconsistentInputs when `sup` was computed from a
/// different pmf, or an exact sup yields a negative tension.
Bits wyner_tension(const JointPMF& pmf, const SupResult& sup);

/// Stable 64-bit fingerprint of a pmf (names, symbols and mass bits).
std::uint64_t fingerprint(const JointPMF& pmf);

}  // namespace icb
