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

// Information-complexity lower bounds for independent inputs:
//   IC(Z) >= H(X|Y) + H(Y|X) - sup_Q [H(U|Q) + H(V|Q)],   U = XZ, V = YZ,
// equivalently T_Wyn(XZ;YZ) + I(X;Z|Y) + I(Y;Z|X).

#include <cstdint>
#include <optional>
#include <string>

#include "icbound/function.hpp"
#include "icbound/wyner.hpp"

namespace icb {

enum class BoundRoute { closed_form_eq, relaxation, search_witnessed };
std::string to_string(BoundRoute route);

struct Provenance {
  std::uint64_t input_fingerprint = 0;  // of the (X, Y) pmf; 0 for closed forms
  std::uint64_t uv_fingerprint = 0;     // of the lifted (U, V) pmf
  std::string function;
  SupKind sup_kind = SupKind::certified_upper;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
};

struct BoundReport {
  Bits ic_lower = 0.0;
  BoundRoute route = BoundRoute::relaxation;
  Bits sup_upper = 0.0;
  std::optional<Bits> sup_achieved;
  std::optional<Bits> ic_upper;
  std::optional<Bits> gap;  // ic_upper - ic_lower
  Bits h_x_given_y = 0.0;
  Bits h_y_given_x = 0.0;
  Provenance provenance;

  /// sup_upper - sup_achieved when a witness value is attached.
  std::optional<Bits> sup_gap() const;
};

/// The bound from a certified (or exact) sup for the lifted pmf of
/// (pmf_xy, f). A certified upper sup is first capped at H(U|V) + H(V|U),
/// which bounds the sup by data processing. `achieved`, when given, is
/// reported alongside. Throws DependentInputs when I(X;Y) > 1e-9,
/// UncertifiedSup for an achieved_lower sup, InconsistentInputs when the sup
/// was computed from another pmf or, for an exact sup, when the two
/// assemblies disagree by more than 1e-9.
BoundReport ic_lower_bound(const JointPMF& pmf_xy, const FunctionSpec& f, const SupResult& sup,
                           const std::optional<SupResult>& achieved = std::nullopt);

/// Closed form for k-ary equality on uniform inputs.
BoundReport ic_lower_bound_eq(int k);

/// Pairs a report with a protocol's information cost. Throws
/// BoundOrderViolation when cost < ic_lower - 1e-9.
BoundReport attach_upper_bound(BoundReport report, Bits cost);

/// H(X|Y) + H(Y|X) - sup.
Bits input_form_bound(const JointPMF& pmf_xy, Bits sup);

/// T_Wyn(XZ;YZ) + I(X;Z|Y) + I(Y;Z|X) with T_Wyn = H(U|V) + H(V|U) - sup
/// on the lifted pmf (no flooring).
Bits tension_form_bound(const JointPMF& pmf_xy, const FunctionSpec& f, Bits sup);

/// Exact sup when a witness meets the certified upper bound within `slack`,
/// otherwise `upper` unchanged.
SupResult close_sandwich(const SupResult& upper, const SupResult& lower, double slack = 1e-9);

}  // namespace icb
