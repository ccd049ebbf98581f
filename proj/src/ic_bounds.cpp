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

#include "icbound/ic_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "icbound/error.hpp"

namespace icb {

std::string to_string(BoundRoute route) {
  switch (route) {
    case BoundRoute::closed_form_eq:
      return "closed_form_eq";
    case BoundRoute::relaxation:
      return "relaxation";
    case BoundRoute::search_witnessed:
      return "search_witnessed";
  }
  return "unknown";
}

std::optional<Bits> BoundReport::sup_gap() const {
  if (!sup_achieved) return std::nullopt;
  return sup_upper - *sup_achieved;
}

namespace {

void require_independent(const JointPMF& pmf_xy) {
  if (pmf_xy.arity() != 2) throw WrongArity("input pmf must be over (X, Y)");
  const auto& x = pmf_xy.variable(0).name();
  const auto& y = pmf_xy.variable(1).name();
  const double info = mutual_information(pmf_xy, {x}, {y}, Slack::raw);
  if (info > tol::kValidation) {
    throw DependentInputs("inputs are dependent: I(X;Y) = " + std::to_string(info));
  }
}

}  // namespace

Bits input_form_bound(const JointPMF& pmf_xy, Bits sup) {
  const auto& x = pmf_xy.variable(0).name();
  const auto& y = pmf_xy.variable(1).name();
  return conditional_entropy(pmf_xy, {x}, {y}) + conditional_entropy(pmf_xy, {y}, {x}) - sup;
}

Bits tension_form_bound(const JointPMF& pmf_xy, const FunctionSpec& f, Bits sup) {
  const auto uv = lift_to_uv(pmf_xy, f);
  const Bits tension =
      conditional_entropy(uv, {"U"}, {"V"}) + conditional_entropy(uv, {"V"}, {"U"}) - sup;
  const auto xyz = with_function(pmf_xy, f);
  const auto& x = xyz.variable(0).name();
  const auto& y = xyz.variable(1).name();
  return tension + conditional_mutual_information(xyz, {x}, {"Z"}, {y}, Slack::raw) +
         conditional_mutual_information(xyz, {y}, {"Z"}, {x}, Slack::raw);
}

BoundReport ic_lower_bound(const JointPMF& pmf_xy, const FunctionSpec& f, const SupResult& sup,
                           const std::optional<SupResult>& achieved) {
  require_independent(pmf_xy);
  if (sup.kind == SupKind::achieved_lower) {
    throw UncertifiedSup("an achieved sup is a lower bound on the sup and cannot certify IC");
  }
  const auto uv = lift_to_uv(pmf_xy, f);
  const auto uv_print = fingerprint(uv);
  for (const SupResult* s : {&sup, achieved ? &*achieved : nullptr}) {
    if (s && s->input_fingerprint != 0 && s->input_fingerprint != uv_print) {
      throw InconsistentInputs("sup was computed from a different distribution");
    }
  }

  BoundReport r;
  const auto& x = pmf_xy.variable(0).name();
  const auto& y = pmf_xy.variable(1).name();
  r.h_x_given_y = conditional_entropy(pmf_xy, {x}, {y});
  r.h_y_given_x = conditional_entropy(pmf_xy, {y}, {x});
  r.sup_upper = sup.value;
  if (sup.kind == SupKind::certified_upper) {
    const Bits cap = conditional_entropy(uv, {"U"}, {"V"}) + conditional_entropy(uv, {"V"}, {"U"});
    r.sup_upper = std::min(r.sup_upper, cap);
  }
  r.ic_lower = r.h_x_given_y + r.h_y_given_x - r.sup_upper;
  r.route = sup.kind == SupKind::exact ? BoundRoute::search_witnessed : BoundRoute::relaxation;
  if (achieved) r.sup_achieved = achieved->value;
  r.provenance = {fingerprint(pmf_xy), uv_print, f.name(), sup.kind, 0, 0};
  if (achieved) {
    r.provenance.seed = achieved->seed;
    r.provenance.restarts = achieved->restarts;
  } else {
    r.provenance.seed = sup.seed;
    r.provenance.restarts = sup.restarts;
  }

  if (sup.kind == SupKind::exact) {
    const Bits other = tension_form_bound(pmf_xy, f, sup.value);
    if (std::abs(other - r.ic_lower) > 1e-9) {
      throw InconsistentInputs("bound assemblies disagree: " + std::to_string(r.ic_lower) + " vs " +
                               std::to_string(other));
    }
  }
  return r;
}

BoundReport ic_lower_bound_eq(int k) {
  if (k < 2) throw BadK("k must be at least 2, got " + std::to_string(k));
  const double kd = k;
  BoundReport r;
  r.route = BoundRoute::closed_form_eq;
  r.h_x_given_y = std::log2(kd);
  r.h_y_given_x = std::log2(kd);
  r.sup_upper = eq_sup_closed_form(k);
  // The closed forms directly; subtracting the sup loses digits for large k.
  if (k % 2 == 0) {
    r.ic_lower = 2.0 + (2.0 / kd) * std::log2(kd / 2.0);
  } else {
    r.ic_lower = 2.0 * std::log2(kd) - (1.0 - 1.0 / kd) * std::log2((kd - 1.0) * (kd + 1.0) / 4.0);
  }
  r.provenance.function = "eq" + std::to_string(k);
  r.provenance.sup_kind = SupKind::exact;
  return r;
}

BoundReport attach_upper_bound(BoundReport report, Bits cost) {
  if (cost < report.ic_lower - tol::kValidation) {
    throw BoundOrderViolation("upper bound " + std::to_string(cost) + " is below lower bound " +
                              std::to_string(report.ic_lower));
  }
  report.ic_upper = cost;
  report.gap = cost - report.ic_lower;
  return report;
}

SupResult close_sandwich(const SupResult& upper, const SupResult& lower, double slack) {
  if (upper.kind != SupKind::certified_upper || lower.kind != SupKind::achieved_lower ||
      lower.value < upper.value - slack) {
    return upper;
  }
  SupResult r = lower;
  r.value = upper.value;
  r.kind = SupKind::exact;
  return r;
}

}  // namespace icb
