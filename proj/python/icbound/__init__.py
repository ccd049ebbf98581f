# Copyright 2026 The icbound Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Information-complexity lower bounds via Wyner common information."""

from ._icbound import (
    FunctionSpec,
    IcboundError,
    JointPMF,
    ProtocolSpec,
    bicliques,
    builtin_protocols,
    eq_sup_closed_form,
    ic_bound,
    ic_bound_eq,
    lift_to_uv,
    protocol_cost,
    sup_oracle,
    sup_relax,
    sup_search,
    uniform_inputs,
)

__all__ = [
    "FunctionSpec",
    "IcboundError",
    "JointPMF",
    "ProtocolSpec",
    "bicliques",
    "builtin_protocols",
    "eq_sup_closed_form",
    "ic_bound",
    "ic_bound_eq",
    "lift_to_uv",
    "protocol_cost",
    "sup_oracle",
    "sup_relax",
    "sup_search",
    "uniform_inputs",
]
