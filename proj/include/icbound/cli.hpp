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

// Command-line front end. Exit status: 0 success, 1 parse or usage error,
// 2 domain error (infeasible, uncertified, out of range).

#include <ostream>
#include <string>
#include <vector>

namespace icb {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icb
