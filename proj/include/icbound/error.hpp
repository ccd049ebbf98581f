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

#include <stdexcept>
#include <string>

namespace icb {

/// Base class for every error raised by the library. `kind()` is the stable
/// machine-readable name (e.g. "NotAProbability").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Malformed input text (pmf, function or protocol files, CLI flags).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

#define ICB_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

ICB_DEFINE_ERROR(NotAProbability);
ICB_DEFINE_ERROR(InvalidAlphabet);
ICB_DEFINE_ERROR(UnknownVariable);
ICB_DEFINE_ERROR(OverlappingVariableSets);
ICB_DEFINE_ERROR(WrongArity);
ICB_DEFINE_ERROR(TooLarge);
ICB_DEFINE_ERROR(InfeasibleAssignment);
ICB_DEFINE_ERROR(ClassMismatch);
ICB_DEFINE_ERROR(BadK);
ICB_DEFINE_ERROR(TooLargeForOracle);
ICB_DEFINE_ERROR(InconsistentInputs);
ICB_DEFINE_ERROR(DependentInputs);
ICB_DEFINE_ERROR(UncertifiedSup);
ICB_DEFINE_ERROR(BoundOrderViolation);
ICB_DEFINE_ERROR(DepthExceeded);
ICB_DEFINE_ERROR(KernelNotStochastic);
ICB_DEFINE_ERROR(PreconditionUnmet);
ICB_DEFINE_ERROR(UnknownProtocol);

#undef ICB_DEFINE_ERROR

}  // namespace icb
