// Copyright 2026 The resilient-te Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RTE_ERROR_H_
#define RTE_ERROR_H_

#include <stdexcept>
#include <string>

namespace rte {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownId,
  kInvalidInstance,
  kParse,
  kScenarioBlowup,
  kSolverStall,
  kBudgetExceeded,
  kInternalModelError,
  kMatrixNotWcdd,
  kNotTopologicallySorted,
  kInfeasibleTarget,
  kInternal,
};

// Machine-readable name, e.g. "SCENARIO_BLOWUP".
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rte

#endif  // RTE_ERROR_H_
