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

#include "rte/error.h"

namespace rte {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kUnknownId: return "UNKNOWN_ID";
    case ErrorCode::kInvalidInstance: return "INVALID_INSTANCE";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kScenarioBlowup: return "SCENARIO_BLOWUP";
    case ErrorCode::kSolverStall: return "SOLVER_STALL";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kInternalModelError: return "INTERNAL_MODEL_ERROR";
    case ErrorCode::kMatrixNotWcdd: return "MATRIX_NOT_WCDD";
    case ErrorCode::kNotTopologicallySorted: return "NOT_TOPOLOGICALLY_SORTED";
    case ErrorCode::kInfeasibleTarget: return "INFEASIBLE_TARGET";
    case ErrorCode::kInternal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace rte
