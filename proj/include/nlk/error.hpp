// Copyright 2026 The NLK Authors
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

#ifndef NLK_ERROR_HPP
#define NLK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlk {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kOutOfRange,
  kNonFinite,
  kParse,
  kEmptyData,
  kUnsupported,
  kNonConvergence,
  kIo,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kEmptyData: return "empty_data";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by iterative solvers. Carries the last iterate (flattened) and the
// residuals seen when the iteration budget ran out, so callers can inspect
// how far from a solution the solver got.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last_iterate,
                      std::vector<double> residuals = {})
      : Error(ErrorCode::kNonConvergence, what),
        last_iterate_(std::move(last_iterate)),
        residuals_(std::move(residuals)) {}

  const std::vector<double>& last_iterate() const noexcept {
    return last_iterate_;
  }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> last_iterate_;
  std::vector<double> residuals_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace nlk

#endif  // NLK_ERROR_HPP
