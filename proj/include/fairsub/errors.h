// Copyright 2026 The Authors.
//
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

#ifndef FAIRSUB_ERRORS_H_
#define FAIRSUB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fairsub {

enum class ErrorCode {
  kInput = 1,
  kInfeasible = 2,
  kCapability = 3,
  kContract = 4,
  kIo = 5,
};

// Every error raised by the library carries one of the codes above; the C API
// maps them one-to-one onto fs_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error InputError(const std::string& msg) {
  return Error(ErrorCode::kInput, msg);
}
inline Error InfeasibleError(const std::string& msg) {
  return Error(ErrorCode::kInfeasible, msg);
}
inline Error CapabilityError(const std::string& msg) {
  return Error(ErrorCode::kCapability, msg);
}
inline Error ContractError(const std::string& msg) {
  return Error(ErrorCode::kContract, msg);
}
inline Error IoError(const std::string& msg) {
  return Error(ErrorCode::kIo, msg);
}

}  // namespace fairsub

#endif  // FAIRSUB_ERRORS_H_
