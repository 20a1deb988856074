// Copyright 2026 The mdmult Authors. All Rights Reserved.
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

#ifndef MDMULT_ERROR_HPP_
#define MDMULT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mdmult {

enum class ErrorKind {
  kValidation,     // malformed input, violated precondition
  kNoCertificate,  // a solver could not close its bracket
  kInconsistency,  // two routes that must agree did not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a solver stops before its certified bracket closes; carries
/// the best bracket reached.
class NoCertificate : public Error {
 public:
  NoCertificate(const std::string& what, double lower, double upper)
      : Error(ErrorKind::kNoCertificate, what), lower_(lower), upper_(upper) {}

  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

[[noreturn]] inline void fail(const std::string& what) {
  throw Error(ErrorKind::kValidation, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

}  // namespace mdmult

#endif  // MDMULT_ERROR_HPP_
