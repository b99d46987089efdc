// Copyright 2026 The optlattice Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPTLATTICE_ERROR_HPP
#define OPTLATTICE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace optlattice {

// Broad failure classes. The CLI maps each one to its own exit code.
enum class ErrorKind {
  invalid_argument,  // precondition or domain violation
  capacity,          // a dimension cap would be exceeded
  convergence,       // iterative method gave up
  config,            // malformed run configuration
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char *to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
      return "invalid_argument";
    case ErrorKind::capacity:
      return "capacity";
    case ErrorKind::convergence:
      return "convergence";
    case ErrorKind::config:
      return "config";
    case ErrorKind::io:
      return "io";
  }
  return "unknown";
}

inline void require(bool condition, const std::string &message) {
  if (!condition) throw Error(ErrorKind::invalid_argument, message);
}

}  // namespace optlattice

#endif  // OPTLATTICE_ERROR_HPP
