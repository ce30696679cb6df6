// Copyright 2026 The actx Authors
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

#ifndef ACTX_ERROR_H_
#define ACTX_ERROR_H_

#include <stdexcept>
#include <string>

namespace actx {

// Base of every error thrown by the library. Subclasses only exist so callers
// and tests can tell the failure categories apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("shape error: " + what) {}
};

class DegenerateRoiError : public Error {
 public:
  explicit DegenerateRoiError(const std::string& what)
      : Error("degenerate roi: " + what) {}
};

class DegenerateReferenceError : public Error {
 public:
  explicit DegenerateReferenceError(const std::string& what)
      : Error("degenerate reference box: " + what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error("format error: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error("numeric error: " + what) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& what)
      : Error("training error: " + what) {}
};

}  // namespace actx

#endif  // ACTX_ERROR_H_
