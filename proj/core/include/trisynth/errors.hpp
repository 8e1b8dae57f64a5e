// Copyright 2026 The trisynth authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace trisynth {

struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct NotSpecialOrthogonal : Error {
  explicit NotSpecialOrthogonal(const std::string &msg) : Error(msg) {}
};

struct NotSymmetric : Error {
  explicit NotSymmetric(const std::string &msg) : Error(msg) {}
};

struct NotSkewSymmetric : Error {
  explicit NotSkewSymmetric(const std::string &msg) : Error(msg) {}
};

struct NotTensorProduct : Error {
  explicit NotTensorProduct(const std::string &msg) : Error(msg) {}
};

struct NotSpecialUnitary : Error {
  explicit NotSpecialUnitary(const std::string &msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string &msg) : Error(msg) {}
};

struct GroundSetMismatch : Error {
  explicit GroundSetMismatch(const std::string &msg) : Error(msg) {}
};

struct ParameterMismatch : Error {
  explicit ParameterMismatch(const std::string &msg) : Error(msg) {}
};

struct NotInBlockGroup : Error {
  explicit NotInBlockGroup(const std::string &msg) : Error(msg) {}
};

struct NotInCartanSubgroup : Error {
  explicit NotInCartanSubgroup(const std::string &msg) : Error(msg) {}
};

struct ConstructionInconsistent : Error {
  explicit ConstructionInconsistent(const std::string &msg) : Error(msg) {}
};

struct TemplateVerificationFailed : Error {
  explicit TemplateVerificationFailed(const std::string &msg) : Error(msg) {}
};

struct SynthesisVerificationFailed : Error {
  explicit SynthesisVerificationFailed(const std::string &msg) : Error(msg) {}
};

struct BadQubitIndex : Error {
  explicit BadQubitIndex(const std::string &msg) : Error(msg) {}
};

struct ParseError : Error {
  ParseError(const std::string &msg, int line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  int line_number;
};

}  // namespace trisynth
