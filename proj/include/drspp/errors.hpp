// Copyright 2026 The drspp Authors
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

#ifndef DRSPP_ERRORS_HPP
#define DRSPP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drspp {

// Base class for all errors raised by the library.
class DrsppError : public std::runtime_error {
 public:
  explicit DrsppError(const std::string& what) : std::runtime_error(what) {}
};

class NoPathError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class NegativeCycleError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class CapExceededError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class SampleOutOfSupportError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class UnresolvableSampleError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class RequiresMipError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class AmbiguityInfeasibleError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

class NodeLimitError : public DrsppError {
 public:
  using DrsppError::DrsppError;
};

}  // namespace drspp

#endif  // DRSPP_ERRORS_HPP
