// Copyright 2026 The lzs-search-sim Authors
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

namespace lzs {

// Bad input to a library call (out-of-domain parameter, basis mismatch, ...).
using InvalidArgument = std::invalid_argument;

// Request exceeds a documented size cap (dense 2^n builders).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Special-function argument outside the supported range.
class UnsupportedRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Not enough signal in a trajectory to extract the requested quantity.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lzs
