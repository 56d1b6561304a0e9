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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace lzs {

struct SelftestCase {
  std::string name;
  // Returns an empty string on success, otherwise what went wrong.
  std::function<std::string()> run;
};

/// Closed-form and cross-check examples for every module, each a few
/// milliseconds to a few seconds.
const std::vector<SelftestCase>& selftest_cases();

/// Runs every case, printing "PASS name" / "FAIL name: detail" lines.
/// Returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace lzs
