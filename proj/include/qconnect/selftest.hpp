// Copyright 2026 The qconnect Authors - All Rights Reserved.
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

#ifndef QCONNECT_SELFTEST_HPP
#define QCONNECT_SELFTEST_HPP

#include <string>
#include <vector>

namespace qconnect {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed;
  double value;      // measured residual (or 0/1 for boolean checks)
  double threshold;  // pass iff value < threshold
};

std::vector<std::string> selftest_modules();

/// Runs the invariant suites; filter selects one module ("" runs all).
std::vector<CheckResult> run_selftest(const std::string& filter = "");

}  // namespace qconnect

#endif  // QCONNECT_SELFTEST_HPP
