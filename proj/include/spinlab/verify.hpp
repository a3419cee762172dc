// Copyright 2026 The spinlab Authors.
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

// Self-check suite over the exact identities the library relies on.

#ifndef SPINLAB_VERIFY_HPP
#define SPINLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/io.hpp"

namespace spinlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Smaller sample counts and instance sizes; a few seconds in total.
  bool quick = false;
  std::uint64_t seed = 2026;
  unsigned threads = 1;
};

/// Runs every check; exceptions inside a check turn into a failed result.
std::vector<CheckResult> run_verification_suite(const VerifyOptions& options = {});

json to_json(const std::vector<CheckResult>& results);

}  // namespace spinlab

#endif  // SPINLAB_VERIFY_HPP
