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

#include "spinlab/combinatorics.hpp"

#include <numeric>

#include "spinlab/error.hpp"

namespace spinlab {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) throw CapacityError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t double_factorial_odd(int d) {
  std::uint64_t acc = 1;
  for (int k = 2 * d - 1; k > 1; k -= 2) acc *= static_cast<std::uint64_t>(k);
  return acc;
}

bool next_combination(std::span<int> combo, int n) {
  const int k = static_cast<int>(combo.size());
  int i = k - 1;
  while (i >= 0 && combo[i] == n - k + i) --i;
  if (i < 0) return false;
  ++combo[i];
  for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
  if (rank >= binomial(n, k)) throw DomainError("combination rank out of range");
  std::vector<int> out;
  out.reserve(k);
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    // Skip leading values whose block of completions lies entirely below rank.
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next - 1, k - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(next++);
  }
  return out;
}

std::vector<std::vector<int>> all_combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  do {
    out.push_back(combo);
  } while (next_combination(combo, n));
  return out;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t acc = 1;
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

}  // namespace spinlab
