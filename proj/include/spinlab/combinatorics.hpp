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

#ifndef SPINLAB_COMBINATORICS_HPP
#define SPINLAB_COMBINATORICS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace spinlab {

/// C(n, k); throws CapacityError on 64-bit overflow. Zero when k > n.
std::uint64_t binomial(int n, int k);

/// (2d - 1)!!, with (-1)!! = 1.
std::uint64_t double_factorial_odd(int d);

/// Advances `combo` (strictly increasing, values in [0, n)) to the next
/// k-subset in lexicographic order. Returns false after the last one.
bool next_combination(std::span<int> combo, int n);

/// The rank-th k-subset of [0, n) in lexicographic order.
std::vector<int> unrank_combination(std::uint64_t rank, int n, int k);

/// All k-subsets of [0, n), lexicographic.
std::vector<std::vector<int>> all_combinations(int n, int k);

std::uint64_t ipow(std::uint64_t base, int exp);

}  // namespace spinlab

#endif  // SPINLAB_COMBINATORICS_HPP
