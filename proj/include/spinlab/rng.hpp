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

// Random number generation.
//
// Everything in spinlab that consumes randomness goes through this header so
// that results are a pure function of the 64-bit seeds involved, on every
// platform. Nothing here uses the <random> distributions, whose output is
// implementation-defined.
//
//  * mix64        SplitMix64 finalizer (Stafford variant 13).
//  * seed_mix     folds a list of integers into a seed: h0 = 0x9E3779B97F4A7C15,
//                 h <- mix64(h ^ mix64(v + 0x9E3779B97F4A7C15)) for each v.
//  * counter_u64  counter-based draw: mix64(key + (counter + 1) * golden),
//                 i.e. the counter-th output of SplitMix64 started at `key`.
//  * Rng          xoshiro256** seeded through SplitMix64, for sequential
//                 Monte Carlo loops. Rng::normal uses the Marsaglia polar
//                 method.
//  * normal_icdf  inverse standard normal CDF (Acklam's rational
//                 approximation followed by one Halley step on erfc), used for
//                 counter-based Gaussian disorder coefficients.

#ifndef SPINLAB_RNG_HPP
#define SPINLAB_RNG_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace spinlab {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t seed_mix(std::initializer_list<std::uint64_t> values) noexcept {
  std::uint64_t h = kGolden;
  for (auto v : values) h = mix64(h ^ mix64(v + kGolden));
  return h;
}

constexpr std::uint64_t counter_u64(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix64(key + (counter + 1) * kGolden);
}

/// Maps 64 random bits to a double in the open interval (0, 1).
constexpr double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double normal_icdf(double u);

/// FNV-1a, used for config hashes and experiment-id seeding.
constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& w : state_) {
      s += kGolden;
      w = mix64(s);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in (0, 1).
  double uniform() noexcept { return to_open_unit((*this)()); }

  double normal();

  /// Uniform integer in [0, bound), bound > 0 (Lemire's nearly-divisionless method).
  std::uint64_t below(std::uint64_t bound) noexcept {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spinlab

#endif  // SPINLAB_RNG_HPP
