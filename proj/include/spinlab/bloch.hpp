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

#ifndef SPINLAB_BLOCH_HPP
#define SPINLAB_BLOCH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "spinlab/error.hpp"

namespace spinlab {

using Bloch = std::array<double, 3>;

inline double dot(const Bloch& a, const Bloch& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Bloch& a) noexcept { return std::sqrt(dot(a, a)); }

inline constexpr double kUnitTolerance = 1e-12;

/// Pure product state given by one Bloch unit vector per qubit:
/// |phi_k><phi_k| = (I + n_k . sigma) / 2.
class BlochProductState {
 public:
  BlochProductState() = default;
  explicit BlochProductState(std::vector<Bloch> vectors) : vectors_(std::move(vectors)) {
    for (const auto& v : vectors_)
      if (std::abs(norm(v) - 1.0) > kUnitTolerance)
        throw ValidationError("Bloch vector is not a unit vector");
  }

  /// Rescales each vector to unit length first.
  static BlochProductState normalized(std::vector<Bloch> vectors) {
    for (auto& v : vectors) {
      const double r = norm(v);
      if (r == 0) throw ValidationError("zero Bloch vector");
      for (double& c : v) c /= r;
    }
    return BlochProductState(std::move(vectors));
  }

  static BlochProductState uniform(int n, const Bloch& v) {
    return BlochProductState(std::vector<Bloch>(static_cast<std::size_t>(n), v));
  }

  /// Independent uniformly random directions, deterministic in seed.
  static BlochProductState random(int n, std::uint64_t seed);

  int n() const noexcept { return static_cast<int>(vectors_.size()); }
  const Bloch& operator[](int q) const { return vectors_[static_cast<std::size_t>(q)]; }
  std::span<const Bloch> vectors() const noexcept { return vectors_; }

  /// Replaces one vector; must be unit length.
  void set(int q, const Bloch& v) {
    if (std::abs(norm(v) - 1.0) > kUnitTolerance)
      throw ValidationError("Bloch vector is not a unit vector");
    vectors_.at(static_cast<std::size_t>(q)) = v;
  }

 private:
  std::vector<Bloch> vectors_;
};

}  // namespace spinlab

#endif  // SPINLAB_BLOCH_HPP
