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

// Disorder variance E[<phi|H|phi>^2] of fixed states, exactly.

#ifndef SPINLAB_MOMENTS_HPP
#define SPINLAB_MOMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/dense.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

/// Largest C(n, k) for which purity averages enumerate subsets.
inline constexpr std::uint64_t kMaxSubsetCount = 100000;

/// <phi|P|phi> / <phi|phi> for a Pauli term.
double pauli_expectation(const StateVector& state, const PauliTerm& term);

/// normalization^2 * sum over the model's terms of <phi|P|phi>^2.
double state_variance(const StateVector& state, const ModelConfig& config);

/// A_0 .. A_p: average Tr(rho_S^2) / Tr(rho_S)^2 over all k-subsets S.
struct PurityProfile {
  int n = 0;
  int p = 0;
  std::vector<double> A;
};

PurityProfile purity_profile(const StateVector& state, int p);

/// sum_k (-1)^{p-k} 2^k C(p,k) A_k.
double purity_variance(const StateVector& state, int p);

/// Adjusted-model variance: A_p, the average p-subset purity.
double adjusted_variance(const StateVector& state, int p);

struct HaarVarianceReport {
  int n = 0;
  int p = 0;
  std::size_t samples = 0;
  double empirical_mean = 0;
  double standard_error = 0;
  /// 3^p / (2^n + 1)
  double target = 0;
};

double haar_variance_target(int n, int p);

HaarVarianceReport haar_variance_check(int n, int p, std::size_t samples, std::uint64_t seed,
                                       unsigned threads = 1);

struct VarianceRow {
  int n = 0;
  int p = 0;
  std::uint64_t seed = 0;
  double state_variance = 0;
  double purity_variance = 0;
  double adjusted_variance = 0;
};

/// Evaluates all three variances on one state.
VarianceRow variance_row(const StateVector& state, int p, std::uint64_t seed);

/// CSV with header n,p,seed,state_variance,purity_variance,adjusted_variance.
std::string variance_csv(const std::vector<VarianceRow>& rows);

}  // namespace spinlab

#endif  // SPINLAB_MOMENTS_HPP
