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

// Product-state geometry and optimization.
//
// Energies here are raw <mu|H|mu> values, whose disorder variance is 1 for
// every product state. Callers that want the variance-n scaling multiply by
// sqrt(n); count_net_exceedances does so internally.

#ifndef SPINLAB_PRODUCT_HPP
#define SPINLAB_PRODUCT_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "spinlab/bloch.hpp"
#include "spinlab/dense.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

/// u . v, which equals 2|<phi_u|phi_v>|^2 - 1 for the corresponding qubit states.
double bloch_overlap(const Bloch& u, const Bloch& v);

/// Per-qubit overlaps R_k = a_k . b_k.
std::vector<double> overlap_profile(const BlochProductState& a, const BlochProductState& b);

/// Degree-p elementary symmetric polynomial via the O(n p) recurrence.
double elementary_symmetric(std::span<const double> values, int p);

/// Disorder covariance E[<a|H|a><b|H|b>] of two product states with overlap
/// profile R: E_p(R) / C(n, p).
double covariance(int p, std::span<const double> profile);

struct CovarianceReport {
  double analytic = 0;
  double empirical = 0;
  double standard_error = 0;
  std::size_t samples = 0;
};

/// Compares covariance() against the sample mean of <a|H|a><b|H|b> over
/// independent Gaussian disorder draws. Deterministic in seed for any thread
/// count.
CovarianceReport covariance_monte_carlo(int p, const BlochProductState& a,
                                        const BlochProductState& b, std::size_t samples,
                                        std::uint64_t seed, unsigned threads = 1);

/// Right side minus left side of the convexity inequality
///   (sum_{1..m+k} R)^p / (m+k)^{p-1} <= (sum_{1..m} R)^p / m^{p-1}
///                                        + (sum_{m+1..m+k} R)^p / k^{p-1},
/// splitting the profile after its first m entries. Non-negative for even p.
double subadditivity_gap(int p, std::span<const double> profile, std::size_t m);

/// Points on the cap z >= 0.01 with |u . v| <= 1 - epsilon for every distinct
/// pair. The product-state net uses these points together with their
/// negations on every qubit.
struct PackingNet {
  double epsilon = 0;
  std::vector<Bloch> points;

  /// points followed by their negations.
  std::vector<Bloch> signed_points() const;
};

inline constexpr double kNetMinHeight = 0.01;

/// Latitude-banded construction: rings of equally spaced azimuths whose
/// spacing satisfies the pairwise dot-product bound, then a greedy pass that
/// drops any candidate conflicting with an accepted point or its negation.
PackingNet build_packing_net(double epsilon);

/// Checks every PackingNet invariant pairwise.
bool verify_packing_net(const PackingNet& net);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

/// Number of product states mu over the net (each qubit takes a point or its
/// negation) with sqrt(n) <mu|H|mu> >= threshold * n.
std::uint64_t count_net_exceedances(const DisorderSample& sample, const PackingNet& net,
                                    double threshold,
                                    std::uint64_t limit = kDefaultEnumerationLimit);

struct OptimizerOptions {
  int max_sweeps = 500;
  double tol = 1e-9;
  /// Record the exact energy after every single-qubit update.
  bool record_updates = false;
};

struct OptimizationResult {
  BlochProductState state;
  double energy = 0;
  /// Energy before the first sweep, then after each sweep.
  std::vector<double> sweep_trace;
  std::vector<double> update_trace;
  int sweeps = 0;
  bool converged = false;
};

/// Coordinate ascent. The energy is linear in each Bloch vector, so every
/// update sets n_i to the normalized local field. A qubit whose local field
/// vanishes, or which is already aligned with it, keeps its vector. Stops
/// when a sweep gains less than tol.
OptimizationResult optimize_product_state(const DisorderSample& sample,
                                          BlochProductState init,
                                          const OptimizerOptions& options = {});

struct MultiStartOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  OptimizerOptions optimizer;
};

struct MultiStartResult {
  OptimizationResult best;
  int best_restart = 0;
  std::vector<double> initial_energies;
  std::vector<double> final_energies;
};

/// Runs optimize_product_state from `restarts` random initial states (seeded
/// by seed_mix(seed, restart)) and keeps the highest energy, lowest restart
/// index on ties.
MultiStartResult optimize_multistart(const DisorderSample& sample,
                                     const MultiStartOptions& options);

/// Dense state vector of a product state (n <= kDenseQubitLimit).
StateVector product_state_vector(const BlochProductState& state);

}  // namespace spinlab

#endif  // SPINLAB_PRODUCT_HPP
