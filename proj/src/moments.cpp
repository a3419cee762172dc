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

#include "spinlab/moments.hpp"

#include <bit>
#include <cmath>

#include "spinlab/combinatorics.hpp"
#include "spinlab/error.hpp"
#include "spinlab/io.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/spectral.hpp"

namespace spinlab {

double pauli_expectation(const StateVector& state, const PauliTerm& term) {
  if (term.n != state.n()) throw DimensionError("term and state differ in qubit count");
  const PhasedPauli w = term.to_word();
  const std::uint64_t xm = w.x_index_mask(), zm = w.z_index_mask();
  // Y = i X Z, so P|k> = i^{#Y} (-1)^{|k & z|} |k ^ x>.
  const cplx phase = w.with_phase(w.phase_exponent() + std::popcount(xm & zm)).phase();
  const auto& a = state.amplitudes();
  cplx total = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    const cplx v = std::conj(a(static_cast<Eigen::Index>(uk ^ xm))) * a(k);
    total += (std::popcount(uk & zm) & 1) ? -v : v;
  }
  // Divide by the norm so round-off in a nearly normalized state cancels.
  return (phase * total).real() / a.squaredNorm();
}

double state_variance(const StateVector& state, const ModelConfig& config) {
  require_dense(state.n(), "state_variance");
  if (config.n != state.n()) throw DimensionError("model and state differ in qubit count");
  double total = 0;
  for (const auto& t : enumerate_terms(config)) {
    const double e = pauli_expectation(state, t);
    total += e * e;
  }
  const double norm = config.normalization();
  return norm * norm * total;
}

PurityProfile purity_profile(const StateVector& state, int p) {
  const int n = state.n();
  require_dense(n, "purity_profile");
  if (p < 0 || p > n) throw DomainError("need 0 <= p <= n");
  PurityProfile out{n, p, {1.0}};
  for (int k = 1; k <= p; ++k) {
    const std::uint64_t count = binomial(n, k);
    if (count > kMaxSubsetCount)
      throw CapacityError("purity average over C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") = " + std::to_string(count) + " subsets exceeds " +
                          std::to_string(kMaxSubsetCount));
    double sum = 0;
    for (const auto& subset : all_combinations(n, k)) {
      const auto rho = partial_trace(state, subset);
      const double tr = rho.matrix.trace().real();
      sum += purity(rho) / (tr * tr);
    }
    out.A.push_back(sum / static_cast<double>(count));
  }
  return out;
}

double purity_variance(const StateVector& state, int p) {
  const auto prof = purity_profile(state, p);
  double total = 0;
  for (int k = 0; k <= p; ++k) {
    const double sign = (p - k) % 2 ? -1.0 : 1.0;
    total += sign * std::ldexp(static_cast<double>(binomial(p, k)), k) * prof.A[static_cast<std::size_t>(k)];
  }
  return total;
}

double adjusted_variance(const StateVector& state, int p) {
  if (p < 1) throw DomainError("p must be positive");
  return purity_profile(state, p).A.back();
}

double haar_variance_target(int n, int p) {
  return std::pow(3.0, p) / (std::ldexp(1.0, n) + 1.0);
}

HaarVarianceReport haar_variance_check(int n, int p, std::size_t samples, std::uint64_t seed,
                                       unsigned threads) {
  require_dense(n, "haar_variance_check");
  if (samples < 2) throw ParameterError("need at least two samples");
  const ModelConfig config{n, p, false};
  config.validate();
  std::vector<double> v(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    v[i] = state_variance(haar_state(n, seed_mix({seed, i})), config);
  });
  double s = 0, s2 = 0;
  for (double x : v) {
    s += x;
    s2 += x * x;
  }
  const double m = static_cast<double>(samples);
  const double mean = s / m;
  const double var = std::max(0.0, (s2 - m * mean * mean) / (m - 1));
  return {n, p, samples, mean, std::sqrt(var / m), haar_variance_target(n, p)};
}

VarianceRow variance_row(const StateVector& state, int p, std::uint64_t seed) {
  const ModelConfig config{state.n(), p, false};
  return {state.n(), p, seed, state_variance(state, config), purity_variance(state, p),
          adjusted_variance(state, p)};
}

std::string variance_csv(const std::vector<VarianceRow>& rows) {
  CsvTable t({"n", "p", "seed", "state_variance", "purity_variance", "adjusted_variance"});
  for (const auto& r : rows)
    t.row({std::to_string(r.n), std::to_string(r.p), std::to_string(r.seed),
           format_double(r.state_variance), format_double(r.purity_variance),
           format_double(r.adjusted_variance)});
  return t.str();
}

}  // namespace spinlab
