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

// Extremal eigenvalues, free energies, reduced states.

#ifndef SPINLAB_SPECTRAL_HPP
#define SPINLAB_SPECTRAL_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spinlab/dense.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

/// y = H x for a Hermitian operator of dimension `dim`.
using ApplyFn = std::function<void(std::span<const cplx>, std::span<cplx>)>;

struct LanczosOptions {
  /// Certified residual bound ||H x - theta x||.
  double tol = 1e-9;
  /// Krylov dimension per restart; 0 picks min(dim, 160) for dim <= 4096 and 40 above.
  int krylov = 0;
  int max_restarts = 300;
  std::uint64_t seed = 0x5eed;
};

struct EigenPair {
  double value = 0;
  double residual = 0;
  int restarts = 0;
  Eigen::VectorXcd vector;
};

/// Restarted Lanczos with full reorthogonalization. Each cycle restarts from
/// the top Ritz vector; the returned residual is recomputed explicitly.
/// Throws ConvergenceError (carrying the best residual) after max_restarts.
EigenPair lanczos_max(const ApplyFn& apply, std::uint64_t dim, const LanczosOptions& options = {});

double lambda_max(const DenseOperator& h, const LanczosOptions& options = {});
double lambda_max(const PauliSumOperator& h, const LanczosOptions& options = {});

/// All eigenvalues in ascending order (Eigen's self-adjoint solver).
std::vector<double> dense_spectrum(const DenseOperator& h);

/// beta^{-1} log sum_k exp(beta lambda_k), shifted by lambda_max for overflow safety.
double log_partition(const DenseOperator& h, double beta);
double log_partition(std::span<const double> spectrum, double beta);

/// Reduced density matrix on `keep` (sorted ascending on output; the first
/// kept qubit is the most significant bit of the reduced index).
DenseOperator partial_trace(const StateVector& state, std::vector<int> keep);
DenseOperator partial_trace(const DenseOperator& rho, std::vector<int> keep);

/// Tr(rho^2).
double purity(const DenseOperator& rho);

/// Normalized vector of i.i.d. complex Gaussians; Haar distributed.
StateVector haar_state(int n, std::uint64_t seed);

/// "index,eigenvalue" CSV.
std::string spectrum_csv(std::span<const double> spectrum);

}  // namespace spinlab

#endif  // SPINLAB_SPECTRAL_HPP
