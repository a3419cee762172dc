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

// Dense 2^n-dimensional operators and states.
//
// Basis convention: qubit 0 is the most significant bit of a basis index, so
// a word written "XZ" is X (x) Z in Kronecker order and acts as X on bit n-1.

#ifndef SPINLAB_DENSE_HPP
#define SPINLAB_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>

#include "spinlab/error.hpp"

namespace spinlab {

using cplx = std::complex<double>;

/// Largest qubit count for which a full 2^n x 2^n matrix may be built.
inline constexpr int kDenseQubitLimit = 12;
/// Largest qubit count for matrix-free Hamiltonian-vector products.
inline constexpr int kMatrixFreeQubitLimit = 20;

inline void require_dense(int n, const std::string& what) {
  if (n > kDenseQubitLimit)
    throw CapacityError(what + ": " + std::to_string(n) + " qubits exceeds dense limit " +
                        std::to_string(kDenseQubitLimit));
}

inline void require_matrix_free(int n, const std::string& what) {
  if (n > kMatrixFreeQubitLimit)
    throw CapacityError(what + ": " + std::to_string(n) +
                        " qubits exceeds matrix-free limit " +
                        std::to_string(kMatrixFreeQubitLimit));
}

/// Bit position of qubit q inside a basis index of an n-qubit register.
constexpr int qubit_bit(int n, int q) noexcept { return n - 1 - q; }

struct DenseOperator {
  int n = 0;
  Eigen::MatrixXcd matrix;

  DenseOperator() = default;
  DenseOperator(int qubits, Eigen::MatrixXcd m) : n(qubits), matrix(std::move(m)) {
    if (matrix.rows() != (Eigen::Index{1} << n) || matrix.cols() != matrix.rows())
      throw DimensionError("operator shape does not match 2^n");
  }

  static DenseOperator zero(int qubits) {
    require_dense(qubits, "DenseOperator");
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    return {qubits, Eigen::MatrixXcd::Zero(dim, dim)};
  }

  Eigen::Index dim() const noexcept { return matrix.rows(); }

  bool is_hermitian(double tol = 1e-10) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
};

/// Pure n-qubit state; amplitudes have unit 2-norm within 1e-12.
class StateVector {
 public:
  StateVector(int n, Eigen::VectorXcd amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    if (amps_.size() != (Eigen::Index{1} << n)) throw DimensionError("state length is not 2^n");
    if (std::abs(amps_.norm() - 1.0) > 1e-12)
      throw ValidationError("state vector is not normalized");
  }

  /// Normalizes before validating.
  static StateVector normalized(int n, Eigen::VectorXcd amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0) throw ValidationError("zero vector cannot be normalized");
    return {n, amplitudes / norm};
  }

  static StateVector basis(int n, std::uint64_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return {n, std::move(v)};
  }

  int n() const noexcept { return n_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

}  // namespace spinlab

#endif  // SPINLAB_DENSE_HPP
