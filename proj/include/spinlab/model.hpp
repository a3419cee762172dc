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

// The random p-local Pauli Hamiltonian
//
//   H = C(n,p)^{-1/2} sum_{i_1 < ... < i_p} sum_{a in {X,Y,Z}^p} alpha[i; a] P_i^a
//
// and its adjusted variant, which sums a over {I,X,Y,Z}^p (all-identity
// included) with normalization 2^{-p/2} C(n,p)^{-1/2}.

#ifndef SPINLAB_MODEL_HPP
#define SPINLAB_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinlab/bloch.hpp"
#include "spinlab/dense.hpp"
#include "spinlab/pauli.hpp"

namespace spinlab {

struct ModelConfig {
  int n = 0;
  int p = 0;
  /// false: letters in {X,Y,Z}; true: letters in {I,X,Y,Z} (adjusted model).
  bool adjusted = false;

  void validate() const;
  /// 3^p C(n,p) or 4^p C(n,p).
  std::uint64_t term_count() const;
  /// Prefactor multiplying every alpha * P.
  double normalization() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

enum class DisorderKind { Gaussian, Rademacher, SparseRademacher };

std::string to_string(DisorderKind kind);
DisorderKind disorder_kind_from_string(const std::string& name);

/// Coefficient distribution.
///
/// SparseRademacher with average degree d: each coefficient is 0 with
/// probability 1 - q, q = 3^{-p} d / C(n, p-1), and otherwise
/// +-sqrt(3^p C(n,p-1) / d) with equal probability, so mean 0 and variance 1.
/// The alternative parameterization by a per-sign probability p_n maps as
/// p_n = q / 2.
struct DisorderSpec {
  DisorderKind kind = DisorderKind::Gaussian;
  double average_degree = 0.0;
  std::uint64_t seed = 0;

  void validate(const ModelConfig& config) const;
  /// Probability that a SparseRademacher coefficient is nonzero.
  double nonzero_probability(const ModelConfig& config) const;
  /// Magnitude of a nonzero SparseRademacher coefficient.
  double sparse_magnitude(const ModelConfig& config) const;
};

/// All terms in canonical order: qubit tuples lexicographic, then letter
/// tuples lexicographic in X < Y < Z (I < X < Y < Z for the adjusted model).
std::vector<PauliTerm> enumerate_terms(const ModelConfig& config);

struct DisorderEntry {
  std::uint64_t index = 0;  // position in canonical order
  PauliTerm term;
  double value = 0.0;
};

/// One realization of the coefficients. Dense samples hold every term in
/// canonical order; sparse samples hold only nonzero coefficients, still in
/// canonical order.
struct DisorderSample {
  ModelConfig config;
  DisorderSpec spec;
  bool sparse = false;
  std::vector<DisorderEntry> entries;

  double normalization() const { return config.normalization(); }
  /// Coefficients expanded to canonical order (zeros for absent terms).
  std::vector<double> dense_values() const;
};

/// Coefficient of term index t is drawn from counter-based uniforms keyed by
/// (seed, t), so dense and sparse storage of one seed agree term by term.
DisorderSample sample_disorder(const ModelConfig& config, const DisorderSpec& spec);

/// Builds a dense sample from explicit coefficients in canonical order.
DisorderSample sample_from_values(const ModelConfig& config, std::span<const double> values,
                                  DisorderSpec spec = {});

DenseOperator materialize_hamiltonian(const DisorderSample& sample);

/// <phi|H|phi> for a product state; uses <phi_k|sigma^a|phi_k> = n_k[a].
double product_energy(const DisorderSample& sample, const BlochProductState& state);

/// Matrix-free H|v> for n <= kMatrixFreeQubitLimit. Pure; safe to share.
class PauliSumOperator {
 public:
  explicit PauliSumOperator(const DisorderSample& sample);

  int n() const noexcept { return n_; }
  std::uint64_t dim() const noexcept { return std::uint64_t{1} << n_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;
  /// m += H, for a 2^n x 2^n matrix.
  void accumulate(Eigen::MatrixXcd& m) const;

 private:
  struct Term {
    std::uint64_t x_mask;
    std::uint64_t z_mask;
    cplx coefficient;
  };
  int n_;
  std::vector<Term> terms_;
};

/// Little-endian IEEE-754 doubles in canonical order; dense samples only.
std::string to_binary(const DisorderSample& sample);
DisorderSample from_binary(const ModelConfig& config, const DisorderSpec& spec,
                           std::string_view bytes);

}  // namespace spinlab

#endif  // SPINLAB_MODEL_HPP
