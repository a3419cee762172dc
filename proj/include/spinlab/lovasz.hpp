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

// Anticommutativity graphs of Pauli families and the Lovasz theta function.
//
// theta(G) = max lambda_max(B) over PSD B with B_ii = 1 and B_ij = 0 on edges
//          = min lambda_max(A) over symmetric A with A_ii = 1 and A_ij = 1 on
//            non-edges (entries on edges free).
//
// Both forms are evaluated on iterates of a primal-dual interior-point
// method, so every result is bracketed by a certified lower and upper bound.

#ifndef SPINLAB_LOVASZ_HPP
#define SPINLAB_LOVASZ_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinlab/io.hpp"
#include "spinlab/pauli.hpp"

namespace spinlab {

/// Simple undirected graph, dense adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int nodes);

  static Graph empty(int nodes) { return Graph(nodes); }
  static Graph complete(int nodes);
  static Graph cycle(int nodes);

  int nodes() const noexcept { return n_; }
  bool adjacent(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  std::size_t edge_count() const noexcept { return edges_; }
  /// (i, j) with i < j, row-major.
  std::vector<std::pair<int, int>> edges() const;
  Graph complement() const;

  /// "i,j" per edge after a header line.
  std::string edge_list_csv() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint8_t> adj_;
};

inline constexpr std::uint64_t kMaxPauliGraphNodes = 2000;

struct PauliGraph {
  int n = 0;
  int p = 2;
  std::vector<PauliTerm> nodes;
  /// Edge iff the two words anticommute.
  Graph graph;
};

/// Nodes are the 3^p C(n,p) p-local words in canonical order. Only p = 2 is
/// the family of interest; other p are built for exploration.
PauliGraph build_anticommutativity_graph(int n, int p = 2);

/// Interior-point budget: 1 + |E| equality constraints at most.
inline constexpr std::size_t kMaxThetaConstraints = 5000;
inline constexpr int kMaxThetaNodes = 200;

struct ThetaOptions {
  double tol = 1e-3;
  int max_iterations = 200;
};

struct ThetaResult {
  double value = 0;
  /// lambda_max of the certificate B (max form).
  double lower_bound = 0;
  /// lambda_max of the dual matrix A (min form).
  double upper_bound = 0;
  /// Certificate for the max form: unit diagonal, zeros on edges.
  Eigen::MatrixXd certificate;
  /// max(0, -lambda_min(B)).
  double psd_violation = 0;
  double diagonal_residual = 0;
  double edge_residual = 0;
  int iterations = 0;

  double gap() const { return upper_bound - lower_bound; }
};

/// Throws ConvergenceError carrying the final gap when the bracket does not
/// close to options.tol.
ThetaResult lovasz_theta(const Graph& graph, const ThetaOptions& options = {});

/// Nine 2-local words on qubits 0..3 (padded with identities to n) that pairwise
/// anticommute: X on qubit 0 against X, Y, Z on qubit 1; Y on 0 against
/// qubit 2; Z on 0 against X, Y on qubit 3, then Z Z on qubits 0 and 3.
std::vector<PhasedPauli> anticommuting_nine(int n);

/// True iff every pair anticommutes, i.e. the set is independent in the
/// commutation graph and a clique in the anticommutativity graph.
bool verify_independent_set(const std::vector<PhasedPauli>& words);

struct VertexSymmetricCheck {
  int n = 0;
  double theta_G = 0;
  double theta_Gbar = 0;
  double product = 0;
  /// 9 C(n,2)
  double target = 0;
  double relative_error() const { return std::abs(product - target) / target; }
};

VertexSymmetricCheck vertex_symmetric_product_check(int n, const ThetaOptions& options = {});

json to_json(const ThetaResult& r);

}  // namespace spinlab

#endif  // SPINLAB_LOVASZ_HPP
