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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "spinlab/lovasz.hpp"
#include "spinlab/rng.hpp"

using namespace spinlab;

namespace {

std::string dense_word(const PauliTerm& t) {
  std::string w(static_cast<std::size_t>(t.n), 'I');
  for (int k = 0; k < t.locality(); ++k)
    w[static_cast<std::size_t>(t.qubits[static_cast<std::size_t>(k)])] = to_char(t.letters[static_cast<std::size_t>(k)]);
  return w;
}

// Greedy maximal independent set; its size lower-bounds theta.
int greedy_independent(const Graph& g) {
  std::vector<int> chosen;
  for (int v = 0; v < g.nodes(); ++v) {
    bool ok = true;
    for (int u : chosen) ok = ok && !g.adjacent(u, v);
    if (ok) chosen.push_back(v);
  }
  return static_cast<int>(chosen.size());
}

Graph random_graph(int n, double density, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < density) g.add_edge(i, j);
  return g;
}

PhasedPauli word(const std::string& s) { return PhasedPauli::parse(s); }

}  // namespace

TEST_CASE("Graph basics") {
  Graph g(4);
  g.add_edge(0, 2);
  g.add_edge(2, 0);
  CHECK(g.edge_count() == 1);
  CHECK(g.adjacent(2, 0));
  CHECK_THROWS_AS(g.add_edge(1, 1), ValidationError);
  CHECK(g.complement().edge_count() == 5);
  CHECK(g.complement().complement() == g);
  CHECK(g.edge_list_csv() == "i,j\n0,2\n");
  g.remove_edge(0, 2);
  CHECK(g.edge_count() == 0);
  CHECK(Graph::cycle(5).edge_count() == 5);
  CHECK(Graph::complete(6).edge_count() == 15);
}

TEST_CASE("anticommutativity graph structure") {
  const auto g3 = build_anticommutativity_graph(3);
  CHECK(g3.nodes.size() == 27);
  const auto g4 = build_anticommutativity_graph(4);
  CHECK(g4.nodes.size() == 54);
  CHECK(g4.graph.edge_count() == 756);
  for (int v = 0; v < 54; ++v) {
    int deg = 0;
    for (int u = 0; u < 54; ++u) deg += u != v && g4.graph.adjacent(u, v);
    CHECK(deg == 28);
  }
  CHECK_THROWS_AS(build_anticommutativity_graph(1), DomainError);
  CHECK_THROWS_AS(build_anticommutativity_graph(22), CapacityError);
}

TEST_CASE("adjacency matches the matrix anticommutator") {
  const auto g = build_anticommutativity_graph(4);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      const auto a = oracle::kron_matrix(dense_word(g.nodes[i]));
      const auto b = oracle::kron_matrix(dense_word(g.nodes[j]));
      const bool anti = (a * b + b * a).cwiseAbs().maxCoeff() < 1e-12;
      CHECK(g.graph.adjacent(static_cast<int>(i), static_cast<int>(j)) == anti);
    }
}

TEST_CASE("edge examples") {
  CHECK(anticommutes(word("XXI"), word("YIY")));
  CHECK_FALSE(anticommutes(word("XXII"), word("IIXX")));
}

TEST_CASE("theta on known graphs") {
  for (int n : {1, 5, 12}) {
    const auto e = lovasz_theta(Graph::empty(n));
    CHECK(std::abs(e.value - n) <= 1e-3);
    const auto c = lovasz_theta(Graph::complete(n));
    CHECK(std::abs(c.value - 1.0) <= 1e-3);
  }
  for (int n : {5, 7, 9}) {
    const double cs = std::cos(std::numbers::pi / n);
    const double exact = n * cs / (1 + cs);
    const auto r = lovasz_theta(Graph::cycle(n));
    CHECK(r.lower_bound <= exact + 1e-9);
    CHECK(r.upper_bound >= exact - 1e-9);
    CHECK(std::abs(r.value - exact) <= 1e-3);
  }
  CHECK(std::abs(lovasz_theta(Graph::cycle(5)).value - std::sqrt(5.0)) <= 1e-3);
  // Even cycle: bipartite and perfect, theta = n / 2.
  CHECK(std::abs(lovasz_theta(Graph::cycle(6)).value - 3.0) <= 1e-3);
}

TEST_CASE("certificate is feasible for the max form") {
  const auto g = random_graph(14, 0.4, 8);
  const auto r = lovasz_theta(g);
  const auto& B = r.certificate;
  CHECK((B - B.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.diagonal_residual <= 1e-8);
  for (auto [i, j] : g.edges()) CHECK(B(i, j) == 0.0);
  CHECK(r.psd_violation <= 1e-8);
  CHECK(r.gap() >= 0);
  CHECK(r.gap() <= 1e-3);
}

TEST_CASE("solver sandwich on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_graph(16, 0.3, seed);
    const auto r = lovasz_theta(g);
    // Independent sets bound the certified upper value exactly and the
    // reported value up to the solver tolerance.
    CHECK(greedy_independent(g) <= r.upper_bound + 1e-9);
    CHECK(greedy_independent(g) <= r.value + 1e-3);
    CHECK(r.lower_bound <= r.upper_bound);
    // Sandwich on the complement: clique number of G is at most theta(G-bar).
    CHECK(greedy_independent(g.complement()) <= lovasz_theta(g.complement()).upper_bound + 1e-9);
  }
}

TEST_CASE("theta does not decrease when edges are removed") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_graph(15, 0.5, 100 + seed);
    const auto before = lovasz_theta(g);
    Rng rng(seed);
    const auto edges = g.edges();
    for (int k = 0; k < 5; ++k) {
      const auto [i, j] = edges[rng.below(edges.size())];
      g.remove_edge(i, j);
    }
    const auto after = lovasz_theta(g);
    CHECK(after.upper_bound >= before.lower_bound - 1e-9);
    CHECK(after.value >= before.value - 1e-3);
  }
}

TEST_CASE("nine pairwise anticommuting words") {
  const auto nine = anticommuting_nine(4);
  CHECK(nine.size() == 9);
  CHECK(verify_independent_set(nine));
  for (std::size_t i = 0; i < nine.size(); ++i)
    for (std::size_t j = i + 1; j < nine.size(); ++j) CHECK(anticommutes(nine[i], nine[j]));
  CHECK(verify_independent_set(anticommuting_nine(7)));

  // Variant with X on qubit 0 and Z on qubit 3 as the last entry:
  // it commutes with Z_0 X_3 and with X_0 X_1.
  auto variant = nine;
  variant[8] = word("XIIZ");
  CHECK_FALSE(verify_independent_set(variant));
  CHECK_FALSE(anticommutes(word("XIIZ"), word("ZIIX")));

  auto corrupted = nine;
  corrupted[1] = word("IIXX");
  CHECK_FALSE(verify_independent_set(corrupted));
  CHECK_THROWS_AS(anticommuting_nine(3), DomainError);
}

TEST_CASE("vertex-symmetric product") {
  const auto c3 = vertex_symmetric_product_check(3);
  CHECK(c3.target == 27.0);
  CHECK(c3.relative_error() <= 0.05);
  CHECK(c3.theta_G <= 3 + 1e-3);
  const auto c4 = vertex_symmetric_product_check(4);
  CHECK(c4.target == 54.0);
  CHECK(c4.relative_error() <= 0.05);
  CHECK(c4.theta_G <= 6 + 1e-3);
  // The nine-word clique in G is independent in the commutation graph.
  CHECK(c4.theta_Gbar >= 9 - 1e-3);
}

TEST_CASE("theta JSON and limits") {
  const auto r = lovasz_theta(Graph::cycle(5));
  const auto j = to_json(r);
  CHECK(j.contains("value"));
  CHECK(j["residuals"].contains("edge"));
  CHECK(j["certificate"].size() == 5);
  CHECK_THROWS_AS(lovasz_theta(Graph::empty(201)), CapacityError);
  CHECK_THROWS_AS(lovasz_theta(Graph::complete(150)), CapacityError);
  CHECK_THROWS_AS(lovasz_theta(Graph::cycle(5), {0.0}), ParameterError);
  CHECK_THROWS_AS(lovasz_theta(Graph::cycle(9), {1e-3, 1}), ConvergenceError);
}
