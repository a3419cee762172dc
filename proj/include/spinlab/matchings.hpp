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

// Trace sums over perfect matchings and the random-hypergraph statistics
// built on them.
//
// For a perfect matching M of {0, ..., 2d-1},
//
//   Trace_sum(M) = 1/2 sum_{sigma : M} Tr(sigma_0 sigma_1 ... sigma_{2d-1}),
//
// summing over letters in {X, Y, Z} with sigma_i = sigma_j whenever i ~ j.
// The value is always an integer with |Trace_sum(M)| <= 3^d.

#ifndef SPINLAB_MATCHINGS_HPP
#define SPINLAB_MATCHINGS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/io.hpp"

namespace spinlab {

/// Perfect matching stored as a partner table: partner[i] is the position
/// matched with i.
class Matching {
 public:
  Matching() = default;
  /// Validates that partner is a fixed-point-free involution.
  explicit Matching(std::vector<int> partner);
  /// From 0-based pairs covering {0, ..., 2d-1}.
  static Matching from_pairs(const std::vector<std::pair<int, int>>& pairs);

  int d() const noexcept { return static_cast<int>(partner_.size() / 2); }
  int size() const noexcept { return static_cast<int>(partner_.size()); }
  int partner(int i) const { return partner_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& partners() const noexcept { return partner_; }
  /// Pairs (i, j) with i < j, ordered by i.
  std::vector<std::pair<int, int>> pairs() const;
  /// "(0,2)(1,3)"
  std::string to_string() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) { return a.partner_ <=> b.partner_; }

 private:
  std::vector<int> partner_;
};

inline constexpr int kMaxEnumerationD = 7;
inline constexpr int kMaxBruteForceD = 12;

/// All (2d-1)!! perfect matchings of {0, ..., 2d-1} in lexicographic order of
/// their partner tables. d = 0 gives the single empty matching.
std::vector<Matching> enumerate_matchings(int d);

/// Brute force over the 3^d constrained letter assignments.
std::int64_t trace_sum(const Matching& m);

/// Memo table for trace_sum_recursive, keyed by partner table.
class TraceSumCache {
 public:
  std::int64_t evaluate(const Matching& m);
  std::size_t size() const noexcept { return memo_.size(); }

 private:
  std::int64_t eval(const std::vector<int>& partner);
  std::map<std::vector<int>, std::int64_t> memo_;
};

/// Rewiring recursion. With position 0 matched to k (positions counted from
/// 1 in the sign, so (-1)^j refers to the 1-based index j):
///
///   Trace_sum(M) = sum_{j != 1, k} (-1)^j Trace_sum(M_j) + 3 (-1)^k Trace_sum(M_k),
///
/// where M_j drops positions 1 and j and rematches j's partner with k, and
/// M_k drops positions 1 and k.
std::int64_t trace_sum_recursive(const Matching& m);

enum class TraceMethod { BruteForce, Recursive };

struct TraceSumAverage {
  int d = 0;
  std::int64_t total = 0;
  std::int64_t count = 0;
  double mean() const { return static_cast<double>(total) / static_cast<double>(count); }
  /// total == (2d + 1) * count.
  bool equals_two_d_plus_one() const { return total == (2 * d + 1) * count; }
};

/// Exact sum of Trace_sum over all matchings, d <= kMaxEnumerationD.
TraceSumAverage expected_trace_sum(int d, TraceMethod method = TraceMethod::BruteForce);

/// r distinct p-subsets of the n qubits, each replicated twice, placed in a
/// uniformly random order. For each qubit j the order induces a matching on
/// the 2 Delta(j) replicas containing j (the two replicas of one tuple are
/// matched).
struct HypergraphSample {
  int n = 0;
  int p = 0;
  int r = 0;
  std::vector<std::vector<int>> tuples;  // sorted qubit lists
  std::vector<int> order;                // length 2r, tuple ids
  std::vector<int> degrees;              // Delta(j)
  std::vector<Matching> induced;         // per qubit
};

HypergraphSample sample_hypergraph(int n, int p, int r, std::uint64_t seed);

/// Per-qubit matchings induced by an explicit replica order.
std::vector<Matching> induced_matchings(int n, const std::vector<std::vector<int>>& tuples,
                                        const std::vector<int>& order);

struct GammaEstimate {
  int n = 0, p = 0, r = 0;
  std::size_t samples = 0;
  double lhs_mean = 0, lhs_stderr = 0;
  double rhs_mean = 0, rhs_stderr = 0;
  double ratio = 0, ratio_stderr = 0;
  /// ratio^{1/r}; NaN when the ratio is negative.
  double per_r_ratio = 0, per_r_stderr = 0;
};

/// Monte Carlo means of prod_j Trace_sum(M_j) and prod_j (2 Delta(j) + 1)
/// over sampled hypergraphs, with bootstrap standard errors for the ratio.
GammaEstimate estimate_gamma_ratio(int n, int p, int r, std::size_t samples, std::uint64_t seed,
                                   unsigned threads = 1, int bootstrap = 200);

struct PoissonCheck {
  double lambda = 0;
  std::vector<double> empirical_pmf;  // k = 0 .. max observed
  std::vector<double> poisson_pmf;    // same support
  double tv_distance = 0;             // includes the Poisson tail beyond the support
  double mean = 0, mean_stderr = 0;
};

/// Degree of qubit 0 across sampled hypergraphs against Poisson(p r / n).
PoissonCheck poisson_degree_check(int n, int p, int r, std::size_t samples, std::uint64_t seed,
                                  unsigned threads = 1);

struct BoundConfig {
  int p = 2;
  double gamma = 1.0;
  /// Must exceed log 2.
  double C = 0.7;
  /// Log-spaced grid; beta_min = beta_max = 0 means witness / 100 .. witness * 100.
  double beta_min = 0;
  double beta_max = 0;
  int grid_points = 2001;

  void validate() const;
  /// sqrt(2 log p / gamma)
  double witness() const;
};

/// g(beta) = C / beta + beta gamma / 2 + log(1 + p gamma beta^2) / beta.
double g_bound(const BoundConfig& config, double beta);

struct GBoundResult {
  double beta_star = 0;
  double g_min = 0;
  double witness_beta = 0;
  /// The three summands of g at the witness, from the definition:
  /// C / beta, beta gamma / 2, log(1 + p gamma beta^2) / beta.
  std::array<double, 3> witness_terms{};
  /// Closed forms C sqrt(2 gamma) / sqrt(log p), sqrt(gamma log p) / sqrt(2),
  /// log(1 + 2 p log p) sqrt(gamma) / sqrt(2 log p). The first equals
  /// 2 C / beta at the witness, so it overstates the first summand by C / beta.
  std::array<double, 3> closed_form_terms{};
  /// g at the witness point, evaluated from the definition.
  double bound_value = 0;
  /// g_min / sqrt(2 gamma log p)
  double ratio_to_sqrt = 0;
};

/// Grid search followed by golden-section refinement around the best node.
GBoundResult minimize_g(const BoundConfig& config);

json to_json(const GammaEstimate& e);
json to_json(const PoissonCheck& c);
json to_json(const GBoundResult& g, const BoundConfig& config);

}  // namespace spinlab

#endif  // SPINLAB_MATCHINGS_HPP
