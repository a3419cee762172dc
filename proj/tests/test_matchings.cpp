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

#include "doctest.h"
#include "oracles.hpp"
#include "spinlab/combinatorics.hpp"
#include "spinlab/matchings.hpp"

using namespace spinlab;

namespace {

std::vector<int> pair_labels(const Matching& m) {
  std::vector<int> labels(static_cast<std::size_t>(m.size()));
  int next = 0;
  for (auto [a, b] : m.pairs()) labels[static_cast<std::size_t>(a)] = labels[static_cast<std::size_t>(b)] = next++;
  return labels;
}

}  // namespace

TEST_CASE("Matching validation") {
  CHECK_NOTHROW(Matching({1, 0, 3, 2}));
  CHECK_THROWS_AS(Matching({1, 0, 2}), ValidationError);
  CHECK_THROWS_AS(Matching({1, 2, 0, 3}), ValidationError);
  CHECK_THROWS_AS(Matching({0, 1}), ValidationError);
  CHECK_THROWS_AS(Matching::from_pairs({{0, 1}, {1, 2}}), ValidationError);
  const auto m = Matching::from_pairs({{0, 2}, {1, 3}});
  CHECK(m.to_string() == "(0,2)(1,3)");
  CHECK(m.d() == 2);
}

TEST_CASE("enumerate_matchings counts") {
  CHECK(enumerate_matchings(0).size() == 1);
  CHECK(enumerate_matchings(1).size() == 1);
  CHECK(enumerate_matchings(2).size() == 3);
  CHECK(enumerate_matchings(3).size() == 15);
  for (int d = 0; d <= 6; ++d) {
    const auto all = enumerate_matchings(d);
    CHECK(all.size() == double_factorial_odd(d));
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
  CHECK_THROWS_AS(enumerate_matchings(8), CapacityError);
}

TEST_CASE("trace_sum examples") {
  CHECK(trace_sum(Matching::from_pairs({{0, 1}})) == 3);
  CHECK(trace_sum(Matching::from_pairs({{0, 2}, {1, 3}})) == -3);
  CHECK(trace_sum(Matching::from_pairs({{0, 3}, {1, 2}})) == 9);
  CHECK(trace_sum(Matching::from_pairs({{0, 1}, {2, 3}})) == 9);
  CHECK(trace_sum(Matching()) == 1);
}

TEST_CASE("trace_sum agrees with explicit matrices") {
  for (int d = 1; d <= 4; ++d)
    for (const auto& m : enumerate_matchings(d)) {
      const auto ref = oracle::labelled_trace_sum(pair_labels(m));
      CHECK(ref.imag() == 0.0);
      CHECK(static_cast<double>(trace_sum(m)) == ref.real());
    }
}

TEST_CASE("trace_sum is integral and bounded") {
  for (int d = 1; d <= 5; ++d) {
    const auto bound = static_cast<std::int64_t>(ipow(3, d));
    for (const auto& m : enumerate_matchings(d)) CHECK(std::abs(trace_sum(m)) <= bound);
  }
}

TEST_CASE("recursion equals brute force") {
  CHECK(trace_sum_recursive(Matching::from_pairs({{0, 1}})) == 3);
  std::vector<std::int64_t> d2;
  for (const auto& m : enumerate_matchings(2)) d2.push_back(trace_sum_recursive(m));
  CHECK(d2 == std::vector<std::int64_t>{9, -3, 9});
  TraceSumCache cache;
  for (int d = 1; d <= 5; ++d)
    for (const auto& m : enumerate_matchings(d)) CHECK(cache.evaluate(m) == trace_sum(m));
  CHECK(cache.size() > 0);
}

TEST_CASE("expected trace sum is 2d + 1") {
  CHECK(expected_trace_sum(1).mean() == 3.0);
  const auto two = expected_trace_sum(2);
  CHECK(two.total == 15);
  CHECK(two.count == 3);
  for (int d = 1; d <= 6; ++d) {
    const auto a = expected_trace_sum(d);
    CHECK(a.equals_two_d_plus_one());
    CHECK(expected_trace_sum(d, TraceMethod::Recursive).total == a.total);
  }
  CHECK(expected_trace_sum(7, TraceMethod::Recursive).equals_two_d_plus_one());
}

TEST_CASE("sample_hypergraph invariants") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto h = sample_hypergraph(9, 3, 7, seed);
    int sum = 0;
    for (int d : h.degrees) sum += d;
    CHECK(sum == 3 * 7);
    auto sorted = h.tuples;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    for (int j = 0; j < 9; ++j) CHECK(h.induced[static_cast<std::size_t>(j)].d() == h.degrees[static_cast<std::size_t>(j)]);
  }
  const auto one = sample_hypergraph(5, 3, 1, 4);
  for (int q : one.tuples[0]) {
    CHECK(one.degrees[static_cast<std::size_t>(q)] == 1);
    CHECK(one.induced[static_cast<std::size_t>(q)] == Matching({1, 0}));
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto h = sample_hypergraph(4, 2, 2, seed);
    CHECK(h.tuples[0] != h.tuples[1]);
  }
  CHECK_THROWS_AS(sample_hypergraph(4, 2, 7, 0), DomainError);
  const auto all = sample_hypergraph(4, 2, 6, 0);
  CHECK(all.tuples.size() == 6);
}

TEST_CASE("induced matchings from an explicit order") {
  // Tuples {0,1} (id 0) and {1,2} (id 1), order 0 1 0 1: qubit 1 sees a crossing.
  const auto m = induced_matchings(3, {{0, 1}, {1, 2}}, {0, 1, 0, 1});
  CHECK(m[0] == Matching({1, 0}));
  CHECK(m[1] == Matching::from_pairs({{0, 2}, {1, 3}}));
  CHECK(m[2] == Matching({1, 0}));
}

TEST_CASE("gamma ratio for r = 1 is exactly one") {
  for (int p : {1, 2, 3}) {
    const auto e = estimate_gamma_ratio(5, p, 1, 50, 3);
    CHECK(e.lhs_mean == std::pow(3.0, p));
    CHECK(e.rhs_mean == std::pow(3.0, p));
    CHECK(e.ratio == 1.0);
    CHECK(e.per_r_ratio == 1.0);
  }
}

TEST_CASE("gamma ratio matches exhaustive enumeration") {
  const auto exact = oracle::exhaustive_gamma(4, 2, 2);
  const double exact_ratio = exact.lhs_mean / exact.rhs_mean;
  const auto e = estimate_gamma_ratio(4, 2, 2, 20000, 99);
  CHECK(e.rhs_mean > 0);
  CHECK(std::abs(e.ratio - exact_ratio) <= 3 * e.ratio_stderr);
  CHECK(std::abs(e.rhs_mean - exact.rhs_mean) <= 3 * e.rhs_stderr);
}

TEST_CASE("gamma estimate is deterministic and within the trivial bound") {
  const auto a = estimate_gamma_ratio(8, 2, 6, 400, 5, 1);
  const auto b = estimate_gamma_ratio(8, 2, 6, 400, 5, 3);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.lhs_mean <= std::pow(3.0, 2 * 6) * a.rhs_mean);
  CHECK(a.lhs_stderr >= 0);
  CHECK(a.ratio_stderr >= 0);
}

TEST_CASE("Poisson degree check") {
  const auto c = poisson_degree_check(60, 2, 30, 10000, 1);
  CHECK(c.lambda == 1.0);
  CHECK(c.tv_distance <= 0.05);
  CHECK(std::abs(c.mean - 1.0) <= 3 * c.mean_stderr);

  const auto zero = poisson_degree_check(10, 2, 0, 100, 1);
  CHECK(zero.tv_distance == 0.0);
  CHECK(zero.empirical_pmf == std::vector<double>{1.0});
}

TEST_CASE("g bound") {
  BoundConfig c{1000000, 1.0, 1.0};
  const auto g = minimize_g(c);
  const double beta = c.witness();
  CHECK(beta == std::sqrt(2 * std::log(1e6)));
  CHECK(std::abs(g.bound_value - (g.witness_terms[0] + g.witness_terms[1] + g.witness_terms[2])) < 1e-12);
  // Second and third closed forms are exact; the first is twice C / beta.
  CHECK(g.closed_form_terms[1] == doctest::Approx(g.witness_terms[1]).epsilon(1e-14));
  CHECK(g.closed_form_terms[2] == doctest::Approx(g.witness_terms[2]).epsilon(1e-14));
  CHECK(g.closed_form_terms[0] == doctest::Approx(2 * g.witness_terms[0]).epsilon(1e-14));
  CHECK(g.g_min <= g.bound_value);
  CHECK(g.ratio_to_sqrt <= 1.25);
  // g_min is a true local minimum.
  CHECK(g_bound(c, g.beta_star * 1.001) >= g.g_min);
  CHECK(g_bound(c, g.beta_star / 1.001) >= g.g_min);

  double prev = 1e9;
  for (int p : {100, 10000, 1000000, 100000000}) {
    const auto r = minimize_g({p, 1.0, 1.0});
    CHECK(r.ratio_to_sqrt <= prev);
    prev = r.ratio_to_sqrt;
  }

  CHECK_THROWS_AS(minimize_g({100, 0.5, 1.0}), ParameterError);
  CHECK_THROWS_AS(minimize_g({100, 1.0, 0.6}), ParameterError);
  BoundConfig narrow{100, 1.0, 1.0, 10.0, 20.0};
  CHECK_THROWS_AS(minimize_g(narrow), ParameterError);
}
