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
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "spinlab/combinatorics.hpp"
#include "spinlab/product.hpp"
#include "spinlab/rng.hpp"

using namespace spinlab;

namespace {

DisorderSample zz_instance() {
  std::vector<double> v(9, 0.0);
  v[8] = 1.0;
  return sample_from_values({2, 2, false}, v);
}

// Sum over all p-subsets of the product, by enumeration.
double brute_symmetric(const std::vector<double>& r, int p) {
  double total = 0;
  for (const auto& combo : all_combinations(static_cast<int>(r.size()), p)) {
    double prod = 1;
    for (int i : combo) prod *= r[static_cast<std::size_t>(i)];
    total += prod;
  }
  return total;
}

// Brute-force count over the signed net using product_energy directly.
std::uint64_t brute_count(const DisorderSample& s, const PackingNet& net, double threshold) {
  const auto pts = net.signed_points();
  const int n = s.config.n;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  for (;;) {
    std::vector<Bloch> v;
    for (auto i : idx) v.push_back(pts[i]);
    if (std::sqrt(double(n)) * product_energy(s, BlochProductState(v)) >= threshold * n) ++count;
    int k = 0;
    while (k < n && ++idx[static_cast<std::size_t>(k)] == pts.size()) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("bloch_overlap examples") {
  CHECK(bloch_overlap({0, 0, 1}, {0, 0, 1}) == 1.0);
  CHECK(bloch_overlap({0, 0, 1}, {0, 0, -1}) == -1.0);
  CHECK(bloch_overlap({0, 0, 1}, {1, 0, 0}) == 0.0);
  CHECK_THROWS_AS(bloch_overlap({0, 0, 1.1}, {1, 0, 0}), ValidationError);
}

TEST_CASE("bloch_overlap equals 2|<u|v>|^2 - 1") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto a = BlochProductState::random(1, s), b = BlochProductState::random(1, s + 1000);
    const auto ka = oracle::bloch_ket(a[0]), kb = oracle::bloch_ket(b[0]);
    const double fid = std::norm(ka.dot(kb));
    CHECK(std::abs(bloch_overlap(a[0], b[0]) - (2 * fid - 1)) < 1e-12);
  }
}

TEST_CASE("covariance examples") {
  const std::vector<double> ones(5, 1.0);
  CHECK(covariance(3, ones) == doctest::Approx(1.0).epsilon(1e-15));
  for (int p = 1; p <= 4; ++p) {
    const std::vector<double> neg(static_cast<std::size_t>(p), -1.0);
    CHECK(covariance(p, neg) == std::pow(-1.0, p));
  }
  CHECK(covariance(2, std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(covariance(3, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST_CASE("elementary symmetric recurrence equals enumeration") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    std::vector<double> r(static_cast<std::size_t>(n));
    for (auto& x : r) x = 2 * rng.uniform() - 1;
    for (int p = 1; p <= std::min(n, 4); ++p)
      CHECK(std::abs(elementary_symmetric(r, p) - brute_symmetric(r, p)) < 1e-12);
  }
}

TEST_CASE("covariance matches the expectation of the dense forms") {
  // With Gaussian coefficients, E[<a|H|a><b|H|b>] = norm^2 sum_t f_t(a) f_t(b).
  for (int p : {2, 3}) {
    const ModelConfig c{5, p, false};
    const auto a = BlochProductState::random(5, 1), b = BlochProductState::random(5, 2);
    double direct = 0;
    for (const auto& t : enumerate_terms(c)) {
      std::vector<double> unit(t.letters.size(), 0.0);
      double fa = 1, fb = 1;
      for (std::size_t k = 0; k < t.qubits.size(); ++k) {
        const int ax = static_cast<int>(t.letters[k]) - 1;
        fa *= a[t.qubits[k]][ax];
        fb *= b[t.qubits[k]][ax];
      }
      direct += fa * fb;
    }
    direct /= static_cast<double>(binomial(5, p));
    CHECK(std::abs(covariance(p, overlap_profile(a, b)) - direct) < 1e-13);
  }
}

TEST_CASE("covariance Monte Carlo") {
  const auto a = BlochProductState::random(4, 3);
  const auto same = covariance_monte_carlo(2, a, a, 100000, 9);
  CHECK(same.analytic == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(same.empirical - 1.0) <= 3 * same.standard_error);

  const auto up = BlochProductState::uniform(2, {0, 0, 1}), down = BlochProductState::uniform(2, {0, 0, -1});
  const auto anti = covariance_monte_carlo(2, up, down, 100000, 10);
  CHECK(anti.analytic == 1.0);
  CHECK(std::abs(anti.empirical - 1.0) <= 3 * anti.standard_error);

  const auto b = BlochProductState::random(4, 4);
  const auto r1 = covariance_monte_carlo(2, a, b, 30000, 11, 1);
  const auto r3 = covariance_monte_carlo(2, a, b, 30000, 11, 3);
  CHECK(r1.empirical == r3.empirical);
  CHECK(r1.standard_error == r3.standard_error);
  CHECK(std::abs(r1.empirical - r1.analytic) <= 3 * r1.standard_error);
}

TEST_CASE("sub-additivity gap is non-negative for even p") {
  Rng rng(77);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = 1 + rng.below(6), k = 1 + rng.below(6);
    std::vector<double> r(m + k);
    for (auto& x : r) x = 2 * rng.uniform() - 1;
    for (int p : {2, 4}) CHECK(subadditivity_gap(p, r, m) >= -1e-12);
  }
  CHECK_THROWS_AS(subadditivity_gap(2, std::vector<double>{0.5}, 1), DomainError);
}

TEST_CASE("packing net invariants") {
  for (double eps : {0.01, 0.05, 0.2, 0.5}) {
    const auto net = build_packing_net(eps);
    CHECK(verify_packing_net(net));
    CHECK(net.points.size() >= static_cast<std::size_t>(std::ceil(0.5 / eps)));
    for (const auto& v : net.points) CHECK(v[2] >= 0.01);
    for (std::size_t i = 0; i < net.points.size(); ++i)
      for (std::size_t j = i + 1; j < net.points.size(); ++j)
        CHECK(std::abs(dot(net.points[i], net.points[j])) <= 1 - eps);
  }
  CHECK(build_packing_net(0.5).points.size() >= 2);
  CHECK(build_packing_net(0.05).points.size() >= 10);
  CHECK(build_packing_net(0.05).points == build_packing_net(0.05).points);
  CHECK_THROWS_AS(build_packing_net(0.0), ParameterError);
  CHECK_THROWS_AS(build_packing_net(0.6), ParameterError);

  PackingNet bad{0.5, {{0, 0, 1}, {0, std::sqrt(0.5), std::sqrt(0.5)}}};
  CHECK_FALSE(verify_packing_net(bad));
}

TEST_CASE("count_net_exceedances examples") {
  const auto net = build_packing_net(0.5);
  const std::uint64_t q = 2 * net.points.size();
  const auto zero = sample_from_values({2, 2, false}, std::vector<double>(9, 0.0));
  CHECK(count_net_exceedances(zero, net, 0.1) == 0);
  CHECK(count_net_exceedances(zero, net, -std::numeric_limits<double>::infinity()) == q * q);

  // ZZ instance: max of sqrt(2) E is sqrt(2) at +z+z and -z-z.
  REQUIRE(net.points.front() == Bloch{0, 0, 1});
  const double just_below = (std::sqrt(2.0) - 1e-9) / 2;
  CHECK(count_net_exceedances(zz_instance(), net, just_below) >= 2);

  const auto big = sample_disorder({8, 2, false}, {});
  CHECK_THROWS_AS(count_net_exceedances(big, build_packing_net(0.01), 0.0), CapacityError);
}

TEST_CASE("incremental net count equals brute force") {
  const auto net = build_packing_net(0.3);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto s = sample_disorder({4, 2, false}, {DisorderKind::Gaussian, 0, seed});
    for (double th : {-0.5, 0.0, 0.3, 0.6})
      CHECK(count_net_exceedances(s, net, th) == brute_count(s, net, th));
  }
}

TEST_CASE("optimizer examples") {
  const auto r = optimize_product_state(zz_instance(), BlochProductState::uniform(2, {1, 0, 0}));
  // At x,x the field on either qubit is exactly zero, so both vectors are kept.
  CHECK(r.energy == 0.0);
  CHECK(r.converged);
  const auto seeded = optimize_multistart(zz_instance(), {});
  CHECK(std::abs(seeded.best.energy - 1.0) < 1e-9);
  const auto init = BlochProductState::normalized({{1, 0, 0.1}, {1, 0, 0.2}});
  const auto r2 = optimize_product_state(zz_instance(), init);
  CHECK(std::abs(r2.energy - 1.0) < 1e-9);
  CHECK(r2.state[0][2] * r2.state[1][2] == doctest::Approx(1.0));

  const auto zero = sample_from_values({3, 2, false}, std::vector<double>(27, 0.0));
  const auto st = BlochProductState::random(3, 5);
  const auto r3 = optimize_product_state(zero, st);
  CHECK(r3.energy == 0.0);
  for (int q = 0; q < 3; ++q) CHECK(r3.state[q] == st[q]);
}

TEST_CASE("optimizer is monotone per update") {
  OptimizerOptions opt;
  opt.record_updates = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const auto s = sample_disorder({n, 2 + static_cast<int>(seed % 2), false}, {DisorderKind::Gaussian, 0, seed});
    const auto r = optimize_product_state(s, BlochProductState::random(n, seed), opt);
    for (std::size_t i = 1; i < r.update_trace.size(); ++i)
      CHECK(r.update_trace[i] >= r.update_trace[i - 1] - 1e-12);
    for (std::size_t i = 1; i < r.sweep_trace.size(); ++i)
      CHECK(r.sweep_trace[i] >= r.sweep_trace[i - 1] - 1e-12);
    CHECK(r.energy == doctest::Approx(product_energy(s, r.state)).epsilon(1e-12));
  }
}

TEST_CASE("optimizer beats the axis grid") {
  const std::vector<Bloch> axes{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 6;
    const auto s = sample_disorder({n, 2, false}, {DisorderKind::Gaussian, 0, 500 + seed});
    double grid = -1e300;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::vector<Bloch> v;
      for (auto i : idx) v.push_back(axes[i]);
      grid = std::max(grid, product_energy(s, BlochProductState(v)));
      int k = 0;
      while (k < n && ++idx[static_cast<std::size_t>(k)] == axes.size()) idx[static_cast<std::size_t>(k++)] = 0;
      if (k == n) break;
    }
    const auto best = optimize_multistart(s, {8, seed, 1, {}});
    CHECK(best.best.energy >= grid - 1e-9);
  }
}

TEST_CASE("multistart is deterministic across thread counts") {
  const auto s = sample_disorder({6, 3, false}, {DisorderKind::Gaussian, 0, 3});
  const auto a = optimize_multistart(s, {6, 21, 1, {}});
  const auto b = optimize_multistart(s, {6, 21, 4, {}});
  CHECK(a.best.energy == b.best.energy);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.final_energies == b.final_energies);
}

TEST_CASE("product_state_vector reproduces Bloch vectors") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto st = BlochProductState::random(3, seed);
    if (seed == 0) st.set(1, {0, 0, -1});
    const auto psi = product_state_vector(st).amplitudes();
    const Eigen::VectorXcd ref = oracle::product_ket({st.vectors().begin(), st.vectors().end()});
    CHECK(std::abs(std::abs(ref.dot(psi)) - 1.0) < 1e-12);
  }
}
