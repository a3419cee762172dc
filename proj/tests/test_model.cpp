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
#include "spinlab/io.hpp"
#include "spinlab/model.hpp"
#include "spinlab/product.hpp"
#include "spinlab/rng.hpp"

using namespace spinlab;

namespace {

// H assembled from Kronecker products of explicit matrices.
Eigen::MatrixXcd oracle_hamiltonian(const DisorderSample& s) {
  const auto dim = Eigen::Index{1} << s.config.n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : s.entries) {
    std::string word(static_cast<std::size_t>(s.config.n), 'I');
    for (std::size_t k = 0; k < e.term.qubits.size(); ++k)
      word[static_cast<std::size_t>(e.term.qubits[k])] = to_char(e.term.letters[k]);
    h += e.value * oracle::kron_matrix(word);
  }
  return h * s.normalization();
}

std::vector<std::array<double, 3>> as_arrays(const BlochProductState& s) {
  return {s.vectors().begin(), s.vectors().end()};
}

}  // namespace

TEST_CASE("enumerate_terms counts and order") {
  CHECK(enumerate_terms({2, 2, false}).size() == 9);
  CHECK(enumerate_terms({4, 2, false}).size() == 54);
  CHECK(enumerate_terms({3, 3, false}).size() == 27);
  CHECK(enumerate_terms({3, 2, true}).size() == 48);
  CHECK_THROWS_AS(enumerate_terms({2, 3, false}), DomainError);

  const auto t = enumerate_terms({3, 2, false});
  CHECK(t.front().to_string() == "0,1:XX");
  CHECK(t[1].to_string() == "0,1:XY");
  CHECK(t[3].to_string() == "0,1:YX");
  CHECK(t[9].to_string() == "0,2:XX");
  CHECK(t.back().to_string() == "1,2:ZZ");
  for (std::size_t i = 1; i < t.size(); ++i) {
    const bool ordered = t[i - 1].qubits < t[i].qubits ||
                         (t[i - 1].qubits == t[i].qubits && t[i - 1].letters < t[i].letters);
    CHECK(ordered);
  }
}

TEST_CASE("materialize_hamiltonian examples") {
  ModelConfig c{2, 2, false};
  std::vector<double> v(9, 0.0);
  v[8] = 1.0;  // ZZ
  const auto h = materialize_hamiltonian(sample_from_values(c, v));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected.diagonal() << 1, -1, -1, 1;
  CHECK(h.matrix == expected);

  const auto zero = materialize_hamiltonian(sample_from_values(c, std::vector<double>(9, 0.0)));
  CHECK(zero.matrix.isZero(0));

  CHECK_THROWS_AS(materialize_hamiltonian(sample_disorder({13, 2, false}, {})), CapacityError);
}

TEST_CASE("materialize_hamiltonian agrees with Kronecker oracle") {
  for (bool adjusted : {false, true})
    for (int n = 2; n <= 4; ++n)
      for (int p = 1; p <= n; ++p) {
        const ModelConfig c{n, p, adjusted};
        const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, seed_mix({7, 1, 2})});
        const auto h = materialize_hamiltonian(s);
        CHECK((h.matrix - oracle_hamiltonian(s)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(h.is_hermitian(1e-13));
      }
}

TEST_CASE("product_energy examples") {
  ModelConfig c{2, 2, false};
  const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, 99});
  const auto zz = BlochProductState::uniform(2, {0, 0, 1});
  CHECK(product_energy(s, zz) == doctest::Approx(s.entries[8].value).epsilon(1e-15));

  std::vector<double> v(9, 0.0);
  v[0] = 0.7;  // XX
  const auto xx = sample_from_values(c, v);
  const auto st = BlochProductState::normalized({{0.3, 0.5, 0.2}, {-0.6, 0.1, 0.4}});
  CHECK(product_energy(xx, st) == doctest::Approx(0.7 * st[0][0] * st[1][0]).epsilon(1e-15));

  const auto zero = sample_from_values(c, std::vector<double>(9, 0.0));
  CHECK(product_energy(zero, st) == 0.0);
  CHECK_THROWS_AS(product_energy(s, BlochProductState::uniform(3, {0, 0, 1})), DimensionError);
}

TEST_CASE("product_energy equals dense quadratic form") {
  int checked = 0;
  for (int n = 2; n <= 6; ++n)
    for (int p : {2, 3}) {
      if (p > n) continue;
      for (int trial = 0; trial < 200 / 9 + 1; ++trial) {
        const ModelConfig c{n, p, false};
        const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, seed_mix({11, (unsigned)n, (unsigned)p, (unsigned)trial})});
        const auto st = BlochProductState::random(n, seed_mix({12, (unsigned)trial}));
        const Eigen::VectorXcd phi = oracle::product_ket(as_arrays(st));
        const double dense = (phi.adjoint() * oracle_hamiltonian(s) * phi)(0).real();
        CHECK(std::abs(product_energy(s, st) - dense) < 1e-10);
        ++checked;
      }
    }
  CHECK(checked >= 200);
}

TEST_CASE("product_energy on the adjusted model") {
  const ModelConfig c{3, 2, true};
  const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, 5});
  const auto st = BlochProductState::random(3, 6);
  const Eigen::VectorXcd phi = oracle::product_ket(as_arrays(st));
  const double dense = (phi.adjoint() * oracle_hamiltonian(s) * phi)(0).real();
  CHECK(std::abs(product_energy(s, st) - dense) < 1e-12);
}

TEST_CASE("Gaussian coefficient moments") {
  const ModelConfig c{50, 3, false};  // 3^3 * C(50,3) = 529200 terms
  const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, 2024});
  const auto v = s.dense_values();
  const std::size_t m = 100000;
  double sum = 0, sq = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sum += v[i];
    sq += v[i] * v[i];
  }
  const double mean = sum / m;
  const double var = sq / m - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(double(m)));
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("Rademacher values") {
  const auto s = sample_disorder({6, 3, false}, {DisorderKind::Rademacher, 0, 3});
  int plus = 0;
  for (const auto& e : s.entries) {
    CHECK((e.value == 1.0 || e.value == -1.0));
    plus += e.value > 0;
  }
  const double n = static_cast<double>(s.entries.size());
  CHECK(std::abs(plus - n / 2) < 4 * std::sqrt(n) / 2);
}

TEST_CASE("sparse Rademacher") {
  const ModelConfig c{4, 2, false};
  const DisorderSpec spec{DisorderKind::SparseRademacher, 3.0, 17};
  CHECK(spec.sparse_magnitude(c) == doctest::Approx(std::sqrt(12.0)));
  const auto s = sample_disorder(c, spec);
  CHECK(s.sparse);
  for (const auto& e : s.entries) CHECK(std::abs(e.value) == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));

  CHECK_THROWS_AS(sample_disorder(c, {DisorderKind::SparseRademacher, 36.1, 1}), ParameterError);
  CHECK_NOTHROW(sample_disorder(c, {DisorderKind::SparseRademacher, 36.0, 1}));
  CHECK_THROWS_AS(sample_disorder({4, 2, true}, spec), ParameterError);
  CHECK_THROWS_AS(sample_disorder(c, {DisorderKind::SparseRademacher, 0.0, 1}), ParameterError);
}

TEST_CASE("sparse Rademacher moments and density") {
  // 27 * C(60,3) = 924120 draws; use the first 10^5 coefficients in canonical order.
  const ModelConfig c{60, 3, false};
  const DisorderSpec spec{DisorderKind::SparseRademacher, 40.0, 31337};
  const double q = spec.nonzero_probability(c);
  const auto v = sample_disorder(c, spec).dense_values();
  const std::size_t m = 100000;
  double sum = 0, sq = 0, sq2 = 0, nz = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sum += v[i];
    sq += v[i] * v[i];
    sq2 += v[i] * v[i] * v[i] * v[i];
    nz += v[i] != 0.0;
  }
  const double mean = sum / m, second = sq / m;
  const double se_mean = std::sqrt(second / m);
  const double se_second = std::sqrt((sq2 / m - second * second) / m);
  const double se_frac = std::sqrt(q * (1 - q) / m);
  CHECK(std::abs(mean) <= 3 * se_mean);
  CHECK(std::abs(second - 1.0) <= 3 * se_second);
  CHECK(std::abs(nz / m - q) <= 3 * se_frac);
}

TEST_CASE("sampling is deterministic and storage-independent") {
  const ModelConfig c{5, 3, false};
  const DisorderSpec g{DisorderKind::Gaussian, 0, 42};
  CHECK(to_binary(sample_disorder(c, g)) == to_binary(sample_disorder(c, g)));
  CHECK(to_binary(sample_disorder(c, g)) != to_binary(sample_disorder(c, {DisorderKind::Gaussian, 0, 43})));

  const DisorderSpec sp{DisorderKind::SparseRademacher, 5.0, 42};
  const auto a = sample_disorder(c, sp), b = sample_disorder(c, sp);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].index == b.entries[i].index);
    CHECK(a.entries[i].value == b.entries[i].value);
  }
  // Sparse signs on shared terms come from the same per-term stream.
  for (std::size_t i = 1; i < a.entries.size(); ++i) CHECK(a.entries[i - 1].index < a.entries[i].index);
}

TEST_CASE("variance of <00|H|00> is one") {
  const ModelConfig c{2, 2, false};
  const std::size_t m = 100000;
  double sum = 0, sq = 0, quart = 0;
  const auto zz = BlochProductState::uniform(2, {0, 0, 1});
  for (std::size_t i = 0; i < m; ++i) {
    const double e = product_energy(sample_disorder(c, {DisorderKind::Gaussian, 0, i}), zz);
    sum += e;
    sq += e * e;
    quart += e * e * e * e;
  }
  const double var = sq / m - (sum / m) * (sum / m);
  const double se = std::sqrt((quart / m - (sq / m) * (sq / m)) / m);
  CHECK(std::abs(var - 1.0) <= 3 * se);
}

TEST_CASE("JSON and binary round trips") {
  const ModelConfig c{4, 2, false};
  const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, 8});
  const auto doc = to_json(s);
  const auto back = sample_from_json(json::parse(doc.dump()));
  CHECK(back.config == c);
  CHECK(back.dense_values() == s.dense_values());
  CHECK(doc["entries"][0][0] == "0,1:XX");

  const auto bin = to_binary(s);
  CHECK(bin.size() == 54 * 8);
  CHECK(from_binary(c, s.spec, bin).dense_values() == s.dense_values());
  CHECK_THROWS_AS(from_binary(c, s.spec, bin.substr(8)), DimensionError);

  const auto sparse = sample_disorder(c, {DisorderKind::SparseRademacher, 6.0, 9});
  const auto sback = sample_from_json(json::parse(to_json(sparse).dump()));
  CHECK(sback.sparse);
  CHECK(sback.spec.kind == DisorderKind::SparseRademacher);
  CHECK(sback.dense_values() == sparse.dense_values());
  CHECK_THROWS_AS(to_binary(sparse), ParameterError);

  auto bad = doc;
  bad.erase("entries");
  CHECK_THROWS_AS(sample_from_json(bad), SchemaError);
  auto bad_term = doc;
  bad_term["entries"][0][0] = "0,1:XI";
  CHECK_THROWS_AS(sample_from_json(bad_term), SchemaError);
}

TEST_CASE("matrix-free apply matches the dense matrix") {
  const ModelConfig c{5, 3, false};
  const auto s = sample_disorder(c, {DisorderKind::Gaussian, 0, 77});
  const auto h = materialize_hamiltonian(s);
  Rng rng(5);
  Eigen::VectorXcd v(32);
  for (auto& x : v) x = cplx(rng.normal(), rng.normal());
  const Eigen::VectorXcd hv = PauliSumOperator(s).apply(v);
  CHECK((hv - h.matrix * v).cwiseAbs().maxCoeff() < 1e-12);
}
