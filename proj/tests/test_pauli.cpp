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

#include "doctest.h"
#include "oracles.hpp"
#include "spinlab/pauli.hpp"
#include "spinlab/rng.hpp"

using namespace spinlab;

TEST_CASE("pauli_product examples") {
  const auto x0 = PhasedPauli::parse("X");
  const auto y0 = PhasedPauli::parse("Y");
  const auto xy = x0 * y0;
  CHECK(xy.to_string() == "+iZ");
  CHECK(oracle::kron_matrix("X") * oracle::kron_matrix("Y") ==
        cplx(0, 1) * oracle::kron_matrix("Z"));

  const auto xx = x0 * x0;
  CHECK(xx.is_identity_word());
  CHECK(xx.phase_exponent() == 0);

  const auto zz = PhasedPauli::parse("XX") * PhasedPauli::parse("YY");
  CHECK(zz.to_string() == "-ZZ");
  CHECK(oracle::kron_matrix("XX") * oracle::kron_matrix("YY") == -oracle::kron_matrix("ZZ"));

  CHECK_THROWS_AS(PhasedPauli::parse("X") * PhasedPauli::parse("XX"), DimensionError);
}

TEST_CASE("anticommutes examples") {
  CHECK(anticommutes(PhasedPauli::parse("XI"), PhasedPauli::parse("YI")));
  CHECK_FALSE(anticommutes(PhasedPauli::parse("XX"), PhasedPauli::parse("YY")));
  CHECK_FALSE(anticommutes(PhasedPauli::parse("XXII"), PhasedPauli::parse("IIZZ")));
  CHECK_THROWS_AS(anticommutes(PhasedPauli::parse("X"), PhasedPauli::parse("XY")),
                  DimensionError);
}

TEST_CASE("trace_of_letter_sequence examples") {
  using L = PauliLetter;
  const L xx[] = {L::X, L::X};
  const L xy[] = {L::X, L::Y};
  const L xyz[] = {L::X, L::Y, L::Z};
  CHECK(trace_of_letter_sequence(xx) == ExactTrace{2, 0});
  CHECK(trace_of_letter_sequence(xy) == ExactTrace{0, 0});
  CHECK(trace_of_letter_sequence(xyz) == ExactTrace{0, 2});
}

TEST_CASE("materialize_word examples") {
  auto z = materialize_word(PhasedPauli::parse("Z")).matrix;
  CHECK(z(0, 0) == cplx(1));
  CHECK(z(1, 1) == cplx(-1));
  CHECK(z(0, 1) == cplx(0));

  auto zz = materialize_word(PhasedPauli::parse("ZZ")).matrix;
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected.diagonal() << 1, -1, -1, 1;
  CHECK(zz == expected);

  auto mx = materialize_word(PhasedPauli::parse("-X")).matrix;
  CHECK(mx(0, 1) == cplx(-1));
  CHECK(mx(1, 0) == cplx(-1));
  CHECK(mx(0, 0) == cplx(0));

  CHECK_THROWS_AS(materialize_word(PhasedPauli(kDenseQubitLimit + 1)), CapacityError);
}

TEST_CASE("materialize matches Kronecker oracle, all words up to 3 qubits") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : oracle::all_words(n)) {
      CHECK(materialize_word(PhasedPauli::parse(s)).matrix == oracle::kron_matrix(s));
    }
}

TEST_CASE("product is a homomorphism: exhaustive n <= 3 plus phases") {
  const char* phases[] = {"", "+i", "-", "-i"};
  for (int n = 1; n <= 3; ++n) {
    const auto words = oracle::all_words(n);
    for (const auto& a : words)
      for (const auto& b : words) {
        const auto pa = PhasedPauli::parse(std::string(phases[a.size() % 4]) + a);
        const auto pb = PhasedPauli::parse(std::string(phases[(a.size() + b[0]) % 4]) + b);
        const auto prod = pa * pb;
        CHECK(materialize_word(pa).matrix * materialize_word(pb).matrix ==
              materialize_word(prod).matrix);
      }
  }
}

TEST_CASE("product homomorphism at n = 4, exhaustive over a letter subset") {
  const auto words = oracle::all_words(4);
  // 256 x 256 pairs; stride through b to keep runtime small.
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i % 7; j < words.size(); j += 7) {
      const auto a = PhasedPauli::parse(words[i]);
      const auto b = PhasedPauli::parse(words[j]);
      REQUIRE(materialize_word(a).matrix * materialize_word(b).matrix ==
              materialize_word(a * b).matrix);
    }
}

TEST_CASE("product matches per-qubit letter algebra on random long words") {
  Rng rng(12345);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(150));
    std::string a, b;
    for (int q = 0; q < n; ++q) {
      a.push_back("IXYZ"[rng.below(4)]);
      b.push_back("IXYZ"[rng.below(4)]);
    }
    const auto prod = PhasedPauli::parse(a) * PhasedPauli::parse(b);
    // Per-site 2x2 products give the expected letters and total phase.
    cplx phase = 1;
    for (int q = 0; q < n; ++q) {
      const Eigen::Matrix2cd m = oracle::kron_matrix(std::string(1, a[q])) *
                                 oracle::kron_matrix(std::string(1, b[q]));
      const PauliLetter l = prod.letter(q);
      const Eigen::Matrix2cd lm = letter_matrix(l);
      // m = c * lm with c in {+-1, +-i}
      const cplx c = (lm.adjoint() * m).trace() / 2.0;
      REQUIRE((m - c * lm).norm() == doctest::Approx(0.0));
      phase *= c;
    }
    CHECK(std::abs(phase - prod.phase()) < 1e-12);
  }
}

TEST_CASE("trace_of_letter_sequence equals matrix trace for all sequences up to length 6") {
  for (int len = 1; len <= 6; ++len) {
    std::vector<PauliLetter> seq(len, PauliLetter::X);
    std::vector<int> idx(len, 0);
    for (;;) {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
      for (int k = 0; k < len; ++k) {
        seq[k] = kXYZ[idx[k]];
        m *= letter_matrix(seq[k]);
      }
      REQUIRE(trace_of_letter_sequence(seq).to_complex() == m.trace());
      int k = 0;
      while (k < len && ++idx[k] == 3) idx[k++] = 0;
      if (k == len) break;
    }
  }
}

TEST_CASE("anticommutes agrees with matrix anticommutator on all 2-qubit pairs") {
  const auto words = oracle::all_words(2);
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto ma = oracle::kron_matrix(a), mb = oracle::kron_matrix(b);
      const bool oracle_anti = (ma * mb + mb * ma).norm() == 0.0;
      CHECK(anticommutes(PhasedPauli::parse(a), PhasedPauli::parse(b)) == oracle_anti);
    }
}

TEST_CASE("word text form round-trips") {
  Rng rng(7);
  const char* phases[] = {"", "+i", "-", "-i"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = phases[rng.below(4)];
    const int n = 1 + static_cast<int>(rng.below(80));
    for (int q = 0; q < n; ++q) s.push_back("IXYZ"[rng.below(4)]);
    CHECK(PhasedPauli::parse(s).to_string() == s);
  }
  CHECK(PhasedPauli::parse("+XZ").to_string() == "XZ");
  CHECK_THROWS_AS(PhasedPauli::parse("XQ"), ValidationError);
  CHECK_THROWS_AS(PhasedPauli::parse("-"), ValidationError);
}

TEST_CASE("PauliTerm validation and text form") {
  PauliTerm t{4, {0, 2}, {PauliLetter::X, PauliLetter::Z}};
  CHECK_NOTHROW(t.validate());
  CHECK(t.to_string() == "0,2:XZ");
  CHECK(PauliTerm::parse("0,2:XZ", 4) == t);
  CHECK(t.to_word().to_string() == "XIZI");
  PauliTerm bad{4, {2, 0}, {PauliLetter::X, PauliLetter::Z}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  PauliTerm ident{4, {1, 3}, {PauliLetter::I, PauliLetter::Z}};
  CHECK_THROWS_AS(ident.validate(), ValidationError);
  CHECK_NOTHROW(ident.validate(/*allow_identity=*/true));
}

TEST_CASE("letter pair sum equals 2 SWAP - I exactly") {
  const auto sum = letter_pair_sum();
  const auto swap = swap_operator();
  const Eigen::MatrixXcd expected = 2.0 * swap.matrix - Eigen::MatrixXcd::Identity(4, 4);
  CHECK(sum.matrix == expected);
  Eigen::MatrixXcd s(4, 4);
  s << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
  CHECK(swap.matrix == s);
  const Eigen::MatrixXcd oracle = oracle::kron_matrix("XX") + oracle::kron_matrix("YY") + oracle::kron_matrix("ZZ");
  CHECK(sum.matrix == oracle);
}
