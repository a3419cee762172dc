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

#include "spinlab/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "spinlab/combinatorics.hpp"
#include "spinlab/error.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {
namespace {

// Letter alphabets in canonical order.
constexpr PauliLetter kStandardAlphabet[] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
constexpr PauliLetter kAdjustedAlphabet[] = {PauliLetter::I, PauliLetter::X, PauliLetter::Y,
                                             PauliLetter::Z};

std::span<const PauliLetter> alphabet(const ModelConfig& c) {
  if (c.adjusted) return kAdjustedAlphabet;
  return kStandardAlphabet;
}

double bloch_component(const Bloch& v, PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return v[0];
    case PauliLetter::Y: return v[1];
    case PauliLetter::Z: return v[2];
    default: return 1.0;
  }
}

}  // namespace

void ModelConfig::validate() const {
  if (n < 1) throw DomainError("model needs at least one qubit");
  if (p < 1) throw DomainError("locality p must be positive");
  if (p > n) throw DomainError("locality p = " + std::to_string(p) + " exceeds n = " +
                               std::to_string(n));
}

std::uint64_t ModelConfig::term_count() const {
  validate();
  return ipow(adjusted ? 4 : 3, p) * binomial(n, p);
}

double ModelConfig::normalization() const {
  const double base = 1.0 / std::sqrt(static_cast<double>(binomial(n, p)));
  return adjusted ? base * std::pow(2.0, -0.5 * p) : base;
}

std::string to_string(DisorderKind kind) {
  switch (kind) {
    case DisorderKind::Gaussian: return "gaussian";
    case DisorderKind::Rademacher: return "rademacher";
    case DisorderKind::SparseRademacher: return "sparse_rademacher";
  }
  return "unknown";
}

DisorderKind disorder_kind_from_string(const std::string& name) {
  if (name == "gaussian") return DisorderKind::Gaussian;
  if (name == "rademacher") return DisorderKind::Rademacher;
  if (name == "sparse_rademacher" || name == "sparse") return DisorderKind::SparseRademacher;
  throw ParameterError("unknown disorder kind '" + name + "'");
}

void DisorderSpec::validate(const ModelConfig& config) const {
  config.validate();
  if (kind != DisorderKind::SparseRademacher) return;
  if (config.adjusted)
    throw ParameterError("sparse disorder is defined for the standard model only");
  if (!(average_degree > 0)) throw ParameterError("average degree must be positive");
  const double cap = std::pow(3.0, config.p) * static_cast<double>(binomial(config.n, config.p - 1));
  if (average_degree > cap)
    throw ParameterError("average degree " + std::to_string(average_degree) +
                         " exceeds 3^p C(n,p-1) = " + std::to_string(cap));
}

double DisorderSpec::nonzero_probability(const ModelConfig& config) const {
  return average_degree * std::pow(3.0, -config.p) /
         static_cast<double>(binomial(config.n, config.p - 1));
}

double DisorderSpec::sparse_magnitude(const ModelConfig& config) const {
  return std::sqrt(std::pow(3.0, config.p) *
                   static_cast<double>(binomial(config.n, config.p - 1)) / average_degree);
}

std::vector<PauliTerm> enumerate_terms(const ModelConfig& config) {
  config.validate();
  const auto letters = alphabet(config);
  const int base = static_cast<int>(letters.size());
  std::vector<PauliTerm> out;
  out.reserve(config.term_count());
  for (const auto& combo : all_combinations(config.n, config.p)) {
    std::vector<int> digits(config.p, 0);
    for (;;) {
      PauliTerm t{config.n, combo, {}};
      t.letters.reserve(config.p);
      for (int d : digits) t.letters.push_back(letters[d]);
      out.push_back(std::move(t));
      int k = config.p - 1;
      while (k >= 0 && ++digits[k] == base) digits[k--] = 0;
      if (k < 0) break;
    }
  }
  return out;
}

std::vector<double> DisorderSample::dense_values() const {
  std::vector<double> out(config.term_count(), 0.0);
  for (const auto& e : entries) out[e.index] = e.value;
  return out;
}

DisorderSample sample_disorder(const ModelConfig& config, const DisorderSpec& spec) {
  spec.validate(config);
  const std::uint64_t key = mix64(spec.seed);
  DisorderSample s{config, spec, spec.kind == DisorderKind::SparseRademacher, {}};
  const double q = spec.kind == DisorderKind::SparseRademacher ? spec.nonzero_probability(config)
                                                               : 0.0;
  const double magnitude =
      spec.kind == DisorderKind::SparseRademacher ? spec.sparse_magnitude(config) : 0.0;
  auto terms = enumerate_terms(config);
  if (!s.sparse) s.entries.reserve(terms.size());
  for (std::uint64_t t = 0; t < terms.size(); ++t) {
    const std::uint64_t draw = counter_u64(key, 2 * t);
    double value = 0.0;
    switch (spec.kind) {
      case DisorderKind::Gaussian:
        value = normal_icdf(to_open_unit(draw));
        break;
      case DisorderKind::Rademacher:
        value = (draw >> 63) ? 1.0 : -1.0;
        break;
      case DisorderKind::SparseRademacher:
        if (to_open_unit(draw) >= q) continue;
        value = (counter_u64(key, 2 * t + 1) >> 63) ? magnitude : -magnitude;
        break;
    }
    s.entries.push_back({t, std::move(terms[t]), value});
  }
  return s;
}

DisorderSample sample_from_values(const ModelConfig& config, std::span<const double> values,
                                  DisorderSpec spec) {
  if (values.size() != config.term_count())
    throw DimensionError("expected " + std::to_string(config.term_count()) + " coefficients, got " +
                         std::to_string(values.size()));
  auto terms = enumerate_terms(config);
  DisorderSample s{config, spec, false, {}};
  s.entries.reserve(terms.size());
  for (std::uint64_t t = 0; t < terms.size(); ++t)
    s.entries.push_back({t, std::move(terms[t]), values[t]});
  return s;
}

DenseOperator materialize_hamiltonian(const DisorderSample& sample) {
  const int n = sample.config.n;
  require_dense(n, "materialize_hamiltonian");
  DenseOperator out = DenseOperator::zero(n);
  PauliSumOperator(sample).accumulate(out.matrix);
  return out;
}

double product_energy(const DisorderSample& sample, const BlochProductState& state) {
  if (state.n() != sample.config.n)
    throw DimensionError("product state has " + std::to_string(state.n()) +
                         " qubits, Hamiltonian has " + std::to_string(sample.config.n));
  double total = 0.0;
  for (const auto& e : sample.entries) {
    double prod = e.value;
    for (std::size_t k = 0; k < e.term.qubits.size(); ++k)
      prod *= bloch_component(state[e.term.qubits[k]], e.term.letters[k]);
    total += prod;
  }
  return total * sample.normalization();
}

PauliSumOperator::PauliSumOperator(const DisorderSample& sample) : n_(sample.config.n) {
  require_matrix_free(n_, "PauliSumOperator");
  const double norm = sample.normalization();
  terms_.reserve(sample.entries.size());
  for (const auto& e : sample.entries) {
    if (e.value == 0.0) continue;
    const PhasedPauli w = e.term.to_word();
    const std::uint64_t xm = w.x_index_mask(), zm = w.z_index_mask();
    const cplx phase = w.with_phase(std::popcount(xm & zm)).phase();
    terms_.push_back({xm, zm, norm * e.value * phase});
  }
}

void PauliSumOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::uint64_t d = dim();
  if (in.size() != d || out.size() != d) throw DimensionError("vector length is not 2^n");
  std::fill(out.begin(), out.end(), cplx{0.0});
  for (const auto& t : terms_) {
    for (std::uint64_t k = 0; k < d; ++k) {
      const cplx v = t.coefficient * in[k];
      if (std::popcount(k & t.z_mask) & 1)
        out[k ^ t.x_mask] -= v;
      else
        out[k ^ t.x_mask] += v;
    }
  }
}

void PauliSumOperator::accumulate(Eigen::MatrixXcd& m) const {
  const std::uint64_t d = dim();
  if (static_cast<std::uint64_t>(m.rows()) != d || m.cols() != m.rows())
    throw DimensionError("matrix shape is not 2^n x 2^n");
  for (const auto& t : terms_)
    for (std::uint64_t k = 0; k < d; ++k) {
      const double sign = (std::popcount(k & t.z_mask) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(k ^ t.x_mask), static_cast<Eigen::Index>(k)) +=
          sign * t.coefficient;
    }
}

Eigen::VectorXcd PauliSumOperator::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out(in.size());
  apply(std::span<const cplx>(in.data(), static_cast<std::size_t>(in.size())),
        std::span<cplx>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

std::string to_binary(const DisorderSample& sample) {
  if (sample.sparse) throw ParameterError("binary form is defined for dense samples only");
  const auto values = sample.dense_values();
  std::string out(values.size() * 8, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) out[8 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  }
  return out;
}

DisorderSample from_binary(const ModelConfig& config, const DisorderSpec& spec,
                           std::string_view bytes) {
  if (bytes.size() != config.term_count() * 8)
    throw DimensionError("binary sample has wrong length for this model");
  std::vector<double> values(config.term_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 * i + b])) << (8 * b);
    values[i] = std::bit_cast<double>(bits);
  }
  return sample_from_values(config, values, spec);
}

}  // namespace spinlab
