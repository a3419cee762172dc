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

// Seeded experiment drivers.
//
// Every report is a pure function of its configuration: sample i of
// experiment `id` draws from seed_mix({seed, fnv1a(id), i}), so neither the
// thread count nor the execution order changes a single output byte.
//
// Energies are raw <phi|H|phi> for the unit-variance Hamiltonian; columns
// divided by sqrt(n) and by sqrt(2 log p) are added next to them.

#ifndef SPINLAB_EXPERIMENTS_HPP
#define SPINLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/io.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

/// Library version string, embedded in every report.
const char* version();

enum class ExperimentKind { Universality, ProductScaling, Concentration };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct SweepPoint {
  int n = 0;
  int p = 0;
  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct OptimizerSettings {
  int restarts = 8;
  int max_sweeps = 500;
  double tol = 1e-9;
};

struct Thresholds {
  double epsilon = 0.1;
  /// (1 - epsilon) sqrt(2) when absent.
  std::optional<double> c_epsilon;
  double c() const;
};

struct ExperimentConfig {
  std::string id;
  ExperimentKind kind = ExperimentKind::Concentration;
  ModelConfig model{8, 2, false};
  /// Seeds inside the specs are ignored; samples use derived seeds.
  std::vector<DisorderSpec> disorders{DisorderSpec{}};
  /// Product scaling only; empty means the single point (model.n, model.p).
  std::vector<SweepPoint> sweep;
  std::size_t samples = 200;
  OptimizerSettings optimizer;
  Thresholds thresholds;
  /// Product scaling computes lambda_max for n up to this value.
  int spectral_check_max_n = 8;
  std::string output_dir = "spinlab-out";
  std::uint64_t seed = 0;
  /// 0 means one per logical core.
  unsigned threads = 0;

  /// Throws SchemaError naming the offending field.
  void validate() const;
  /// seed_mix({seed, fnv1a(id), i})
  std::uint64_t sample_seed(std::size_t i) const;
  /// 16 hex digits; covers every field except output_dir and threads,
  /// which do not affect results.
  std::string hash() const;
};

json to_json(const ExperimentConfig& config);
/// Unknown keys are rejected. Only id and kind are required.
ExperimentConfig config_from_json(const json& doc);

struct SampleError {
  std::size_t sample = 0;
  std::string message;
};

struct ExperimentReport {
  std::string id;
  ExperimentKind kind = ExperimentKind::Concentration;
  std::string config_hash;
  std::string code_version;
  std::size_t requested = 0;
  CsvTable records{std::vector<std::string>{}};
  std::vector<SampleError> errors;
  json summary;
  json config;

  std::string csv() const { return records.str(); }
  /// Summary plus provenance (config, hash, version, error records).
  json summary_json() const;
};

/// lambda_max(H) / sqrt(n) per arm, coupled across arms by sharing the
/// per-sample seed. Needs at least two disorder specs and n <= 10.
ExperimentReport run_universality(const ExperimentConfig& config);

/// Multi-start coordinate ascent per sweep point.
ExperimentReport run_product_scaling(const ExperimentConfig& config);

/// Spread of the optimized energy across at least 100 disorder samples.
ExperimentReport run_concentration(const ExperimentConfig& config);

/// Dispatches on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes <dir>/<id>.csv and <dir>/<id>.json. If <id>.json already exists
/// with a different config hash, throws ValidationError and writes nothing.
void write_artifacts(const ExperimentReport& report, const std::filesystem::path& dir);

struct RunOutcome {
  std::string id;
  bool ok = false;
  std::string error;
  std::optional<ExperimentReport> report;
};

struct RunAllOptions {
  bool fail_fast = false;
  /// Overrides every config's output_dir when set.
  std::optional<std::filesystem::path> output_dir;
  /// Overrides every config's thread count when set.
  std::optional<unsigned> threads;
};

/// Manifest: an array of configs or {"experiments": [...]}. Each config is
/// parsed, run and written; failures are recorded in the outcome unless
/// fail_fast is set, in which case the first one is rethrown.
std::vector<RunOutcome> run_all(const json& manifest, const RunAllOptions& options = {});

}  // namespace spinlab

#endif  // SPINLAB_EXPERIMENTS_HPP
