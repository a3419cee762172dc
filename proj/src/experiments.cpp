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

#include "spinlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "spinlab/error.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/product.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/spectral.hpp"

#ifndef SPINLAB_VERSION
#define SPINLAB_VERSION "unknown"
#endif

namespace spinlab {

const char* version() { return SPINLAB_VERSION; }

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Universality: return "universality";
    case ExperimentKind::ProductScaling: return "product_scaling";
    case ExperimentKind::Concentration: return "concentration";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "universality") return ExperimentKind::Universality;
  if (name == "product_scaling" || name == "scaling") return ExperimentKind::ProductScaling;
  if (name == "concentration") return ExperimentKind::Concentration;
  throw ParameterError("unknown experiment kind '" + name + "'");
}

double Thresholds::c() const { return c_epsilon.value_or((1.0 - epsilon) * std::sqrt(2.0)); }

void ExperimentConfig::validate() const {
  if (id.empty()) throw SchemaError("id", "must be a non-empty string");
  try {
    model.validate();
  } catch (const Error& e) {
    throw SchemaError("model", e.what());
  }
  if (disorders.empty()) throw SchemaError("disorders", "at least one disorder spec is required");
  for (std::size_t k = 0; k < disorders.size(); ++k) {
    try {
      disorders[k].validate(model);
    } catch (const Error& e) {
      throw SchemaError("disorders[" + std::to_string(k) + "]", e.what());
    }
  }
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    try {
      ModelConfig{sweep[k].n, sweep[k].p, model.adjusted}.validate();
    } catch (const Error& e) {
      throw SchemaError("sweep[" + std::to_string(k) + "]", e.what());
    }
  }
  if (samples == 0) throw SchemaError("samples", "must be positive");
  if (optimizer.restarts < 1) throw SchemaError("optimizer.restarts", "must be positive");
  if (optimizer.max_sweeps < 1) throw SchemaError("optimizer.max_sweeps", "must be positive");
  if (!(optimizer.tol > 0)) throw SchemaError("optimizer.tol", "must be positive");
  if (!(thresholds.epsilon > 0 && thresholds.epsilon < 1))
    throw SchemaError("thresholds.epsilon", "must lie in (0, 1)");
  if (thresholds.c_epsilon && !(*thresholds.c_epsilon > 0))
    throw SchemaError("thresholds.c_epsilon", "must be positive");
  if (spectral_check_max_n < 0) throw SchemaError("spectral_check_max_n", "must be non-negative");
}

std::uint64_t ExperimentConfig::sample_seed(std::size_t i) const {
  return seed_mix({seed, fnv1a(id), static_cast<std::uint64_t>(i)});
}

std::string ExperimentConfig::hash() const {
  json j = to_json(*this);
  j.erase("output_dir");
  j.erase("threads");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["id"] = c.id;
  j["kind"] = to_string(c.kind);
  j["model"] = {{"n", c.model.n}, {"p", c.model.p}, {"adjusted", c.model.adjusted}};
  json d = json::array();
  for (const auto& s : c.disorders) {
    json e;
    e["kind"] = to_string(s.kind);
    e["average_degree"] = s.average_degree;
    d.push_back(std::move(e));
  }
  j["disorders"] = std::move(d);
  json sw = json::array();
  for (const auto& pt : c.sweep) sw.push_back({{"n", pt.n}, {"p", pt.p}});
  j["sweep"] = std::move(sw);
  j["samples"] = c.samples;
  j["optimizer"] = {{"restarts", c.optimizer.restarts},
                    {"max_sweeps", c.optimizer.max_sweeps},
                    {"tol", c.optimizer.tol}};
  j["thresholds"] = {{"epsilon", c.thresholds.epsilon}, {"c_epsilon", c.thresholds.c()}};
  j["spectral_check_max_n"] = c.spectral_check_max_n;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

namespace {

void reject_unknown(const json& doc, const std::string& where, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!allowed.count(it.key()))
      throw SchemaError(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
}

const json& object_at(const json& doc, const std::string& key) {
  if (!doc[key].is_object()) throw SchemaError(key, "expected an object");
  return doc[key];
}

template <typename T>
T integer_at(const json& doc, const char* key, const std::string& field) {
  const json& v = doc[key];
  if (!v.is_number_integer()) throw SchemaError(field, "expected an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (v.is_number_unsigned()) return v.get<T>();
    if (v.get<std::int64_t>() < 0) throw SchemaError(field, "must be non-negative");
  }
  const auto x = v.get<std::int64_t>();
  if (x < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
      static_cast<std::uint64_t>(std::max<std::int64_t>(x, 0)) > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))
    throw SchemaError(field, "out of range");
  return static_cast<T>(x);
}

double number_at(const json& doc, const char* key, const std::string& field) {
  if (!doc[key].is_number()) throw SchemaError(field, "expected a number");
  return doc[key].get<double>();
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("config", "expected an object");
  reject_unknown(doc, "", {"id", "kind", "model", "disorders", "sweep", "samples", "optimizer",
                           "thresholds", "spectral_check_max_n", "output_dir", "seed", "threads"});
  ExperimentConfig c;
  if (!doc.contains("id") || !doc["id"].is_string()) throw SchemaError("id", "missing or not a string");
  c.id = doc["id"].get<std::string>();
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw SchemaError("kind", "missing or not a string");
  try {
    c.kind = experiment_kind_from_string(doc["kind"].get<std::string>());
  } catch (const ParameterError& e) {
    throw SchemaError("kind", e.what());
  }
  if (doc.contains("model")) {
    const json& m = object_at(doc, "model");
    reject_unknown(m, "model", {"n", "p", "adjusted"});
    if (m.contains("n")) c.model.n = integer_at<int>(m, "n", "model.n");
    if (m.contains("p")) c.model.p = integer_at<int>(m, "p", "model.p");
    if (m.contains("adjusted")) {
      if (!m["adjusted"].is_boolean()) throw SchemaError("model.adjusted", "expected a boolean");
      c.model.adjusted = m["adjusted"].get<bool>();
    }
  }
  if (doc.contains("disorders")) {
    if (!doc["disorders"].is_array()) throw SchemaError("disorders", "expected an array");
    c.disorders.clear();
    for (std::size_t k = 0; k < doc["disorders"].size(); ++k) {
      const std::string where = "disorders[" + std::to_string(k) + "]";
      const json& d = doc["disorders"][k];
      if (d.is_object()) reject_unknown(d, where, {"kind", "average_degree", "seed"});
      c.disorders.push_back(spec_from_json(d, where));
    }
  }
  if (doc.contains("sweep")) {
    if (!doc["sweep"].is_array()) throw SchemaError("sweep", "expected an array");
    for (std::size_t k = 0; k < doc["sweep"].size(); ++k) {
      const std::string where = "sweep[" + std::to_string(k) + "]";
      const json& s = doc["sweep"][k];
      if (!s.is_object()) throw SchemaError(where, "expected an object");
      reject_unknown(s, where, {"n", "p"});
      if (!s.contains("n") || !s.contains("p")) throw SchemaError(where, "needs n and p");
      c.sweep.push_back({integer_at<int>(s, "n", where + ".n"), integer_at<int>(s, "p", where + ".p")});
    }
  }
  if (doc.contains("samples")) c.samples = integer_at<std::size_t>(doc, "samples", "samples");
  if (doc.contains("optimizer")) {
    const json& o = object_at(doc, "optimizer");
    reject_unknown(o, "optimizer", {"restarts", "max_sweeps", "tol"});
    if (o.contains("restarts")) c.optimizer.restarts = integer_at<int>(o, "restarts", "optimizer.restarts");
    if (o.contains("max_sweeps"))
      c.optimizer.max_sweeps = integer_at<int>(o, "max_sweeps", "optimizer.max_sweeps");
    if (o.contains("tol")) c.optimizer.tol = number_at(o, "tol", "optimizer.tol");
  }
  if (doc.contains("thresholds")) {
    const json& t = object_at(doc, "thresholds");
    reject_unknown(t, "thresholds", {"epsilon", "c_epsilon"});
    if (t.contains("epsilon")) c.thresholds.epsilon = number_at(t, "epsilon", "thresholds.epsilon");
    if (t.contains("c_epsilon")) c.thresholds.c_epsilon = number_at(t, "c_epsilon", "thresholds.c_epsilon");
  }
  if (doc.contains("spectral_check_max_n"))
    c.spectral_check_max_n = integer_at<int>(doc, "spectral_check_max_n", "spectral_check_max_n");
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw SchemaError("output_dir", "expected a string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("seed")) c.seed = integer_at<std::uint64_t>(doc, "seed", "seed");
  if (doc.contains("threads")) c.threads = integer_at<unsigned>(doc, "threads", "threads");
  c.validate();
  return c;
}

json ExperimentReport::summary_json() const {
  json j;
  j["id"] = id;
  j["kind"] = to_string(kind);
  j["config_hash"] = config_hash;
  j["code_version"] = code_version;
  j["requested"] = requested;
  j["records"] = records.size();
  json errs = json::array();
  for (const auto& e : errors) errs.push_back({{"sample", e.sample}, {"message", e.message}});
  j["errors"] = std::move(errs);
  j["summary"] = summary;
  j["config"] = config;
  return j;
}

namespace {

struct Moments {
  std::size_t count = 0;
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std = std::numeric_limits<double>::quiet_NaN();
  double stderr_ = std::numeric_limits<double>::quiet_NaN();
};

Moments moments_of(const std::vector<double>& v) {
  Moments m;
  m.count = v.size();
  if (v.empty()) return m;
  double s = 0;
  for (double x : v) s += x;
  m.mean = s / static_cast<double>(v.size());
  if (v.size() < 2) return m;
  double ss = 0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  m.stderr_ = m.std / std::sqrt(static_cast<double>(v.size()));
  return m;
}

json to_json(const Moments& m) {
  return {{"count", m.count}, {"mean", m.mean}, {"std", m.std}, {"stderr", m.stderr_}};
}

ExperimentReport start_report(const ExperimentConfig& c, std::vector<std::string> columns,
                              std::size_t requested) {
  c.validate();
  ExperimentReport r;
  r.id = c.id;
  r.kind = c.kind;
  r.config_hash = c.hash();
  r.code_version = version();
  r.requested = requested;
  r.records = CsvTable(std::move(columns));
  r.config = to_json(c);
  r.config.erase("output_dir");
  r.config.erase("threads");
  return r;
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

// One slot per sample; either a value set or an error message.
struct Slot {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string error;
};

template <typename Body>
std::vector<Slot> run_samples(const ExperimentConfig& c, std::size_t count, Body&& body) {
  std::vector<Slot> slots(count);
  parallel_for(count, c.threads, [&](std::size_t i) {
    try {
      body(i, slots[i]);
    } catch (const Error& e) {
      slots[i].values.clear();
      slots[i].error = e.what();
    }
  });
  return slots;
}

double sqrt_2_log_p(int p) { return std::sqrt(2.0 * std::log(static_cast<double>(p))); }

MultiStartOptions multistart_options(const ExperimentConfig& c, std::uint64_t sample_seed) {
  MultiStartOptions o;
  o.restarts = c.optimizer.restarts;
  o.seed = seed_mix({sample_seed, 0x0b71u});
  o.threads = 1;
  o.optimizer.max_sweeps = c.optimizer.max_sweeps;
  o.optimizer.tol = c.optimizer.tol;
  return o;
}

DisorderSample draw(const ModelConfig& model, DisorderSpec spec, std::uint64_t seed) {
  spec.seed = seed;
  return sample_disorder(model, spec);
}

}  // namespace

ExperimentReport run_universality(const ExperimentConfig& c) {
  if (c.disorders.size() < 2) throw SchemaError("disorders", "universality needs at least two specs");
  if (c.model.n > 10) throw DomainError("universality computes exact lambda_max and needs n <= 10");
  ExperimentReport r = start_report(
      c, {"arm", "disorder", "sample", "seed", "lambda_max", "lambda_max_over_sqrt_n"},
      c.samples * c.disorders.size());
  const double rn = std::sqrt(static_cast<double>(c.model.n));
  json arms = json::array();
  std::vector<Moments> stats;
  for (std::size_t a = 0; a < c.disorders.size(); ++a) {
    const auto slots = run_samples(c, c.samples, [&](std::size_t i, Slot& s) {
      s.seed = c.sample_seed(i);
      const auto sample = draw(c.model, c.disorders[a], s.seed);
      LanczosOptions lo;
      lo.seed = seed_mix({s.seed, 0x1a2c});
      s.values = {lambda_max(PauliSumOperator(sample), lo)};
    });
    std::vector<double> scaled;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i].error.empty()) {
        r.errors.push_back({i, "arm " + std::to_string(a) + ": " + slots[i].error});
        continue;
      }
      const double lam = slots[i].values[0];
      scaled.push_back(lam / rn);
      r.records.row({std::to_string(a), to_string(c.disorders[a].kind), std::to_string(i),
                     fmt(slots[i].seed), fmt(lam), fmt(lam / rn)});
    }
    stats.push_back(moments_of(scaled));
    json arm = to_json(stats.back());
    arm["disorder"] = to_string(c.disorders[a].kind);
    arm["average_degree"] = c.disorders[a].average_degree;
    arms.push_back(std::move(arm));
  }
  r.summary["arms"] = std::move(arms);
  const double gap = stats[1].mean - stats[0].mean;
  const double combined = std::hypot(stats[1].stderr_, stats[0].stderr_);
  const double gate = std::max(2 * combined, 0.1 * std::abs(stats[0].mean));
  r.summary["gap"] = gap;
  r.summary["combined_stderr"] = combined;
  r.summary["gate"] = gate;
  r.summary["within_gate"] = std::abs(gap) <= gate;
  return r;
}

ExperimentReport run_product_scaling(const ExperimentConfig& c) {
  std::vector<SweepPoint> points = c.sweep;
  if (points.empty()) points.push_back({c.model.n, c.model.p});
  ExperimentReport r = start_report(
      c,
      {"n", "p", "sample", "seed", "energy", "energy_over_sqrt_n", "best_initial_energy",
       "lambda_max", "ratio_to_sqrt_2logp"},
      c.samples * points.size());
  json summaries = json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto pt = points[k];
    const ModelConfig model{pt.n, pt.p, c.model.adjusted};
    const bool spectral = pt.n <= c.spectral_check_max_n;
    const double rn = std::sqrt(static_cast<double>(pt.n));
    const double scale = sqrt_2_log_p(pt.p);
    const auto slots = run_samples(c, c.samples, [&](std::size_t i, Slot& s) {
      s.seed = seed_mix({c.sample_seed(i), static_cast<std::uint64_t>(pt.n), static_cast<std::uint64_t>(pt.p)});
      const auto sample = draw(model, c.disorders[0], s.seed);
      const auto res = optimize_multistart(sample, multistart_options(c, s.seed));
      const double init = *std::max_element(res.initial_energies.begin(), res.initial_energies.end());
      double lam = std::numeric_limits<double>::quiet_NaN();
      if (spectral) {
        LanczosOptions lo;
        lo.seed = seed_mix({s.seed, 0x1a2c});
        lam = lambda_max(PauliSumOperator(sample), lo);
      }
      s.values = {res.best.energy, init, lam};
    });
    std::vector<double> scaled;
    std::size_t above = 0;
    bool ascent = true, below_lambda = true;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i].error.empty()) {
        r.errors.push_back({k * c.samples + i, slots[i].error});
        continue;
      }
      const double e = slots[i].values[0], init = slots[i].values[1], lam = slots[i].values[2];
      scaled.push_back(e / rn);
      above += e / rn >= c.thresholds.c() * std::sqrt(std::log(static_cast<double>(pt.p)));
      ascent = ascent && e >= init;
      if (spectral) below_lambda = below_lambda && e <= lam + 1e-9;
      r.records.row({std::to_string(pt.n), std::to_string(pt.p), std::to_string(i), fmt(slots[i].seed),
                     fmt(e), fmt(e / rn), fmt(init), fmt(lam), fmt(e / rn / scale)});
    }
    const Moments m = moments_of(scaled);
    json s = to_json(m);
    s["n"] = pt.n;
    s["p"] = pt.p;
    s["sqrt_2logp"] = scale;
    s["ratio_to_sqrt_2logp"] = m.mean / scale;
    s["ratio_stderr"] = m.stderr_ / scale;
    s["fraction_above_threshold"] = scaled.empty() ? 0.0 : static_cast<double>(above) / static_cast<double>(scaled.size());
    s["ascent_from_best_initial"] = ascent;
    if (spectral) s["below_lambda_max"] = below_lambda;
    summaries.push_back(std::move(s));
  }
  r.summary["points"] = std::move(summaries);
  r.summary["threshold_c_epsilon"] = c.thresholds.c();
  return r;
}

ExperimentReport run_concentration(const ExperimentConfig& c) {
  if (c.samples < 100) throw SchemaError("samples", "concentration needs at least 100 samples");
  ExperimentReport r = start_report(c, {"n", "p", "sample", "seed", "energy", "energy_over_sqrt_n"}, c.samples);
  const double rn = std::sqrt(static_cast<double>(c.model.n));
  const auto slots = run_samples(c, c.samples, [&](std::size_t i, Slot& s) {
    s.seed = c.sample_seed(i);
    const auto sample = draw(c.model, c.disorders[0], s.seed);
    s.values = {optimize_multistart(sample, multistart_options(c, s.seed)).best.energy};
  });
  std::vector<double> scaled;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      r.errors.push_back({i, slots[i].error});
      continue;
    }
    const double e = slots[i].values[0];
    scaled.push_back(e / rn);
    r.records.row({std::to_string(c.model.n), std::to_string(c.model.p), std::to_string(i),
                   fmt(slots[i].seed), fmt(e), fmt(e / rn)});
  }
  const Moments m = moments_of(scaled);
  r.summary = to_json(m);
  r.summary["std_times_sqrt_n"] = m.std * rn;
  r.summary["sub_gaussian_sigma"] = 1.0 / rn;
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Universality: return run_universality(config);
    case ExperimentKind::ProductScaling: return run_product_scaling(config);
    case ExperimentKind::Concentration: return run_concentration(config);
  }
  throw ParameterError("unknown experiment kind");
}

void write_artifacts(const ExperimentReport& report, const std::filesystem::path& dir) {
  const auto json_path = dir / (report.id + ".json");
  if (std::filesystem::exists(json_path)) {
    json old;
    try {
      old = json::parse(read_text(json_path));
    } catch (const json::exception&) {
      throw ValidationError("existing " + json_path.string() + " is not valid JSON");
    }
    if (old.value("config_hash", std::string()) != report.config_hash)
      throw ValidationError("config hash mismatch for '" + report.id + "': " + json_path.string() +
                            " was produced by a different configuration");
  }
  std::filesystem::create_directories(dir);
  write_text(dir / (report.id + ".csv"), report.csv());
  write_text(json_path, report.summary_json().dump(2) + "\n");
}

std::vector<RunOutcome> run_all(const json& manifest, const RunAllOptions& options) {
  const json* list = &manifest;
  if (manifest.is_object()) {
    if (!manifest.contains("experiments")) throw SchemaError("experiments", "missing");
    list = &manifest["experiments"];
  }
  if (!list->is_array()) throw SchemaError("experiments", "expected an array");
  std::vector<RunOutcome> out;
  for (const auto& doc : *list) {
    RunOutcome o;
    if (doc.is_object() && doc.contains("id") && doc["id"].is_string()) o.id = doc["id"].get<std::string>();
    try {
      ExperimentConfig c = config_from_json(doc);
      if (options.output_dir) c.output_dir = options.output_dir->string();
      if (options.threads) c.threads = *options.threads;
      auto report = run_experiment(c);
      write_artifacts(report, c.output_dir);
      o.ok = true;
      o.report = std::move(report);
    } catch (const Error& e) {
      if (options.fail_fast) throw;
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace spinlab
