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

// spinlab command-line front end.
//
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinlab/error.hpp"
#include "spinlab/experiments.hpp"
#include "spinlab/io.hpp"
#include "spinlab/lovasz.hpp"
#include "spinlab/matchings.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/product.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/verify.hpp"

namespace fs = std::filesystem;
using namespace spinlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kFormats = R"(Output formats

All numbers are printed with 17 significant digits; CSV files have a header
row and one record per line. Files land in the output directory: --out, else
$SPINLAB_OUT, else the config's output_dir, else ./spinlab-out.

  <id>.csv          experiment records (universality, scaling, concentration)
                      universality:  arm,disorder,sample,seed,lambda_max,lambda_max_over_sqrt_n
                      scaling:       n,p,sample,seed,energy,energy_over_sqrt_n,
                                     best_initial_energy,lambda_max,ratio_to_sqrt_2logp
                      concentration: n,p,sample,seed,energy,energy_over_sqrt_n
  <id>.json         summary, config, config_hash, code_version, error records
  run.json          per-experiment outcomes of a manifest run
  sample.json       disorder sample: n, p, adjusted, spec, sparse, entries [[term, value]]
  sample.bin        little-endian float64 coefficients in canonical term order
  optimize.json     best energy, Bloch vectors, restart energies
  exact.json        lambda_max, lambda_max_over_sqrt_n, optional log_partition
  spectrum.csv      index,eigenvalue (ascending)
  matchings.csv     matching,trace_sum
  matchings.json    d, total, count, mean, equals_two_d_plus_one
  gamma.json        lhs/rhs means and errors, ratio, per_r_ratio
  poisson.json      lambda, pmfs, tv_distance;  poisson.csv  k,empirical,poisson
  gbound.json       beta_star, g_min, witness terms, closed forms, ratio_to_sqrt
  theta.json        value, bounds, residuals, certificate;  graph.csv  i,j
  net.csv           x,y,z;  net.json  epsilon, size, verified, exceedances
  haar.json         empirical_mean, standard_error, target
  verify.json       passed, checks [{name, passed, detail}]

Energies are raw <phi|H|phi> for the unit-variance Hamiltonian; derived
columns divide by sqrt(n) and by sqrt(2 log p).
)";

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool quiet = false;
};

fs::path resolve_out(const CLI::App& sub, const Common& c, const std::string& config_dir) {
  if (sub.count("--out")) return c.out;
  if (const char* env = std::getenv("SPINLAB_OUT"); env && *env) return env;
  if (!config_dir.empty()) return config_dir;
  return "spinlab-out";
}

void write_json(const fs::path& dir, const std::string& name, const json& j) {
  fs::create_directories(dir);
  write_text(dir / name, j.dump(2) + "\n");
}

void add_common(CLI::App* sub, Common& c, bool with_seed = true) {
  sub->add_option("--out", c.out, "Output directory (overrides $SPINLAB_OUT and config)");
  if (with_seed) sub->add_option("--seed", c.seed, "Master seed");
  sub->add_option("--threads", c.threads, "Worker threads; 0 = one per logical core");
  sub->add_flag("-q,--quiet", c.quiet, "Suppress stdout summaries");
}

struct ModelArgs {
  int n = 6;
  int p = 2;
  bool adjusted = false;
  std::string disorder = "gaussian";
  double degree = 0;

  ModelConfig model() const { return {n, p, adjusted}; }
  DisorderSpec spec(std::uint64_t seed) const {
    DisorderSpec s;
    try {
      s.kind = disorder_kind_from_string(disorder);
    } catch (const ParameterError& e) {
      throw SchemaError("disorder", e.what());
    }
    s.average_degree = degree;
    s.seed = seed;
    return s;
  }
};

void add_model(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--n", m.n, "Qubit count")->capture_default_str();
  sub->add_option("--p", m.p, "Locality")->capture_default_str();
  sub->add_flag("--adjusted", m.adjusted, "Adjusted model (letters include I)");
  sub->add_option("--disorder", m.disorder, "gaussian | rademacher | sparse_rademacher")->capture_default_str();
  sub->add_option("--degree", m.degree, "Average degree for sparse_rademacher");
}

// Experiment flags mirror the JSON config fields one to one.
struct ExperimentArgs {
  std::string config_path;
  std::string id;
  int n = 0, p = 0;
  bool adjusted = false;
  std::vector<std::string> disorders;
  std::vector<std::string> sweep;
  std::size_t samples = 0;
  int restarts = 0, max_sweeps = 0;
  double opt_tol = 0, epsilon = 0, c_epsilon = 0;
  int spectral_check_max_n = 0;
};

void add_experiment(CLI::App* sub, ExperimentArgs& a) {
  sub->add_option("--config", a.config_path, "JSON config file; flags override its fields");
  sub->add_option("--id", a.id, "Experiment id (artifact base name)");
  sub->add_option("--n", a.n, "model.n");
  sub->add_option("--p", a.p, "model.p");
  sub->add_flag("--adjusted", a.adjusted, "model.adjusted");
  sub->add_option("--disorder", a.disorders, "disorders[]: kind or kind:average_degree; repeatable");
  sub->add_option("--sweep", a.sweep, "sweep[]: n:p; repeatable");
  sub->add_option("--samples", a.samples, "samples");
  sub->add_option("--restarts", a.restarts, "optimizer.restarts");
  sub->add_option("--max-sweeps", a.max_sweeps, "optimizer.max_sweeps");
  sub->add_option("--opt-tol", a.opt_tol, "optimizer.tol");
  sub->add_option("--epsilon", a.epsilon, "thresholds.epsilon");
  sub->add_option("--c-epsilon", a.c_epsilon, "thresholds.c_epsilon");
  sub->add_option("--spectral-check-max-n", a.spectral_check_max_n, "spectral_check_max_n");
}

std::pair<int, int> parse_pair(const std::string& text, const std::string& field) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw SchemaError(field, "expected n:p, got '" + text + "'");
  }
}

ExperimentConfig build_config(const CLI::App& sub, const ExperimentArgs& a, const Common& c,
                              const std::string& kind) {
  json doc = json::object();
  if (!a.config_path.empty()) {
    try {
      doc = json::parse(read_text(a.config_path));
    } catch (const json::exception& e) {
      throw SchemaError("config", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("config", "expected an object");
  }
  if (!doc.contains("kind")) doc["kind"] = kind;
  if (doc["kind"] != kind && !(kind == "product_scaling" && doc["kind"] == "scaling"))
    throw SchemaError("kind", "config kind does not match the subcommand");
  if (sub.count("--id")) doc["id"] = a.id;
  if (!doc.contains("id")) doc["id"] = kind;
  if (sub.count("--n") || sub.count("--p") || sub.count("--adjusted")) {
    if (!doc.contains("model")) doc["model"] = json::object();
    if (sub.count("--n")) doc["model"]["n"] = a.n;
    if (sub.count("--p")) doc["model"]["p"] = a.p;
    if (sub.count("--adjusted")) doc["model"]["adjusted"] = a.adjusted;
  }
  if (sub.count("--disorder")) {
    json arr = json::array();
    for (const auto& d : a.disorders) {
      const auto colon = d.find(':');
      json e = {{"kind", d.substr(0, colon)}};
      if (colon != std::string::npos) {
        try {
          e["average_degree"] = std::stod(d.substr(colon + 1));
        } catch (const std::exception&) {
          throw SchemaError("disorders", "bad average degree in '" + d + "'");
        }
      }
      arr.push_back(std::move(e));
    }
    doc["disorders"] = std::move(arr);
  }
  if (sub.count("--sweep")) {
    json arr = json::array();
    for (const auto& s : a.sweep) {
      const auto [n, p] = parse_pair(s, "sweep");
      arr.push_back({{"n", n}, {"p", p}});
    }
    doc["sweep"] = std::move(arr);
  }
  if (sub.count("--samples")) doc["samples"] = a.samples;
  auto sub_object = [&](const char* key) -> json& {
    if (!doc.contains(key)) doc[key] = json::object();
    return doc[key];
  };
  if (sub.count("--restarts")) sub_object("optimizer")["restarts"] = a.restarts;
  if (sub.count("--max-sweeps")) sub_object("optimizer")["max_sweeps"] = a.max_sweeps;
  if (sub.count("--opt-tol")) sub_object("optimizer")["tol"] = a.opt_tol;
  if (sub.count("--epsilon")) sub_object("thresholds")["epsilon"] = a.epsilon;
  if (sub.count("--c-epsilon")) sub_object("thresholds")["c_epsilon"] = a.c_epsilon;
  if (sub.count("--spectral-check-max-n")) doc["spectral_check_max_n"] = a.spectral_check_max_n;
  if (sub.count("--seed")) doc["seed"] = c.seed;
  if (sub.count("--threads")) doc["threads"] = c.threads;
  ExperimentConfig cfg = config_from_json(doc);
  cfg.output_dir = resolve_out(sub, c, doc.contains("output_dir") ? cfg.output_dir : "").string();
  return cfg;
}

int run_experiment_command(const CLI::App& sub, const ExperimentArgs& a, const Common& c,
                           const std::string& kind) {
  const auto cfg = build_config(sub, a, c, kind);
  const auto report = run_experiment(cfg);
  write_artifacts(report, cfg.output_dir);
  if (!c.quiet) std::cout << report.summary_json()["summary"].dump(2) << "\n";
  return report.errors.empty() ? kExitOk : kExitFailure;
}

std::string g17(double v) { return format_double(v); }

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--help" || a == "-h") && std::string(argv[i + 1]) == "formats") {
      std::cout << kFormats;
      return kExitOk;
    }
  }

  CLI::App app{"spinlab: random p-local Pauli Hamiltonians, product states and verification tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  app.footer("Run 'spinlab --help formats' for output file formats.");

  Common common;
  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> fn) {
    sub->callback([&action, fn] { action = fn; });
  };

  // verify
  bool quick = false;
  auto* verify = app.add_subcommand("verify", "Run the identity self-check suite");
  verify->add_flag("--quick", quick, "Desk-scale sample counts");
  add_common(verify, common);
  on(verify, [&] {
    VerifyOptions o;
    o.quick = quick;
    if (verify->count("--seed")) o.seed = common.seed;
    o.threads = resolve_threads(common.threads);
    const auto results = run_verification_suite(o);
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.passed;
      if (!common.quiet) std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    }
    write_json(resolve_out(*verify, common, ""), "verify.json", to_json(results));
    return ok ? kExitOk : kExitFailure;
  });

  // sample
  ModelArgs model;
  bool binary = false;
  auto* sample = app.add_subcommand("sample", "Draw one disorder sample");
  add_model(sample, model);
  sample->add_flag("--binary", binary, "Also write sample.bin (dense samples only)");
  add_common(sample, common);
  on(sample, [&] {
    const auto s = sample_disorder(model.model(), model.spec(common.seed));
    const auto dir = resolve_out(*sample, common, "");
    write_json(dir, "sample.json", to_json(s));
    if (binary) write_text(dir / "sample.bin", to_binary(s));
    if (!common.quiet) std::cout << "terms " << s.entries.size() << "\n";
    return kExitOk;
  });

  // optimize
  ModelArgs opt_model;
  MultiStartOptions ms;
  auto* optimize = app.add_subcommand("optimize", "Multi-start coordinate ascent over product states");
  add_model(optimize, opt_model);
  optimize->add_option("--restarts", ms.restarts, "Random restarts")->capture_default_str();
  optimize->add_option("--max-sweeps", ms.optimizer.max_sweeps, "Sweeps per restart")->capture_default_str();
  optimize->add_option("--opt-tol", ms.optimizer.tol, "Per-sweep improvement threshold")->capture_default_str();
  add_common(optimize, common);
  on(optimize, [&] {
    const auto s = sample_disorder(opt_model.model(), opt_model.spec(common.seed));
    ms.seed = seed_mix({common.seed, 0x0b71u});
    ms.threads = resolve_threads(common.threads);
    const auto r = optimize_multistart(s, ms);
    json j;
    j["n"] = opt_model.n;
    j["p"] = opt_model.p;
    j["seed"] = common.seed;
    j["energy"] = r.best.energy;
    j["energy_over_sqrt_n"] = r.best.energy / std::sqrt(static_cast<double>(opt_model.n));
    j["best_restart"] = r.best_restart;
    j["sweeps"] = r.best.sweeps;
    j["converged"] = r.best.converged;
    json vecs = json::array();
    for (const auto& v : r.best.state.vectors()) vecs.push_back(v);
    j["bloch_vectors"] = std::move(vecs);
    j["initial_energies"] = r.initial_energies;
    j["final_energies"] = r.final_energies;
    write_json(resolve_out(*optimize, common, ""), "optimize.json", j);
    if (!common.quiet) std::cout << g17(r.best.energy) << "\n";
    return kExitOk;
  });

  // exact
  ModelArgs exact_model;
  std::vector<double> betas;
  bool spectrum = false;
  double lanczos_tol = 1e-9;
  auto* exact = app.add_subcommand("exact", "Largest eigenvalue of one disorder sample");
  add_model(exact, exact_model);
  exact->add_option("--beta", betas, "Inverse temperatures for log_partition (dense sizes only)");
  exact->add_flag("--spectrum", spectrum, "Write the full spectrum (dense sizes only)");
  exact->add_option("--tol", lanczos_tol, "Certified Lanczos residual")->capture_default_str();
  add_common(exact, common);
  on(exact, [&] {
    const auto s = sample_disorder(exact_model.model(), exact_model.spec(common.seed));
    LanczosOptions lo;
    lo.tol = lanczos_tol;
    lo.seed = seed_mix({common.seed, 0x1a2cu});
    const double lam = lambda_max(PauliSumOperator(s), lo);
    const double scaled = lam / std::sqrt(static_cast<double>(exact_model.n));
    json j;
    j["n"] = exact_model.n;
    j["p"] = exact_model.p;
    j["seed"] = common.seed;
    j["lambda_max"] = lam;
    j["lambda_max_over_sqrt_n"] = scaled;
    const auto dir = resolve_out(*exact, common, "");
    if (!betas.empty() || spectrum) {
      const auto spec = dense_spectrum(materialize_hamiltonian(s));
      json lp = json::array();
      for (double b : betas) lp.push_back({{"beta", b}, {"value", log_partition(std::span<const double>(spec), b)}});
      if (!betas.empty()) j["log_partition"] = std::move(lp);
      if (spectrum) write_text(dir / "spectrum.csv", spectrum_csv(spec));
    }
    write_json(dir, "exact.json", j);
    if (!common.quiet) std::cout << g17(scaled) << "\n";
    return kExitOk;
  });

  // matchings
  int d = 3;
  std::string method = "brute";
  auto* matchings = app.add_subcommand("matchings", "Trace sums over all perfect matchings");
  matchings->add_option("--d", d, "Number of pairs")->capture_default_str();
  matchings->add_option("--method", method, "brute | recursive")->capture_default_str();
  add_common(matchings, common, false);
  on(matchings, [&] {
    if (method != "brute" && method != "recursive") throw SchemaError("method", "expected brute or recursive");
    const bool rec = method == "recursive";
    CsvTable t({"matching", "trace_sum"});
    TraceSumCache cache;
    for (const auto& m : enumerate_matchings(d))
      t.row({m.to_string(), std::to_string(rec ? cache.evaluate(m) : trace_sum(m))});
    const auto avg = expected_trace_sum(d, rec ? TraceMethod::Recursive : TraceMethod::BruteForce);
    const auto dir = resolve_out(*matchings, common, "");
    fs::create_directories(dir);
    write_text(dir / "matchings.csv", t.str());
    json j = {{"d", d}, {"method", method}, {"total", avg.total}, {"count", avg.count},
              {"mean", avg.mean()}, {"equals_two_d_plus_one", avg.equals_two_d_plus_one()}};
    write_json(dir, "matchings.json", j);
    if (!common.quiet) std::cout << j.dump() << "\n";
    return avg.equals_two_d_plus_one() ? kExitOk : kExitFailure;
  });

  // gamma
  int gn = 40, gp = 2, gr = 20, bootstrap = 200;
  std::size_t gsamples = 10000;
  auto* gamma = app.add_subcommand("gamma", "Monte Carlo trace-sum ratio over random hypergraphs");
  gamma->add_option("--n", gn, "Qubits")->capture_default_str();
  gamma->add_option("--p", gp, "Locality")->capture_default_str();
  gamma->add_option("--r", gr, "Distinct tuples")->capture_default_str();
  gamma->add_option("--samples", gsamples, "Hypergraph samples")->capture_default_str();
  gamma->add_option("--bootstrap", bootstrap, "Bootstrap resamples")->capture_default_str();
  add_common(gamma, common);
  on(gamma, [&] {
    const auto e = estimate_gamma_ratio(gn, gp, gr, gsamples, common.seed, resolve_threads(common.threads), bootstrap);
    const json j = to_json(e);
    write_json(resolve_out(*gamma, common, ""), "gamma.json", j);
    if (!common.quiet) std::cout << j.dump(2) << "\n";
    return kExitOk;
  });

  // poisson
  int pn = 60, pp = 2, pr = 30;
  std::size_t psamples = 10000;
  auto* poisson = app.add_subcommand("poisson", "Degree distribution against Poisson(p r / n)");
  poisson->add_option("--n", pn, "Qubits")->capture_default_str();
  poisson->add_option("--p", pp, "Locality")->capture_default_str();
  poisson->add_option("--r", pr, "Distinct tuples")->capture_default_str();
  poisson->add_option("--samples", psamples, "Hypergraph samples")->capture_default_str();
  add_common(poisson, common);
  on(poisson, [&] {
    const auto c = poisson_degree_check(pn, pp, pr, psamples, common.seed, resolve_threads(common.threads));
    const auto dir = resolve_out(*poisson, common, "");
    write_json(dir, "poisson.json", to_json(c));
    CsvTable t({"k", "empirical", "poisson"});
    for (std::size_t k = 0; k < c.empirical_pmf.size(); ++k)
      t.row({std::to_string(k), g17(c.empirical_pmf[k]), g17(c.poisson_pmf[k])});
    write_text(dir / "poisson.csv", t.str());
    if (!common.quiet) std::cout << "tv_distance " << g17(c.tv_distance) << "\n";
    return kExitOk;
  });

  // gbound
  BoundConfig bc;
  auto* gbound = app.add_subcommand("gbound", "Minimize g(beta) = C/beta + beta gamma/2 + log(1 + p gamma beta^2)/beta");
  gbound->add_option("--p", bc.p, "p")->capture_default_str();
  gbound->add_option("--gamma", bc.gamma, "gamma (>= 1)")->capture_default_str();
  gbound->add_option("--C", bc.C, "C (> log 2)")->capture_default_str();
  gbound->add_option("--beta-min", bc.beta_min, "Grid start (0 = automatic)");
  gbound->add_option("--beta-max", bc.beta_max, "Grid end (0 = automatic)");
  gbound->add_option("--grid", bc.grid_points, "Grid points")->capture_default_str();
  add_common(gbound, common, false);
  on(gbound, [&] {
    const auto g = minimize_g(bc);
    const json j = to_json(g, bc);
    write_json(resolve_out(*gbound, common, ""), "gbound.json", j);
    if (!common.quiet) std::cout << j.dump(2) << "\n";
    return kExitOk;
  });

  // experiments
  ExperimentArgs univ_args, scaling_args, conc_args;
  auto* universality = app.add_subcommand("universality", "Compare lambda_max/sqrt(n) across disorder ensembles");
  add_experiment(universality, univ_args);
  add_common(universality, common);
  on(universality, [&] { return run_experiment_command(*universality, univ_args, common, "universality"); });
  auto* scaling = app.add_subcommand("scaling", "Optimized product-state energy over an (n, p) sweep");
  add_experiment(scaling, scaling_args);
  add_common(scaling, common);
  on(scaling, [&] { return run_experiment_command(*scaling, scaling_args, common, "product_scaling"); });
  auto* conc = app.add_subcommand("concentration", "Spread of the optimized product-state energy");
  add_experiment(conc, conc_args);
  add_common(conc, common);
  on(conc, [&] { return run_experiment_command(*conc, conc_args, common, "concentration"); });

  // run
  std::string manifest_path;
  bool fail_fast = false;
  auto* run = app.add_subcommand("run", "Run every experiment in a manifest");
  run->add_option("manifest", manifest_path, "Manifest JSON: array of configs or {\"experiments\": [...]}")->required();
  run->add_flag("--fail-fast", fail_fast, "Stop at the first failing experiment");
  add_common(run, common, false);
  on(run, [&] {
    json manifest;
    try {
      manifest = json::parse(read_text(manifest_path));
    } catch (const json::exception& e) {
      throw SchemaError("manifest", std::string("not valid JSON: ") + e.what());
    }
    RunAllOptions o;
    o.fail_fast = fail_fast;
    if (run->count("--out") || std::getenv("SPINLAB_OUT")) o.output_dir = resolve_out(*run, common, "");
    if (run->count("--threads")) o.threads = common.threads;
    const auto outcomes = run_all(manifest, o);
    json arr = json::array();
    bool ok = true;
    for (const auto& x : outcomes) {
      ok = ok && x.ok;
      json e = {{"id", x.id}, {"ok", x.ok}};
      if (!x.ok) e["error"] = x.error;
      arr.push_back(std::move(e));
      if (!common.quiet) std::cout << (x.ok ? "ok   " : "FAIL ") << x.id << (x.ok ? "" : ": " + x.error) << "\n";
    }
    if (o.output_dir) write_json(*o.output_dir, "run.json", arr);
    return ok ? kExitOk : kExitFailure;
  });

  // theta
  std::string graph_kind = "anticommutativity";
  int tn = 3, tp = 2, nodes = 5;
  std::string edges_path;
  ThetaOptions topt;
  auto* theta = app.add_subcommand("theta", "Lovasz theta with certified bracket");
  theta->add_option("--graph", graph_kind,
                    "anticommutativity | commutation | cycle | complete | empty | edges")
      ->capture_default_str();
  theta->add_option("--n", tn, "Qubits for Pauli graphs")->capture_default_str();
  theta->add_option("--p", tp, "Locality for Pauli graphs")->capture_default_str();
  theta->add_option("--nodes", nodes, "Node count for cycle, complete, empty, edges")->capture_default_str();
  theta->add_option("--edges", edges_path, "Edge-list CSV (header i,j) for --graph edges");
  theta->add_option("--tol", topt.tol, "Bracket tolerance")->capture_default_str();
  add_common(theta, common, false);
  on(theta, [&] {
    Graph g;
    if (graph_kind == "anticommutativity") g = build_anticommutativity_graph(tn, tp).graph;
    else if (graph_kind == "commutation") g = build_anticommutativity_graph(tn, tp).graph.complement();
    else if (graph_kind == "cycle") g = Graph::cycle(nodes);
    else if (graph_kind == "complete") g = Graph::complete(nodes);
    else if (graph_kind == "empty") g = Graph::empty(nodes);
    else if (graph_kind == "edges") {
      g = Graph(nodes);
      std::istringstream in(read_text(edges_path));
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw SchemaError("edges", "expected i,j, got '" + line + "'");
        const auto [i, j] = parse_pair(line.substr(0, comma) + ":" + line.substr(comma + 1), "edges");
        g.add_edge(i, j);
      }
    } else {
      throw SchemaError("graph", "unknown graph kind '" + graph_kind + "'");
    }
    const auto r = lovasz_theta(g, topt);
    json j = to_json(r);
    j["graph"] = {{"kind", graph_kind}, {"nodes", g.nodes()}, {"edges", g.edge_count()}};
    const auto dir = resolve_out(*theta, common, "");
    write_json(dir, "theta.json", j);
    write_text(dir / "graph.csv", g.edge_list_csv());
    if (!common.quiet) std::cout << g17(r.value) << " [" << g17(r.lower_bound) << ", " << g17(r.upper_bound) << "]\n";
    return kExitOk;
  });

  // net
  double eps = 0.05;
  bool count = false;
  ModelArgs net_model;
  double threshold = 1.0;
  auto* net = app.add_subcommand("net", "Hemisphere packing net and exceedance counts");
  net->add_option("--epsilon", eps, "Packing parameter in (0, 0.5]")->capture_default_str();
  net->add_flag("--count", count, "Count product states of the net above the threshold");
  add_model(net, net_model);
  net->add_option("--threshold", threshold, "Count states with sqrt(n) E >= threshold n")->capture_default_str();
  add_common(net, common);
  on(net, [&] {
    const auto pn = build_packing_net(eps);
    CsvTable t({"x", "y", "z"});
    for (const auto& v : pn.points) t.row({g17(v[0]), g17(v[1]), g17(v[2])});
    json j = {{"epsilon", eps}, {"size", pn.points.size()}, {"verified", verify_packing_net(pn)}};
    if (count) {
      const auto s = sample_disorder(net_model.model(), net_model.spec(common.seed));
      j["n"] = net_model.n;
      j["p"] = net_model.p;
      j["seed"] = common.seed;
      j["threshold"] = threshold;
      j["exceedances"] = count_net_exceedances(s, pn, threshold);
    }
    const auto dir = resolve_out(*net, common, "");
    fs::create_directories(dir);
    write_text(dir / "net.csv", t.str());
    write_json(dir, "net.json", j);
    if (!common.quiet) std::cout << j.dump() << "\n";
    return kExitOk;
  });

  // haar
  int hn = 4, hp = 2;
  std::size_t hsamples = 10000;
  auto* haar = app.add_subcommand("haar", "Mean state variance of Haar-random states");
  haar->add_option("--n", hn, "Qubits")->capture_default_str();
  haar->add_option("--p", hp, "Locality")->capture_default_str();
  haar->add_option("--samples", hsamples, "States")->capture_default_str();
  add_common(haar, common);
  on(haar, [&] {
    const auto r = haar_variance_check(hn, hp, hsamples, common.seed, resolve_threads(common.threads));
    json j = {{"n", r.n}, {"p", r.p}, {"samples", r.samples}, {"empirical_mean", r.empirical_mean},
              {"standard_error", r.standard_error}, {"target", r.target}};
    write_json(resolve_out(*haar, common, ""), "haar.json", j);
    if (!common.quiet) std::cout << j.dump() << "\n";
    return kExitOk;
  });

  auto* formats = app.add_subcommand("formats", "Describe every output file format");
  on(formats, [] {
    std::cout << kFormats;
    return kExitOk;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
