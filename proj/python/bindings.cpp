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

// Python extension module spinlab._core. Structured results cross the
// boundary as JSON text and are decoded by the Python package.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinlab/error.hpp"
#include "spinlab/experiments.hpp"
#include "spinlab/lovasz.hpp"
#include "spinlab/matchings.hpp"
#include "spinlab/model.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/product.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/verify.hpp"

namespace py = pybind11;
using namespace spinlab;

namespace {

DisorderSample make_sample(int n, int p, bool adjusted, const std::string& disorder,
                           double degree, std::uint64_t seed) {
  ModelConfig config{n, p, adjusted};
  DisorderSpec spec;
  spec.kind = disorder_kind_from_string(disorder);
  spec.average_degree = degree;
  spec.seed = seed;
  return sample_disorder(config, spec);
}

std::vector<std::array<double, 3>> bloch_list(const BlochProductState& s) {
  return {s.vectors().begin(), s.vectors().end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spinlab native core";

  // Translators run most recent first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def("version", [] { return std::string(version()); });

  m.def("pauli_product", [](const std::string& a, const std::string& b) {
    return (PhasedPauli::parse(a) * PhasedPauli::parse(b)).to_string();
  });
  m.def("anticommutes", [](const std::string& a, const std::string& b) {
    return anticommutes(PhasedPauli::parse(a), PhasedPauli::parse(b));
  });
  m.def("pauli_matrix", [](const std::string& word) {
    return materialize_word(PhasedPauli::parse(word)).matrix;
  });

  m.def(
      "sample_coefficients",
      [](int n, int p, std::uint64_t seed, const std::string& disorder, bool adjusted,
         double degree) { return make_sample(n, p, adjusted, disorder, degree, seed).dense_values(); },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("disorder") = "gaussian",
      py::arg("adjusted") = false, py::arg("degree") = 0.0);
  m.def(
      "term_labels",
      [](int n, int p, bool adjusted) {
        std::vector<std::string> out;
        for (const auto& t : enumerate_terms(ModelConfig{n, p, adjusted})) out.push_back(t.to_string());
        return out;
      },
      py::arg("n"), py::arg("p"), py::arg("adjusted") = false);
  m.def(
      "hamiltonian_matrix",
      [](int n, int p, std::uint64_t seed, const std::string& disorder, bool adjusted,
         double degree) {
        return materialize_hamiltonian(make_sample(n, p, adjusted, disorder, degree, seed)).matrix;
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("disorder") = "gaussian",
      py::arg("adjusted") = false, py::arg("degree") = 0.0);
  m.def(
      "lambda_max",
      [](int n, int p, std::uint64_t seed, const std::string& disorder, double degree) {
        const auto sample = make_sample(n, p, false, disorder, degree, seed);
        return lambda_max(PauliSumOperator(sample));
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("disorder") = "gaussian",
      py::arg("degree") = 0.0);
  m.def(
      "product_energy",
      [](int n, int p, std::uint64_t seed, std::vector<std::array<double, 3>> bloch) {
        const auto sample = make_sample(n, p, false, "gaussian", 0.0, seed);
        return product_energy(sample, BlochProductState::normalized(std::move(bloch)));
      },
      py::arg("n"), py::arg("p"), py::arg("seed"), py::arg("bloch"));
  m.def(
      "optimize",
      [](int n, int p, std::uint64_t seed, int restarts, const std::string& disorder,
         double degree) {
        const auto sample = make_sample(n, p, false, disorder, degree, seed);
        MultiStartOptions options;
        options.restarts = restarts;
        options.seed = seed;
        const auto r = optimize_multistart(sample, options);
        py::dict d;
        d["energy"] = r.best.energy;
        d["best_restart"] = r.best_restart;
        d["sweeps"] = r.best.sweeps;
        d["converged"] = r.best.converged;
        d["bloch"] = bloch_list(r.best.state);
        d["sweep_trace"] = r.best.sweep_trace;
        d["initial_energies"] = r.initial_energies;
        d["final_energies"] = r.final_energies;
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("restarts") = 8,
      py::arg("disorder") = "gaussian", py::arg("degree") = 0.0);

  m.def("covariance", [](int p, std::vector<double> profile) { return covariance(p, profile); });
  m.def(
      "expected_trace_sum",
      [](int d, const std::string& method) {
        const auto r = expected_trace_sum(d, method == "recursive" ? TraceMethod::Recursive
                                                                   : TraceMethod::BruteForce);
        return std::make_pair(r.total, r.count);
      },
      py::arg("d"), py::arg("method") = "brute");
  m.def(
      "gamma_ratio_json",
      [](int n, int p, int r, std::size_t samples, std::uint64_t seed, unsigned threads) {
        return to_json(estimate_gamma_ratio(n, p, r, samples, seed, threads)).dump();
      },
      py::arg("n"), py::arg("p"), py::arg("r"), py::arg("samples"), py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.def(
      "minimize_g_json",
      [](int p, double gamma, double C) {
        BoundConfig config;
        config.p = p;
        config.gamma = gamma;
        config.C = C;
        return to_json(minimize_g(config), config).dump();
      },
      py::arg("p"), py::arg("gamma") = 1.0, py::arg("C") = 0.7);

  m.def(
      "haar_variance",
      [](int n, int p, std::size_t samples, std::uint64_t seed) {
        const auto r = haar_variance_check(n, p, samples, seed);
        py::dict d;
        d["empirical_mean"] = r.empirical_mean;
        d["standard_error"] = r.standard_error;
        d["target"] = r.target;
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("samples"), py::arg("seed") = 0);
  m.def("haar_state_variances", [](int n, int p, std::uint64_t seed) {
    const auto state = haar_state(n, seed);
    return std::make_tuple(state_variance(state, ModelConfig{n, p, false}),
                           purity_variance(state, p), adjusted_variance(state, p));
  });

  m.def("anticommutativity_edges", [](int n, int p) {
    return build_anticommutativity_graph(n, p).graph.edges();
  });
  m.def(
      "lovasz_theta_json",
      [](int nodes, const std::vector<std::pair<int, int>>& edges, double tol) {
        Graph g(nodes);
        for (auto [i, j] : edges) g.add_edge(i, j);
        ThetaOptions options;
        options.tol = tol;
        return to_json(lovasz_theta(g, options)).dump();
      },
      py::arg("nodes"), py::arg("edges"), py::arg("tol") = 1e-3);
  m.def("anticommuting_nine", [](int n) {
    std::vector<std::string> out;
    for (const auto& w : anticommuting_nine(n)) out.push_back(w.to_string());
    return out;
  });

  m.def("run_experiment_json", [](const std::string& config_text) {
    const auto report = run_experiment(config_from_json(json::parse(config_text)));
    return std::make_pair(report.csv(), report.summary_json().dump());
  });
  m.def(
      "verify_json",
      [](bool quick, std::uint64_t seed) {
        VerifyOptions options;
        options.quick = quick;
        options.seed = seed;
        return to_json(run_verification_suite(options)).dump();
      },
      py::arg("quick") = true, py::arg("seed") = 2026);
}
