# Copyright 2026 The spinlab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import spinlab


def test_pauli_algebra():
    assert spinlab.pauli_product("X", "Y") == "+iZ"
    assert spinlab.anticommutes("XI", "ZZ")
    assert not spinlab.anticommutes("XX", "ZZ")
    m = spinlab.pauli_matrix("Y")
    assert np.allclose(m, [[0, -1j], [1j, 0]])


def test_hamiltonian_is_hermitian_and_matches_lambda_max():
    h = spinlab.hamiltonian_matrix(5, 2, seed=3)
    assert h.shape == (32, 32)
    assert np.allclose(h, h.conj().T)
    top = np.linalg.eigvalsh(h)[-1]
    assert spinlab.lambda_max(5, 2, seed=3) == pytest.approx(top, abs=1e-8)


def test_coefficients_are_seeded():
    a = spinlab.sample_coefficients(6, 2, seed=9)
    b = spinlab.sample_coefficients(6, 2, seed=9)
    assert a == b
    assert len(a) == 9 * 15 == len(spinlab.term_labels(6, 2))


def test_optimizer_energy_is_product_energy():
    r = spinlab.optimize(6, 2, seed=4, restarts=3)
    assert r["converged"]
    assert spinlab.product_energy(6, 2, 4, r["bloch"]) == pytest.approx(r["energy"], abs=1e-12)
    assert r["energy"] <= spinlab.lambda_max(6, 2, seed=4) + 1e-9


def test_trace_sums_and_covariance():
    total, count = spinlab.expected_trace_sum(2)
    assert count == 3 and total > 0
    assert spinlab.expected_trace_sum(4, "recursive") == spinlab.expected_trace_sum(4)
    assert spinlab.covariance(2, [1.0, 1.0, 1.0]) == pytest.approx(1.0)


def test_lovasz_on_five_cycle():
    r = spinlab.lovasz_theta(5, [(i, (i + 1) % 5) for i in range(5)])
    assert r["lower_bound"] == pytest.approx(math.sqrt(5), abs=1e-3)
    assert len(spinlab.anticommutativity_edges(3, 2)) > 0


def test_bound_minimizer_beats_witness():
    g = spinlab.minimize_g(10**6, 1.0, 1.0)
    assert g["g_min"] <= g["bound_value"] + 1e-12


def test_experiment_round_trip():
    config = {"id": "py", "kind": "concentration", "model": {"n": 4, "p": 2}, "samples": 100, "seed": 1}
    csv_a, summary = spinlab.run_experiment(config)
    csv_b, _ = spinlab.run_experiment(config)
    assert csv_a == csv_b
    assert csv_a.count("\n") == 101
    assert summary["config_hash"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        spinlab.sample_coefficients(4, 9)
    with pytest.raises(spinlab.SchemaError):
        spinlab.run_experiment({"id": "x", "kind": "concentration", "samples": 5})


def test_quick_verification_passes():
    report = spinlab.verify(quick=True)
    assert report["passed"]
    assert all(check["passed"] for check in report["checks"])
