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

"""Python interface to the spinlab native core."""

import json as _json

from . import _core
from ._core import (
    CapacityError,
    ConvergenceError,
    DimensionError,
    DomainError,
    Error,
    ParameterError,
    SchemaError,
    ValidationError,
    anticommutativity_edges,
    anticommutes,
    anticommuting_nine,
    covariance,
    expected_trace_sum,
    haar_state_variances,
    haar_variance,
    hamiltonian_matrix,
    lambda_max,
    optimize,
    pauli_matrix,
    pauli_product,
    product_energy,
    sample_coefficients,
    term_labels,
)

__version__ = _core.version()


def gamma_ratio(n, p, r, samples, seed=0, threads=1):
    return _json.loads(_core.gamma_ratio_json(n, p, r, samples, seed, threads))


def minimize_g(p, gamma=1.0, C=0.7):
    return _json.loads(_core.minimize_g_json(p, gamma, C))


def lovasz_theta(nodes, edges, tol=1e-3):
    return _json.loads(_core.lovasz_theta_json(nodes, list(edges), tol))


def run_experiment(config):
    """Runs one experiment config (dict). Returns (csv_text, summary)."""
    csv_text, summary = _core.run_experiment_json(_json.dumps(config))
    return csv_text, _json.loads(summary)


def verify(quick=True, seed=2026):
    return _json.loads(_core.verify_json(quick, seed))
