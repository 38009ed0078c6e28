# Copyright 2026 The disqsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the disqsim distributed quantum circuit pipeline.

Reports and stage artifacts come back as plain dicts with the same layout
as the JSON written by the ``disqsim`` command-line tool.
"""

import json

from . import _core
from ._core import CapacityError, Error, InputError, InternalError

__all__ = [
    "CapacityError",
    "Error",
    "InputError",
    "InternalError",
    "STAGES",
    "architecture",
    "benchmark_names",
    "generate_qasm",
    "golden",
    "matrix",
    "preset_names",
    "resume",
    "run",
    "stage",
]

STAGES = ("dqc-logical", "isolated", "transpiled", "assembled", "trace", "noisespec")

benchmark_names = _core.benchmark_names
preset_names = _core.preset_names
generate_qasm = _core.generate_qasm
golden = _core.golden


def architecture(arch):
    """Validated architecture (preset name or JSON file) as a dict."""
    return json.loads(_core.architecture_json(arch))


def run(circuit=None, arch="arch-b", *, qasm=None, exact=False, shots=10000, seed=1, kappa=1.0,
        distance_km=None, opt_level=1, noise_free=False, metric="bhattacharyya"):
    """Compiles and simulates a benchmark name, circuit file, or QASM text."""
    _need_circuit(circuit, qasm)
    return json.loads(_core.run(circuit or "", qasm or "", arch, exact, shots, seed, kappa, distance_km,
                                opt_level, noise_free, metric))


def stage(circuit=None, arch="arch-b", stage="noisespec", *, qasm=None, kappa=1.0, distance_km=None,
          opt_level=1, noise_free=False):
    """Runs the pipeline up to ``stage`` and returns the artifact."""
    _need_circuit(circuit, qasm)
    return json.loads(_core.stage(circuit or "", qasm or "", arch, stage, kappa, distance_km, opt_level,
                                  noise_free))


def resume(artifact, *, exact=False, shots=10000, seed=1, metric="bhattacharyya"):
    """Finishes a run from an artifact returned by :func:`stage`."""
    text = artifact if isinstance(artifact, str) else json.dumps(artifact)
    return json.loads(_core.resume(text, exact, shots, seed, metric))


def matrix(benchmarks, archs, distances, *, exact=False, shots=10000, seed=1, kappa=1.0, opt_level=1,
           noise_free=False, metric="bhattacharyya", threads=0):
    """Evaluates every (benchmark, arch, distance) cell; failed cells carry an error string."""
    return json.loads(_core.matrix(list(benchmarks), list(archs), [float(d) for d in distances], exact, shots,
                                   seed, kappa, opt_level, noise_free, metric, threads))["cells"]


def _need_circuit(circuit, qasm):
    if (circuit is None) == (qasm is None):
        raise InputError("give exactly one of circuit or qasm")
