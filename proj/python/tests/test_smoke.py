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

import math

import pytest

import disqsim


def test_names():
    assert disqsim.benchmark_names() == ["qec-steane", "fulladder", "ghz", "tfim", "qaoa", "vqe"]
    assert disqsim.preset_names() == ["arch-a", "arch-b", "arch-c", "arch-d", "arch-e"]
    assert disqsim.golden("fulladder") == ("000000001111", 1.0)


def test_exact_ghz():
    r = disqsim.run("ghz-6", "arch-b", exact=True)
    assert r["mode"] == "exact"
    assert math.isclose(r["distribution"]["000000"], 0.5, abs_tol=1e-9)
    assert math.isclose(r["distribution"]["111111"], 0.5, abs_tol=1e-9)
    assert r["metrics"]["epr_pairs_consumed"] > 0


def test_qasm_text_matches_benchmark_name():
    qasm = disqsim.generate_qasm("ghz-4")
    a = disqsim.run(qasm=qasm, arch="arch-c", shots=300, seed=5)
    b = disqsim.run("ghz-4", "arch-c", shots=300, seed=5)
    assert a["distribution"] == b["distribution"]
    assert a["shots"] == 300


def test_stage_and_resume():
    art = disqsim.stage("ghz-4", "arch-b", "transpiled")
    assert art["stage"] == "transpiled"
    direct = disqsim.run("ghz-4", "arch-b", shots=200, seed=2)
    assert disqsim.resume(art, shots=200, seed=2) == direct


def test_errors():
    with pytest.raises(disqsim.CapacityError, match="stage dqc-logical"):
        disqsim.run("ghz-40", "arch-b", shots=10)
    with pytest.raises(disqsim.InputError):
        disqsim.run("ghz-4", "arch-z")
    with pytest.raises(disqsim.InputError, match="line 3"):
        disqsim.run(qasm='OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n', arch="arch-a")
    assert issubclass(disqsim.CapacityError, disqsim.Error)


def test_matrix():
    cells = disqsim.matrix(["ghz-4", "ghz-40"], ["arch-a"], [0.2], shots=100)
    assert [c["benchmark"] for c in cells] == ["ghz-4", "ghz-40"]
    assert cells[0]["error"] is None
    assert isinstance(cells[1]["error"], str)


def test_architecture():
    a = disqsim.architecture("arch-b")
    assert a["name"] == "arch-b"
    assert len(a["qpus"]) == 4
