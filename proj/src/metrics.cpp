// Copyright 2026 The disqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disq/metrics.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "disq/dag.hpp"

namespace disq {

CircuitMetrics circuit_metrics(const Circuit& c) {
    CircuitMetrics m;
    for (QubitRole r : c.qubit_roles()) {
        if (r == QubitRole::Data) ++m.qubits;
    }

    // Longest path over the dependency DAG; instruction order is a valid
    // linearization so one forward sweep suffices.
    const DependencyDag dag = build_dag(c);
    std::vector<std::size_t> level(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::size_t before = 0;
        for (std::size_t p : dag.predecessors[i]) before = std::max(before, level[p]);
        const bool weighted = c[i].kind != GateKind::Barrier && c[i].kind != GateKind::VirtualGate;
        level[i] = before + (weighted ? 1 : 0);
        m.depth = std::max(m.depth, level[i]);
    }

    std::set<std::pair<Qubit, Qubit>> pairs;
    for (const auto& ins : c) {
        if (!ins.is_two_qubit_unitary()) continue;
        ++m.two_qubit_count;
        Qubit a = ins.qubits[0], b = ins.qubits[1];
        if (c.role(a) != QubitRole::Data || c.role(b) != QubitRole::Data) continue;
        if (a > b) std::swap(a, b);
        pairs.emplace(a, b);
    }
    if (m.qubits >= 2) {
        const double n = static_cast<double>(m.qubits);
        m.igd = static_cast<double>(pairs.size()) / (n * (n - 1) / 2);
    }
    return m;
}

}  // namespace disq
