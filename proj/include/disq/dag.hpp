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

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "disq/circuit.hpp"

namespace disq {

/// Dependency graph over instruction indices. Two instructions are ordered
/// when they share a qubit, or when one writes a clbit the other reads or
/// writes.
struct DependencyDag {
    std::size_t num_nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (producer, consumer), sorted
    std::vector<std::vector<std::size_t>> successors;
    std::vector<std::vector<std::size_t>> predecessors;

    void add_edge(std::size_t from, std::size_t to);
    void finalize();
};

/// Total order over DAG nodes.
struct ExecutionTrace {
    std::vector<std::size_t> order;

    bool operator==(const ExecutionTrace&) const = default;
};

DependencyDag build_dag(const Circuit& c);

/// Kahn-style layer-by-layer BFS. Each layer holds the nodes whose last
/// predecessor was released by the previous layer, sorted by index.
/// Throws CycleError naming one cycle when the graph is not acyclic.
ExecutionTrace topological_order(const DependencyDag& dag);

}  // namespace disq
