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

#include "disq/dag.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "disq/error.hpp"

namespace disq {

void DependencyDag::add_edge(std::size_t from, std::size_t to) {
    if (from == to) return;
    edges.emplace_back(from, to);
}

void DependencyDag::finalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    successors.assign(num_nodes, {});
    predecessors.assign(num_nodes, {});
    for (auto [u, v] : edges) {
        successors[u].push_back(v);
        predecessors[v].push_back(u);
    }
}

DependencyDag build_dag(const Circuit& c) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    DependencyDag dag;
    dag.num_nodes = c.size();

    std::vector<std::size_t> last_on_qubit(c.num_qubits(), none);
    std::vector<std::size_t> last_writer(c.num_clbits(), none);
    std::vector<std::vector<std::size_t>> readers_since_write(c.num_clbits());

    for (std::size_t i = 0; i < c.size(); ++i) {
        const Instruction& ins = c[i];
        for (Qubit q : ins.qubits) {
            if (last_on_qubit[q] != none) dag.add_edge(last_on_qubit[q], i);
            last_on_qubit[q] = i;
        }
        if (ins.condition) {
            const Clbit b = ins.condition->clbit;
            if (last_writer[b] != none) dag.add_edge(last_writer[b], i);
            readers_since_write[b].push_back(i);
        }
        for (Clbit b : ins.clbits) {
            if (last_writer[b] != none) dag.add_edge(last_writer[b], i);
            for (std::size_t r : readers_since_write[b]) dag.add_edge(r, i);
            readers_since_write[b].clear();
            last_writer[b] = i;
        }
    }
    dag.finalize();
    return dag;
}

namespace {

std::vector<std::size_t> find_cycle(const DependencyDag& dag, const std::vector<bool>& done) {
    // Every unfinished node lies on or downstream of a cycle; walk predecessors
    // among unfinished nodes until a node repeats.
    std::size_t start = 0;
    while (start < dag.num_nodes && done[start]) ++start;
    std::vector<std::size_t> path;
    std::vector<std::size_t> pos(dag.num_nodes, std::numeric_limits<std::size_t>::max());
    std::size_t v = start;
    while (pos[v] == std::numeric_limits<std::size_t>::max()) {
        pos[v] = path.size();
        path.push_back(v);
        std::size_t next = v;
        for (std::size_t p : dag.predecessors[v]) {
            if (!done[p]) {
                next = p;
                break;
            }
        }
        if (next == v) return path;  // every node left undone has an undone predecessor
        v = next;
    }
    std::vector<std::size_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(pos[v]), path.end());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

ExecutionTrace topological_order(const DependencyDag& dag) {
    std::vector<std::size_t> indegree(dag.num_nodes, 0);
    for (auto [u, v] : dag.edges) {
        (void)u;
        ++indegree[v];
    }
    ExecutionTrace trace;
    trace.order.reserve(dag.num_nodes);
    std::vector<std::size_t> layer;
    for (std::size_t v = 0; v < dag.num_nodes; ++v) {
        if (indegree[v] == 0) layer.push_back(v);
    }
    std::vector<bool> done(dag.num_nodes, false);
    while (!layer.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t u : layer) {
            trace.order.push_back(u);
            done[u] = true;
            for (std::size_t v : dag.successors[u]) {
                if (--indegree[v] == 0) next.push_back(v);
            }
        }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }
    if (trace.order.size() != dag.num_nodes) {
        auto cycle = find_cycle(dag, done);
        std::string msg = "dependency cycle:";
        for (std::size_t v : cycle) msg += " " + std::to_string(v);
        throw CycleError(msg, std::move(cycle));
    }
    return trace;
}

}  // namespace disq
