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
#include <optional>
#include <string>
#include <vector>

#include "disq/architecture.hpp"
#include "disq/circuit.hpp"
#include "disq/isolator.hpp"

namespace disq {

struct TranspiledSubcircuit {
    std::string qpu_id;
    Circuit circuit;  // physical qubit indices
    std::vector<Qubit> layout;             // virtual-local -> physical before the first instruction
    std::vector<Qubit> final_permutation;  // virtual-local -> physical after the last instruction
    std::vector<VirtualGateRecord> vg_records;
    std::vector<std::optional<Qubit>> local_to_global;  // virtual-local -> logical DQC qubit

    bool operator==(const TranspiledSubcircuit&) const = default;
};

/// Lowers one instruction onto the QPU's basis. Conditions are copied onto
/// every emitted gate; non-unitary instructions pass through.
std::vector<Instruction> lower_to_basis(const Instruction& ins, const QpuProfile& qpu);

/// Unitary-equivalent circuit using only the QPU's basis (up to global phase).
Circuit decompose_to_basis(const Circuit& c, const QpuProfile& qpu);

/// Shortest single-qubit sequence in the QPU's basis for u (up to phase).
std::vector<Instruction> synthesize_1q(const Mat2& u, Qubit q, const QpuProfile& qpu);

/// Best of a few candidate layouts by routed SWAP count: a compact BFS region,
/// a greedy placement by first interaction, and forward/backward routing
/// refinements of both.
std::vector<Qubit> initial_layout(const Circuit& c, const QpuProfile& qpu);

struct RoutedCircuit {
    Circuit circuit;
    std::vector<Qubit> final_permutation;
    std::size_t swaps = 0;
};

/// Inserts SWAPs along a shortest path, choosing the meeting point by a short
/// lookahead over the next interactions, so every two-qubit gate, and every VG that needs coupled
/// operands, acts on a coupled pair. SWAPs needed by a VG are placed before
/// its pinning barrier. Throws RoutingError on a disconnected coupling graph.
RoutedCircuit route_to_coupling(const Circuit& c, const QpuProfile& qpu, const std::vector<Qubit>& layout);

/// Level 0: no change. Level 1: single-qubit run merging plus adjacent
/// inverse cancellation, never across barriers, VGs, or conditioned gates.
Circuit optimize(const Circuit& c, const QpuProfile& qpu, int opt_level);

TranspiledSubcircuit transpile(const IsolatedSubcircuit& sub, const QpuProfile& qpu, int opt_level);

/// The isolated subcircuit with identity layout and no rewriting.
TranspiledSubcircuit passthrough(const IsolatedSubcircuit& sub);

Json transpiled_to_json(const TranspiledSubcircuit& t);
TranspiledSubcircuit transpiled_from_json(const Json& j);

}  // namespace disq
