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
#include "disq/dag.hpp"
#include "disq/isolator.hpp"
#include "disq/transpiler.hpp"

namespace disq {

/// Executable distributed circuit over the union of all QPU qubits.
struct AssembledCircuit {
    Circuit circuit;
    std::vector<std::string> qpu_ids;        // declaration order
    std::vector<std::size_t> qubit_offsets;  // first global qubit of each QPU
    std::vector<std::size_t> qpu_of_qubit;   // global qubit -> index into qpu_ids
    std::size_t num_data_qubits = 0;
    std::size_t num_output_clbits = 0;  // clbits [0, n) carry the data measurements
    ExecutionTrace trace;

    bool operator==(const AssembledCircuit&) const = default;
};

struct TraceEntry {
    std::size_t index = 0;  // instruction index in AssembledCircuit::circuit
    std::string qpu;        // owning QPU id, or "link" for EPR preparation
    GateKind kind = GateKind::Barrier;
    std::vector<Qubit> qubits;
    std::optional<std::string> sync_id;
};

/// Multi-cursor merge. Sync points whose sides are all blocked are resolved
/// in ascending sync_id order. Throws DeadlockError when no progress is possible.
AssembledCircuit assemble(const std::vector<TranspiledSubcircuit>& subs, const SyncTable& table,
                          const ArchitectureSpec& spec, std::size_t num_data_qubits, std::size_t num_clbits,
                          std::size_t num_output_clbits);

/// Recomputes a.trace from the dependency DAG and returns it annotated.
std::vector<TraceEntry> derive_trace(AssembledCircuit& a);

/// Sync id of an assembled instruction, if it came from a sync payload.
std::optional<std::string> sync_id_of(const Instruction& ins);
/// True for the H and CX that prepare a raw EPR pair.
bool is_epr_preparation(const Instruction& ins);

/// One JSON object per line: {index, qpu, kind, qubits, sync_id}.
std::string trace_to_jsonl(const std::vector<TraceEntry>& trace);

Json assembled_to_json(const AssembledCircuit& a);
AssembledCircuit assembled_from_json(const Json& j);

}  // namespace disq
