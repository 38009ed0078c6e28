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
#include <map>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "disq/architecture.hpp"
#include "disq/circuit.hpp"
#include "disq/circuit_io.hpp"

namespace disq {

/// A multi-qubit gate whose operands live in different partitions.
struct RemoteGate {
    std::size_t instruction = 0;
    std::size_t control_partition = 0;
    std::size_t target_partition = 0;

    bool operator==(const RemoteGate&) const = default;
};

/// Entanglement-swapping route between two QPUs, endpoints included.
struct EsPath {
    std::vector<std::string> qpus;
    double total_length_km = 0.0;

    [[nodiscard]] std::size_t hops() const { return qpus.empty() ? 0 : qpus.size() - 1; }
    [[nodiscard]] std::size_t repeaters() const { return qpus.size() < 2 ? 0 : qpus.size() - 2; }

    bool operator==(const EsPath&) const = default;
};

enum class CommRole { Endpoint, RepeaterLeft, RepeaterRight };

struct CommQubit {
    std::size_t local_index = 0;  // num_qubits - 1 - slot on the owning QPU
    std::vector<CommRole> roles;

    bool operator==(const CommQubit&) const = default;
};

struct CommAllocation {
    std::map<std::string, std::vector<CommQubit>> per_qpu;

    [[nodiscard]] std::size_t count(const std::string& qpu) const;
    [[nodiscard]] std::size_t total() const;

    bool operator==(const CommAllocation&) const = default;
};

struct RoutedRemoteCx {
    Qubit control = 0;
    Qubit target = 0;
    EsPath path;
    std::string sync_prefix;  // e.g. "rg0003"
};

/// Logical DQC circuit: data qubits keep their monolithic indices, followed by
/// communication qubits in QPU declaration order.
struct DqcCircuit {
    Circuit circuit;
    std::size_t num_data_qubits = 0;
    std::size_t num_output_clbits = 0;
    std::vector<std::size_t> qpu_of_qubit;  // index into ArchitectureSpec::qpus
    std::vector<std::size_t> local_index;   // qubit index on its QPU
    PartitionMap partition_map;
    CommAllocation allocation;
    std::vector<RoutedRemoteCx> remote_cnots;

    /// Raw EPR pairs prepared: the sum of path hops over remote CNOTs.
    [[nodiscard]] std::size_t epr_pairs() const;
    [[nodiscard]] std::size_t telegates() const { return remote_cnots.size(); }
};

std::vector<RemoteGate> identify_remote_gates(const Circuit& c, const PartitionMap& pm);

/// Rewrites remote non-CX gates into CX plus local single-qubit gates.
Circuit decompose_to_remote_cnots(const Circuit& c, const std::vector<RemoteGate>& remote);

/// Minimum (hops, length, id sequence) simple path found by exhaustive DFS.
/// Throws RoutingError when the QPUs are not connected.
EsPath route_es(const std::string& from, const std::string& to, const NetworkTopology& network);

/// One communication qubit per endpoint role, two on any repeater, reused
/// across remote gates. Throws CapacityError if a QPU overflows.
CommAllocation allocate_comm_qubits(const std::vector<EsPath>& paths, const ArchitectureSpec& spec,
                                    const PartitionMap& pm);

/// Replaces each remote CX by EPR preparations, entanglement swaps, and a
/// TeleGate. Every inserted instruction carries a sync tag.
DqcCircuit place_es_and_telegate(const Circuit& decomposed, const ArchitectureSpec& spec,
                                 const PartitionMap& pm, const std::vector<EsPath>& paths,
                                 const CommAllocation& alloc);

/// Runs the five constructor steps end to end.
DqcCircuit construct(const Circuit& c, const ArchitectureSpec& spec, const PartitionMap& pm);

Json dqc_to_json(const DqcCircuit& d);
DqcCircuit dqc_from_json(const Json& j);

/// Sync-tag helpers shared with the isolator and assembler.
namespace sync_tag {
std::string epr(std::size_t remote_index, std::size_t link);
std::string es(std::size_t remote_index, std::size_t repeater);
std::string telegate(std::size_t remote_index);
std::string telegate_local(std::size_t remote_index);

enum class Kind { Epr, Es, TeleGate };
struct Parsed {
    Kind kind;
    std::size_t remote_index;
    std::size_t index;  // link or repeater number; 0 for TeleGate
};
/// Recognizes the three sync tag forms; anything else (".local" included) is not a sync tag.
std::optional<Parsed> parse(std::string_view tag);
}  // namespace sync_tag

}  // namespace disq
