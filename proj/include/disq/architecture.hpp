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
#include <utility>
#include <vector>

#include "disq/circuit.hpp"
#include "disq/circuit_io.hpp"
#include "disq/noise_profile.hpp"

namespace disq {

/// Which native gate family a QPU's basis set belongs to.
enum class BasisFamily { Superconducting, TrappedIon };

struct QpuProfile {
    std::string id;
    std::size_t num_qubits = 0;
    /// Undirected pairs, stored with first < second. Empty means all-to-all.
    std::vector<std::pair<Qubit, Qubit>> coupling_map;
    std::vector<GateKind> basis_gates;
    DeviceNoiseProfile noise;

    [[nodiscard]] bool all_to_all() const { return coupling_map.empty(); }
    [[nodiscard]] bool coupled(Qubit a, Qubit b) const;
    [[nodiscard]] bool in_basis(GateKind kind) const;
    [[nodiscard]] BasisFamily family() const;
    /// Adjacency lists, ascending; complete graph when all_to_all().
    [[nodiscard]] std::vector<std::vector<Qubit>> adjacency() const;

    bool operator==(const QpuProfile&) const = default;
};

struct NetworkEdge {
    std::string qpu_a;
    std::string qpu_b;
    double length_km = 0.0;

    bool operator==(const NetworkEdge&) const = default;
};

struct NetworkTopology {
    std::vector<NetworkEdge> edges;
    double alpha = 0.05;  // attenuation per km

    [[nodiscard]] const NetworkEdge* find(const std::string& a, const std::string& b) const;
    [[nodiscard]] std::vector<std::string> neighbors(const std::string& id) const;

    bool operator==(const NetworkTopology&) const = default;
};

struct PartitionMap {
    std::vector<std::size_t> partition;  // data qubit -> partition id
    std::vector<std::string> mapping;    // partition id -> qpu id

    [[nodiscard]] std::size_t num_partitions() const { return mapping.size(); }
    bool operator==(const PartitionMap&) const = default;
};

struct ArchitectureSpec {
    std::string name;
    std::vector<QpuProfile> qpus;
    NetworkTopology network;
    std::optional<PartitionMap> partition_map;

    [[nodiscard]] std::size_t qpu_index(const std::string& id) const;
    [[nodiscard]] const QpuProfile& qpu(const std::string& id) const { return qpus[qpu_index(id)]; }
    [[nodiscard]] std::size_t total_qubits() const;
    /// Offset of each QPU's first qubit in the global register (declaration order).
    [[nodiscard]] std::vector<std::size_t> qubit_offsets() const;

    bool operator==(const ArchitectureSpec&) const = default;
};

/// Loads a preset by name ("arch-a" .. "arch-e") or a config file path.
ArchitectureSpec load_architecture(const std::string& path_or_preset);
ArchitectureSpec preset_architecture(const std::string& name);
std::vector<std::string> preset_names();
/// True when the preset name is one of the shipped presets.
bool is_preset_name(const std::string& name);

/// The shipped preset file text, byte for byte.
std::string preset_text(const std::string& name);

ArchitectureSpec architecture_from_json(const Json& j);
Json architecture_to_json(const ArchitectureSpec& spec);
/// Canonical text form (two-space indented JSON, trailing newline).
std::string serialize_architecture(const ArchitectureSpec& spec);

/// Throws InputError on schema problems, unknown ids, or non-universal bases.
void validate_architecture(const ArchitectureSpec& spec);

/// Checks totality and mapping targets; capacity is checked by the constructor
/// once communication qubits are known.
void validate_partition(const PartitionMap& pm, const ArchitectureSpec& spec,
                        std::size_t num_data_qubits);

/// Contiguous block partition in qubit index order over QPUs in declaration
/// order, balanced across the networked QPUs.
PartitionMap default_partition(const Circuit& c, const ArchitectureSpec& spec);

/// Number of communication qubits default_partition reserves on each QPU.
std::vector<std::size_t> reserved_comm_qubits(const ArchitectureSpec& spec);

/// Copy with every link set to the given length.
ArchitectureSpec with_link_length(ArchitectureSpec spec, double length_km);
/// Copy with all device noise zeroed.
ArchitectureSpec with_zero_noise(ArchitectureSpec spec);

}  // namespace disq
