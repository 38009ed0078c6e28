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
#include <string_view>
#include <vector>

#include "disq/architecture.hpp"
#include "disq/circuit.hpp"
#include "disq/constructor.hpp"

namespace disq {

enum class VgCase { EprPair, TelegateMcPair, EsBellPair };
enum class VgSide { Left, Right, Repeater, EndpointA, EndpointB };

std::string_view vg_case_name(VgCase c);
std::string_view vg_side_name(VgSide s);
VgCase vg_case_from_name(std::string_view name);
VgSide vg_side_from_name(std::string_view name);

struct VirtualGateRecord {
    std::string sync_id;
    VgCase vg_case = VgCase::EprPair;
    VgSide side = VgSide::Left;
    std::vector<Qubit> local_qubits;   // VG operands, subcircuit-local
    std::vector<Qubit> logical_qubits; // same operands in the logical DQC numbering
    std::vector<Instruction> original_payload;  // logical DQC numbering

    bool operator==(const VirtualGateRecord&) const = default;
};

struct IsolatedSubcircuit {
    std::string qpu_id;
    Circuit circuit;  // one qubit per QPU qubit, global clbit numbering
    std::vector<VirtualGateRecord> vg_records;
    /// Local qubit -> logical DQC qubit, or nullopt when unused.
    std::vector<std::optional<Qubit>> local_to_global;

    bool operator==(const IsolatedSubcircuit&) const = default;
};

struct SyncSide {
    std::string qpu_id;
    VgSide side = VgSide::Left;

    bool operator==(const SyncSide&) const = default;
};

struct SyncEntry {
    std::string sync_id;
    VgCase vg_case = VgCase::EprPair;
    std::vector<SyncSide> sides;
    std::vector<Instruction> payload;  // logical DQC numbering

    bool operator==(const SyncEntry&) const = default;
};

/// Entries sorted by sync_id.
struct SyncTable {
    std::vector<SyncEntry> entries;

    [[nodiscard]] const SyncEntry* find(std::string_view sync_id) const;
    bool operator==(const SyncTable&) const = default;
};

struct IsolationResult {
    std::vector<IsolatedSubcircuit> subcircuits;
    SyncTable sync_table;
    std::size_t num_logical_qubits = 0;
    std::size_t num_data_qubits = 0;
    std::size_t num_clbits = 0;
    std::size_t num_output_clbits = 0;

    bool operator==(const IsolationResult&) const = default;
};

/// Tag carried by a VG instruction: "<sync_id>@<side>".
std::string vg_tag(std::string_view sync_id, VgSide side);
/// Splits a VG tag; nullopt when malformed.
std::optional<std::pair<std::string, VgSide>> parse_vg_tag(std::string_view tag);
/// Tag carried by barriers the isolator inserts in front of a VG.
std::string pin_tag(std::string_view sync_id);

/// True when the payload executed at this VG needs a two-qubit gate between
/// its operands, so routing must leave them coupled.
bool vg_needs_coupling(const Instruction& vg);

IsolationResult isolate(const DqcCircuit& dqc, const ArchitectureSpec& spec);

/// Structural checks on the VG records. Messages start with "dangling sync",
/// "unpinned VG", "empty payload", or "cross-QPU instruction".
std::vector<std::string> validate_isolation(const std::vector<IsolatedSubcircuit>& subs);

/// Adds the instruction-multiset comparison against the logical DQC circuit.
std::vector<std::string> validate_isolation(const IsolationResult& iso, const DqcCircuit& dqc);

Json isolation_to_json(const IsolationResult& iso);
IsolationResult isolation_from_json(const Json& j);
Json sync_table_to_json(const SyncTable& t);
SyncTable sync_table_from_json(const Json& j);

}  // namespace disq
