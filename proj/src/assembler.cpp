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

#include "disq/assembler.hpp"

#include <algorithm>
#include <map>

#include "disq/constructor.hpp"
#include "disq/error.hpp"

namespace disq {

std::optional<std::string> sync_id_of(const Instruction& ins) {
    if (ins.tag && sync_tag::parse(*ins.tag)) return *ins.tag;
    return std::nullopt;
}

bool is_epr_preparation(const Instruction& ins) {
    if (!ins.tag) return false;
    const auto p = sync_tag::parse(*ins.tag);
    return p && p->kind == sync_tag::Kind::Epr;
}

AssembledCircuit assemble(const std::vector<TranspiledSubcircuit>& subs, const SyncTable& table,
                          const ArchitectureSpec& spec, std::size_t num_data_qubits, std::size_t num_clbits,
                          std::size_t num_output_clbits) {
    AssembledCircuit a;
    a.num_data_qubits = num_data_qubits;
    a.num_output_clbits = num_output_clbits;
    a.qubit_offsets = spec.qubit_offsets();
    for (const auto& q : spec.qpus) a.qpu_ids.push_back(q.id);
    const std::size_t total = spec.total_qubits();
    for (std::size_t i = 0; i < spec.qpus.size(); ++i) {
        for (std::size_t k = 0; k < spec.qpus[i].num_qubits; ++k) a.qpu_of_qubit.push_back(i);
    }
    Circuit out(total, num_clbits);

    struct Cursor {
        const TranspiledSubcircuit* sub;
        std::size_t qpu;
        std::size_t offset;
        std::size_t pos = 0;
        std::size_t record = 0;
    };
    std::vector<Cursor> cursors;
    for (const auto& s : subs) {
        const std::size_t qi = spec.qpu_index(s.qpu_id);
        if (s.circuit.num_qubits() != spec.qpus[qi].num_qubits) {
            throw InternalError("subcircuit for " + s.qpu_id + " has the wrong width");
        }
        cursors.push_back({&s, qi, a.qubit_offsets[qi]});
        // Roles follow the initial placement of each local qubit.
        for (Qubit v = 0; v < s.local_to_global.size(); ++v) {
            if (!s.local_to_global[v] || *s.local_to_global[v] < num_data_qubits) continue;
            out.set_role(static_cast<Qubit>(a.qubit_offsets[qi] + s.layout.at(v)), QubitRole::Communication);
        }
    }

    auto at_vg = [](const Cursor& c) {
        return c.pos < c.sub->circuit.size() && c.sub->circuit[c.pos].kind == GateKind::VirtualGate;
    };
    auto blocked_on = [](const Cursor& c) -> std::string {
        const auto& tag = c.sub->circuit[c.pos].tag;
        const auto parsed = tag ? parse_vg_tag(*tag) : std::nullopt;
        if (!parsed) throw InternalError("virtual gate on " + c.sub->qpu_id + " lacks a sync tag");
        return parsed->first;
    };

    while (true) {
        bool live = false;
        for (auto& c : cursors) {
            const auto& ins = c.sub->circuit.instructions();
            while (c.pos < ins.size() && ins[c.pos].kind != GateKind::VirtualGate) {
                Instruction g = ins[c.pos++];
                for (auto& q : g.qubits) q = static_cast<Qubit>(c.offset + q);
                out.append(std::move(g));
            }
            live = live || c.pos < ins.size();
        }
        if (!live) break;

        std::map<std::string, std::vector<std::size_t>> waiting;
        for (std::size_t i = 0; i < cursors.size(); ++i) {
            if (at_vg(cursors[i])) waiting[blocked_on(cursors[i])].push_back(i);
        }
        std::vector<std::string> ready;
        for (const auto& [id, who] : waiting) {
            const SyncEntry* e = table.find(id);
            if (!e) throw InternalError("sync id " + id + " missing from the sync table");
            if (who.size() == e->sides.size()) ready.push_back(id);
        }
        if (ready.empty()) {
            std::vector<std::string> blocked;
            for (const auto& [id, who] : waiting) blocked.push_back(id);
            std::string msg = "assembler deadlock; blocked on";
            for (const auto& id : blocked) msg += " " + id;
            throw DeadlockError(msg, blocked);
        }
        for (const auto& id : ready) {
            const SyncEntry& e = *table.find(id);
            std::map<Qubit, Qubit> to_global;  // logical -> global
            std::map<Qubit, std::size_t> qpu_of;
            for (std::size_t ci : waiting[id]) {
                Cursor& c = cursors[ci];
                const Instruction& vg = c.sub->circuit[c.pos];
                if (c.record >= c.sub->vg_records.size()) {
                    throw InternalError("subcircuit " + c.sub->qpu_id + " ran out of VG records");
                }
                const auto& rec = c.sub->vg_records[c.record];
                if (rec.sync_id != id || rec.logical_qubits.size() != vg.qubits.size()) {
                    throw InternalError("VG record mismatch at " + id + " on " + c.sub->qpu_id);
                }
                for (std::size_t k = 0; k < vg.qubits.size(); ++k) {
                    to_global[rec.logical_qubits[k]] = static_cast<Qubit>(c.offset + vg.qubits[k]);
                    qpu_of[rec.logical_qubits[k]] = c.qpu;
                }
            }
            const bool link = e.vg_case == VgCase::EprPair;
            for (const auto& p : e.payload) {
                Instruction g = p;
                std::size_t qpu = SIZE_MAX;
                for (auto& q : g.qubits) {
                    auto it = to_global.find(q);
                    if (it == to_global.end()) {
                        throw InternalError("payload of " + id + " touches qubit " + std::to_string(q) +
                                            " outside its virtual gates");
                    }
                    if (!link && qpu != SIZE_MAX && qpu != qpu_of[q]) {
                        throw InternalError("payload gate of " + id + " spans QPUs");
                    }
                    qpu = qpu_of[q];
                    q = it->second;
                }
                g.tag = id;
                if (link) {
                    out.append(std::move(g));
                    continue;
                }
                const QpuProfile& profile = spec.qpus[qpu];
                if (g.is_two_qubit_unitary()) {
                    const Qubit p0 = static_cast<Qubit>(g.qubits[0] - a.qubit_offsets[qpu]);
                    const Qubit p1 = static_cast<Qubit>(g.qubits[1] - a.qubit_offsets[qpu]);
                    if (!profile.coupled(p0, p1)) {
                        throw InternalError("payload gate of " + id + " lands on uncoupled qubits of " + profile.id);
                    }
                }
                // Lower on local indices so synthesis sees the device numbering.
                Instruction local = g;
                for (auto& q : local.qubits) q = static_cast<Qubit>(q - a.qubit_offsets[qpu]);
                for (auto& l : lower_to_basis(local, profile)) {
                    for (auto& q : l.qubits) q = static_cast<Qubit>(q + a.qubit_offsets[qpu]);
                    out.append(std::move(l));
                }
            }
            for (std::size_t ci : waiting[id]) {
                ++cursors[ci].pos;
                ++cursors[ci].record;
            }
        }
    }
    a.circuit = std::move(out);
    a.trace = topological_order(build_dag(a.circuit));
    return a;
}

std::vector<TraceEntry> derive_trace(AssembledCircuit& a) {
    a.trace = topological_order(build_dag(a.circuit));
    std::vector<TraceEntry> out;
    out.reserve(a.trace.order.size());
    for (std::size_t idx : a.trace.order) {
        const auto& ins = a.circuit[idx];
        TraceEntry e;
        e.index = idx;
        e.kind = ins.kind;
        e.qubits = ins.qubits;
        e.sync_id = sync_id_of(ins);
        e.qpu = is_epr_preparation(ins) ? "link" : a.qpu_ids.at(a.qpu_of_qubit.at(ins.qubits.front()));
        out.push_back(std::move(e));
    }
    return out;
}

std::string trace_to_jsonl(const std::vector<TraceEntry>& trace) {
    std::string out;
    for (const auto& e : trace) {
        Json j{{"index", e.index},
               {"qpu", e.qpu},
               {"kind", gate_name(e.kind)},
               {"qubits", e.qubits},
               {"sync_id", e.sync_id ? Json(*e.sync_id) : Json(nullptr)}};
        out += j.dump() + "\n";
    }
    return out;
}

Json assembled_to_json(const AssembledCircuit& a) {
    return Json{{"circuit", circuit_to_json(a.circuit)},
                {"qpu_ids", a.qpu_ids},
                {"qubit_offsets", a.qubit_offsets},
                {"qpu_of_qubit", a.qpu_of_qubit},
                {"num_data_qubits", a.num_data_qubits},
                {"num_output_clbits", a.num_output_clbits},
                {"trace", a.trace.order}};
}

AssembledCircuit assembled_from_json(const Json& j) {
    try {
        AssembledCircuit a;
        a.circuit = circuit_from_json(j.at("circuit"));
        a.qpu_ids = j.at("qpu_ids").get<std::vector<std::string>>();
        a.qubit_offsets = j.at("qubit_offsets").get<std::vector<std::size_t>>();
        a.qpu_of_qubit = j.at("qpu_of_qubit").get<std::vector<std::size_t>>();
        a.num_data_qubits = j.at("num_data_qubits").get<std::size_t>();
        a.num_output_clbits = j.at("num_output_clbits").get<std::size_t>();
        a.trace.order = j.at("trace").get<std::vector<std::size_t>>();
        if (a.qpu_of_qubit.size() != a.circuit.num_qubits()) throw InputError("assembled circuit: qpu map size");
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("assembled circuit: ") + e.what());
    }
}

}  // namespace disq
