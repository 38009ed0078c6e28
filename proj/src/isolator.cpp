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

#include "disq/isolator.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "disq/error.hpp"

namespace disq {

namespace {

constexpr std::array<std::string_view, 3> k_case_names = {"epr_pair", "telegate_mc_pair", "es_bell_pair"};
constexpr std::array<std::string_view, 5> k_side_names = {"left", "right", "repeater", "endpoint_a", "endpoint_b"};

std::size_t expected_sides(VgCase c) { return c == VgCase::EsBellPair ? 3 : 2; }

}  // namespace

std::string_view vg_case_name(VgCase c) { return k_case_names[static_cast<std::size_t>(c)]; }
std::string_view vg_side_name(VgSide s) { return k_side_names[static_cast<std::size_t>(s)]; }

VgCase vg_case_from_name(std::string_view name) {
    for (std::size_t i = 0; i < k_case_names.size(); ++i) {
        if (k_case_names[i] == name) return static_cast<VgCase>(i);
    }
    throw InputError("unknown virtual gate case \"" + std::string(name) + "\"");
}

VgSide vg_side_from_name(std::string_view name) {
    for (std::size_t i = 0; i < k_side_names.size(); ++i) {
        if (k_side_names[i] == name) return static_cast<VgSide>(i);
    }
    throw InputError("unknown virtual gate side \"" + std::string(name) + "\"");
}

const SyncEntry* SyncTable::find(std::string_view sync_id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), sync_id,
                               [](const SyncEntry& e, std::string_view id) { return e.sync_id < id; });
    return it != entries.end() && it->sync_id == sync_id ? &*it : nullptr;
}

std::string vg_tag(std::string_view sync_id, VgSide side) {
    return std::string(sync_id) + "@" + std::string(vg_side_name(side));
}

std::optional<std::pair<std::string, VgSide>> parse_vg_tag(std::string_view tag) {
    const auto at = tag.rfind('@');
    if (at == std::string_view::npos) return std::nullopt;
    for (std::size_t i = 0; i < k_side_names.size(); ++i) {
        if (tag.substr(at + 1) == k_side_names[i]) {
            return std::make_pair(std::string(tag.substr(0, at)), static_cast<VgSide>(i));
        }
    }
    return std::nullopt;
}

std::string pin_tag(std::string_view sync_id) { return "pin." + std::string(sync_id); }

bool vg_needs_coupling(const Instruction& vg) {
    if (vg.kind != GateKind::VirtualGate || vg.qubits.size() != 2 || !vg.tag) return false;
    const auto parsed = parse_vg_tag(*vg.tag);
    return parsed && (parsed->second == VgSide::Repeater || parsed->second == VgSide::EndpointB);
}

IsolationResult isolate(const DqcCircuit& dqc, const ArchitectureSpec& spec) {
    const Circuit& c = dqc.circuit;
    IsolationResult out;
    out.num_logical_qubits = c.num_qubits();
    out.num_data_qubits = dqc.num_data_qubits;
    out.num_clbits = c.num_clbits();
    out.num_output_clbits = dqc.num_output_clbits;

    std::vector<bool> used(spec.qpus.size(), false);
    for (std::size_t q : dqc.qpu_of_qubit) used[q] = true;
    std::vector<std::size_t> sub_of(spec.qpus.size(), SIZE_MAX);
    for (std::size_t i = 0; i < spec.qpus.size(); ++i) {
        if (!used[i]) continue;
        sub_of[i] = out.subcircuits.size();
        IsolatedSubcircuit s;
        s.qpu_id = spec.qpus[i].id;
        s.circuit = Circuit(spec.qpus[i].num_qubits, c.num_clbits());
        s.local_to_global.assign(spec.qpus[i].num_qubits, std::nullopt);
        out.subcircuits.push_back(std::move(s));
    }
    for (Qubit q = 0; q < c.num_qubits(); ++q) {
        auto& s = out.subcircuits[sub_of[dqc.qpu_of_qubit[q]]];
        const std::size_t local = dqc.local_index[q];
        if (local >= s.local_to_global.size() || s.local_to_global[local]) {
            throw InternalError("qubit " + std::to_string(q) + " has an invalid local index on QPU " + s.qpu_id);
        }
        s.local_to_global[local] = q;
        s.circuit.set_role(static_cast<Qubit>(local), c.role(q));
    }
    auto sub_for = [&](Qubit q) -> IsolatedSubcircuit& { return out.subcircuits[sub_of[dqc.qpu_of_qubit[q]]]; };
    auto local = [&](Qubit q) { return static_cast<Qubit>(dqc.local_index[q]); };

    std::map<std::size_t, Qubit> endpoint_a;  // remote index -> e_a
    std::set<std::string> seen;

    auto emit_vg = [&](const std::string& sync_id, VgCase vg_case, VgSide side, std::vector<Qubit> logical,
                       const std::vector<Instruction>& payload, SyncEntry& entry) {
        auto& s = sub_for(logical.front());
        for (Qubit q : logical) {
            if (&sub_for(q) != &s) throw InternalError("virtual gate for " + sync_id + " spans QPUs");
        }
        VirtualGateRecord rec;
        rec.sync_id = sync_id;
        rec.vg_case = vg_case;
        rec.side = side;
        rec.logical_qubits = logical;
        for (Qubit q : logical) rec.local_qubits.push_back(local(q));
        rec.original_payload = payload;
        Instruction barrier = make_barrier(rec.local_qubits);
        barrier.tag = pin_tag(sync_id);
        s.circuit.append(std::move(barrier));
        Instruction vg;
        vg.kind = GateKind::VirtualGate;
        vg.qubits = rec.local_qubits;
        vg.tag = vg_tag(sync_id, side);
        s.circuit.append(std::move(vg));
        s.vg_records.push_back(std::move(rec));
        entry.sides.push_back({s.qpu_id, side});
    };

    for (std::size_t i = 0; i < c.size();) {
        const auto& ins = c[i];
        const auto parsed = ins.tag ? sync_tag::parse(*ins.tag) : std::nullopt;
        if (!parsed) {
            auto& s = sub_for(ins.qubits.front());
            Instruction copy = ins;
            for (auto& q : copy.qubits) {
                if (&sub_for(q) != &s) {
                    throw InternalError("instruction " + std::to_string(i) + " (" + std::string(gate_name(ins.kind)) +
                                        ") spans QPUs without a sync tag");
                }
                q = local(q);
            }
            s.circuit.append(std::move(copy));
            ++i;
            continue;
        }
        const std::string sync_id = *ins.tag;
        if (!seen.insert(sync_id).second) throw InternalError("sync tag " + sync_id + " appears in two groups");
        std::size_t j = i;
        std::vector<Instruction> payload;
        while (j < c.size() && c[j].tag == ins.tag) payload.push_back(c[j++]);

        SyncEntry entry;
        entry.sync_id = sync_id;
        entry.payload = payload;
        auto bad = [&]() { return InternalError("sync group " + sync_id + " does not match its template"); };
        switch (parsed->kind) {
            case sync_tag::Kind::Epr: {
                if (payload.size() != 2 || payload[1].kind != GateKind::CX) throw bad();
                const Qubit x = payload[1].qubits[0], y = payload[1].qubits[1];
                if (parsed->index == 0) endpoint_a[parsed->remote_index] = x;
                entry.vg_case = VgCase::EprPair;
                emit_vg(sync_id, VgCase::EprPair, VgSide::Left, {x}, payload, entry);
                emit_vg(sync_id, VgCase::EprPair, VgSide::Right, {y}, payload, entry);
                break;
            }
            case sync_tag::Kind::Es: {
                if (payload.size() != 8 || payload[0].kind != GateKind::CX || !payload[4].condition) throw bad();
                auto ea = endpoint_a.find(parsed->remote_index);
                if (ea == endpoint_a.end()) throw bad();
                const Qubit rl = payload[0].qubits[0], rr = payload[0].qubits[1];
                const Qubit eb = payload[4].qubits[0];
                entry.vg_case = VgCase::EsBellPair;
                emit_vg(sync_id, VgCase::EsBellPair, VgSide::EndpointA, {ea->second}, payload, entry);
                emit_vg(sync_id, VgCase::EsBellPair, VgSide::Repeater, {rl, rr}, payload, entry);
                emit_vg(sync_id, VgCase::EsBellPair, VgSide::EndpointB, {eb}, payload, entry);
                break;
            }
            case sync_tag::Kind::TeleGate: {
                if (payload.size() != 8 || payload[2].kind != GateKind::CX || !payload[5].condition) throw bad();
                const Qubit ea = payload[0].qubits[0], eb = payload[1].qubits[0];
                const Qubit t = payload[2].qubits[1], ctl = payload[5].qubits[0];
                entry.vg_case = VgCase::TelegateMcPair;
                emit_vg(sync_id, VgCase::TelegateMcPair, VgSide::EndpointA, {ea, ctl}, payload, entry);
                emit_vg(sync_id, VgCase::TelegateMcPair, VgSide::EndpointB, {eb, t}, payload, entry);
                break;
            }
        }
        std::set<std::string> qpus;
        for (const auto& side : entry.sides) qpus.insert(side.qpu_id);
        if (qpus.size() != entry.sides.size()) throw InternalError("sync group " + sync_id + " repeats a QPU");
        out.sync_table.entries.push_back(std::move(entry));
        i = j;
    }
    std::sort(out.sync_table.entries.begin(), out.sync_table.entries.end(),
              [](const SyncEntry& a, const SyncEntry& b) { return a.sync_id < b.sync_id; });
    return out;
}

std::vector<std::string> validate_isolation(const std::vector<IsolatedSubcircuit>& subs) {
    std::vector<std::string> v;
    std::map<std::string, std::pair<VgCase, std::size_t>> multiplicity;
    for (const auto& s : subs) {
        std::size_t rec = 0;
        const auto& ins = s.circuit.instructions();
        for (std::size_t i = 0; i < ins.size(); ++i) {
            if (ins[i].kind != GateKind::VirtualGate) continue;
            const std::string where = "QPU " + s.qpu_id + " instruction " + std::to_string(i);
            bool pinned = false;
            if (i > 0 && ins[i - 1].kind == GateKind::Barrier) {
                pinned = std::all_of(ins[i].qubits.begin(), ins[i].qubits.end(),
                                     [&](Qubit q) { return ins[i - 1].touches(q); });
            }
            if (!pinned) v.push_back("unpinned VG: " + where);
            if (rec >= s.vg_records.size()) {
                v.push_back("dangling sync: " + where + " has no record");
                continue;
            }
            const auto& r = s.vg_records[rec++];
            if (r.original_payload.empty()) v.push_back("empty payload: " + r.sync_id);
            if (r.local_qubits != ins[i].qubits) v.push_back("dangling sync: " + where + " operands differ from record");
            auto [it, fresh] = multiplicity.emplace(r.sync_id, std::make_pair(r.vg_case, 0));
            ++it->second.second;
        }
        if (rec != s.vg_records.size()) v.push_back("dangling sync: QPU " + s.qpu_id + " has records without VGs");
    }
    for (const auto& [id, info] : multiplicity) {
        const std::size_t want = expected_sides(info.first);
        if (info.second != want) {
            v.push_back("dangling sync: " + id + " (" + std::string(vg_case_name(info.first)) + ") on " +
                        std::to_string(info.second) + " subcircuit(s), expected " + std::to_string(want));
        }
    }
    return v;
}

std::vector<std::string> validate_isolation(const IsolationResult& iso, const DqcCircuit& dqc) {
    auto v = validate_isolation(iso.subcircuits);
    std::multiset<std::string> expected, actual;
    for (const auto& ins : dqc.circuit) {
        if (ins.tag && sync_tag::parse(*ins.tag)) continue;
        expected.insert(instruction_to_json(ins).dump());
    }
    for (const auto& s : iso.subcircuits) {
        for (const auto& ins : s.circuit) {
            if (ins.kind == GateKind::VirtualGate) continue;
            if (ins.kind == GateKind::Barrier && ins.tag && ins.tag->rfind("pin.", 0) == 0) continue;
            Instruction g = ins;
            bool ok = true;
            for (auto& q : g.qubits) {
                if (q >= s.local_to_global.size() || !s.local_to_global[q]) {
                    ok = false;
                    break;
                }
                q = *s.local_to_global[q];
            }
            if (!ok) {
                v.push_back("cross-QPU instruction: QPU " + s.qpu_id + " uses an unmapped qubit");
                continue;
            }
            actual.insert(instruction_to_json(g).dump());
        }
    }
    if (expected != actual) v.push_back("local instruction multiset differs from the logical circuit");
    return v;
}

namespace {

Json instructions_to_json(const std::vector<Instruction>& v) {
    Json a = Json::array();
    for (const auto& ins : v) a.push_back(instruction_to_json(ins));
    return a;
}

std::vector<Instruction> instructions_from_json(const Json& j) {
    std::vector<Instruction> v;
    for (const auto& e : j) v.push_back(instruction_from_json(e));
    return v;
}

}  // namespace

Json sync_table_to_json(const SyncTable& t) {
    Json a = Json::array();
    for (const auto& e : t.entries) {
        Json sides = Json::array();
        for (const auto& s : e.sides) sides.push_back(Json{{"qpu", s.qpu_id}, {"side", vg_side_name(s.side)}});
        a.push_back(Json{{"sync_id", e.sync_id},
                         {"case", vg_case_name(e.vg_case)},
                         {"sides", sides},
                         {"payload", instructions_to_json(e.payload)}});
    }
    return a;
}

SyncTable sync_table_from_json(const Json& j) {
    SyncTable t;
    for (const auto& e : j) {
        SyncEntry s;
        s.sync_id = e.at("sync_id").get<std::string>();
        s.vg_case = vg_case_from_name(e.at("case").get<std::string>());
        for (const auto& side : e.at("sides")) {
            s.sides.push_back({side.at("qpu").get<std::string>(), vg_side_from_name(side.at("side").get<std::string>())});
        }
        s.payload = instructions_from_json(e.at("payload"));
        t.entries.push_back(std::move(s));
    }
    return t;
}

Json isolation_to_json(const IsolationResult& iso) {
    Json subs = Json::array();
    for (const auto& s : iso.subcircuits) {
        Json l2g = Json::array();
        for (const auto& q : s.local_to_global) l2g.push_back(q ? Json(*q) : Json(nullptr));
        Json recs = Json::array();
        for (const auto& r : s.vg_records) {
            recs.push_back(Json{{"sync_id", r.sync_id},
                                {"case", vg_case_name(r.vg_case)},
                                {"side", vg_side_name(r.side)},
                                {"local_qubits", r.local_qubits},
                                {"logical_qubits", r.logical_qubits},
                                {"payload", instructions_to_json(r.original_payload)}});
        }
        subs.push_back(Json{{"qpu_id", s.qpu_id},
                            {"circuit", circuit_to_json(s.circuit)},
                            {"local_to_global", l2g},
                            {"vg_records", recs}});
    }
    return Json{{"num_logical_qubits", iso.num_logical_qubits},
                {"num_data_qubits", iso.num_data_qubits},
                {"num_clbits", iso.num_clbits},
                {"num_output_clbits", iso.num_output_clbits},
                {"subcircuits", subs},
                {"sync_table", sync_table_to_json(iso.sync_table)}};
}

IsolationResult isolation_from_json(const Json& j) {
    try {
        IsolationResult iso;
        iso.num_logical_qubits = j.at("num_logical_qubits").get<std::size_t>();
        iso.num_data_qubits = j.at("num_data_qubits").get<std::size_t>();
        iso.num_clbits = j.at("num_clbits").get<std::size_t>();
        iso.num_output_clbits = j.at("num_output_clbits").get<std::size_t>();
        for (const auto& sj : j.at("subcircuits")) {
            IsolatedSubcircuit s;
            s.qpu_id = sj.at("qpu_id").get<std::string>();
            s.circuit = circuit_from_json(sj.at("circuit"));
            for (const auto& q : sj.at("local_to_global")) {
                s.local_to_global.push_back(q.is_null() ? std::nullopt : std::optional<Qubit>(q.get<Qubit>()));
            }
            for (const auto& rj : sj.at("vg_records")) {
                VirtualGateRecord r;
                r.sync_id = rj.at("sync_id").get<std::string>();
                r.vg_case = vg_case_from_name(rj.at("case").get<std::string>());
                r.side = vg_side_from_name(rj.at("side").get<std::string>());
                r.local_qubits = rj.at("local_qubits").get<std::vector<Qubit>>();
                r.logical_qubits = rj.at("logical_qubits").get<std::vector<Qubit>>();
                r.original_payload = instructions_from_json(rj.at("payload"));
                s.vg_records.push_back(std::move(r));
            }
            iso.subcircuits.push_back(std::move(s));
        }
        iso.sync_table = sync_table_from_json(j.at("sync_table"));
        return iso;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("isolated bundle: ") + e.what());
    }
}

}  // namespace disq
