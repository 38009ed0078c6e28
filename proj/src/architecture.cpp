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

#include "disq/architecture.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <string>

#include "disq/constructor.hpp"
#include "disq/error.hpp"
#include "disq/presets_embedded.hpp"

namespace disq {

namespace {

bool contains(const std::vector<GateKind>& v, GateKind k) {
    return std::find(v.begin(), v.end(), k) != v.end();
}

bool has_all(const std::vector<GateKind>& basis, std::initializer_list<GateKind> need) {
    return std::all_of(need.begin(), need.end(), [&](GateKind k) { return contains(basis, k); });
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw InputError(where + ": unknown key \"" + it.key() + "\"");
    }
}

const Json& require(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing key \"" + std::string(key) + "\"");
    return *it;
}

double probability(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_number()) throw InputError(where + "." + key + ": expected a number");
    return v.get<double>();
}

std::size_t count(const Json& v, const std::string& where) {
    if (!v.is_number_unsigned()) throw InputError(where + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

QpuProfile qpu_from_json(const Json& j, std::size_t idx) {
    const std::string where = "qpus[" + std::to_string(idx) + "]";
    check_keys(j, {"id", "num_qubits", "coupling_map", "basis_gates", "noise"}, where);
    QpuProfile q;
    const Json& id = require(j, "id", where);
    if (!id.is_string()) throw InputError(where + ".id: expected a string");
    q.id = id.get<std::string>();
    q.num_qubits = count(require(j, "num_qubits", where), where + ".num_qubits");

    const Json& cm = require(j, "coupling_map", where);
    if (!cm.is_array()) throw InputError(where + ".coupling_map: expected an array");
    for (const Json& e : cm) {
        if (!e.is_array() || e.size() != 2) {
            throw InputError(where + ".coupling_map: each entry must be a pair");
        }
        Qubit a = static_cast<Qubit>(count(e[0], where + ".coupling_map"));
        Qubit b = static_cast<Qubit>(count(e[1], where + ".coupling_map"));
        if (a > b) std::swap(a, b);
        q.coupling_map.emplace_back(a, b);
    }

    const Json& bg = require(j, "basis_gates", where);
    if (!bg.is_array()) throw InputError(where + ".basis_gates: expected an array");
    for (const Json& g : bg) {
        if (!g.is_string()) throw InputError(where + ".basis_gates: expected gate names");
        const auto name = g.get<std::string>();
        auto kind = gate_from_name(name);
        if (!kind || !is_unitary(*kind)) {
            throw InputError(where + ": unknown basis gate \"" + name + "\"");
        }
        q.basis_gates.push_back(*kind);
    }

    const Json& nz = require(j, "noise", where);
    check_keys(nz, {"p1", "p2", "p_ro", "p_reset"}, where + ".noise");
    q.noise.p1 = probability(nz, "p1", where + ".noise");
    q.noise.p2 = probability(nz, "p2", where + ".noise");
    q.noise.p_ro = probability(nz, "p_ro", where + ".noise");
    q.noise.p_reset = nz.contains("p_reset") ? probability(nz, "p_reset", where + ".noise") : 0.0;
    return q;
}

Json qpu_to_json(const QpuProfile& q) {
    Json j;
    j["id"] = q.id;
    j["num_qubits"] = q.num_qubits;
    Json cm = Json::array();
    for (auto [a, b] : q.coupling_map) cm.push_back(Json::array({a, b}));
    j["coupling_map"] = cm;
    Json bg = Json::array();
    for (GateKind k : q.basis_gates) bg.push_back(std::string(gate_name(k)));
    j["basis_gates"] = bg;
    j["noise"] = Json{{"p1", q.noise.p1}, {"p2", q.noise.p2}, {"p_ro", q.noise.p_ro},
                      {"p_reset", q.noise.p_reset}};
    return j;
}

}  // namespace

bool QpuProfile::coupled(Qubit a, Qubit b) const {
    if (a == b || a >= num_qubits || b >= num_qubits) return false;
    if (all_to_all()) return true;
    if (a > b) std::swap(a, b);
    return std::find(coupling_map.begin(), coupling_map.end(), std::make_pair(a, b)) !=
           coupling_map.end();
}

bool QpuProfile::in_basis(GateKind kind) const { return contains(basis_gates, kind); }

BasisFamily QpuProfile::family() const {
    if (has_all(basis_gates, {GateKind::RZ, GateKind::SX, GateKind::CX})) {
        return BasisFamily::Superconducting;
    }
    if (has_all(basis_gates, {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RXX})) {
        return BasisFamily::TrappedIon;
    }
    throw InputError("QPU " + id + ": basis gates are not a supported universal set");
}

std::vector<std::vector<Qubit>> QpuProfile::adjacency() const {
    std::vector<std::vector<Qubit>> adj(num_qubits);
    if (all_to_all()) {
        for (Qubit a = 0; a < num_qubits; ++a) {
            for (Qubit b = 0; b < num_qubits; ++b) {
                if (a != b) adj[a].push_back(b);
            }
        }
        return adj;
    }
    for (auto [a, b] : coupling_map) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return adj;
}

const NetworkEdge* NetworkTopology::find(const std::string& a, const std::string& b) const {
    for (const auto& e : edges) {
        if ((e.qpu_a == a && e.qpu_b == b) || (e.qpu_a == b && e.qpu_b == a)) return &e;
    }
    return nullptr;
}

std::vector<std::string> NetworkTopology::neighbors(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& e : edges) {
        if (e.qpu_a == id) out.push_back(e.qpu_b);
        if (e.qpu_b == id) out.push_back(e.qpu_a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t ArchitectureSpec::qpu_index(const std::string& id) const {
    for (std::size_t i = 0; i < qpus.size(); ++i) {
        if (qpus[i].id == id) return i;
    }
    throw InputError("unknown QPU id \"" + id + "\"");
}

std::size_t ArchitectureSpec::total_qubits() const {
    std::size_t n = 0;
    for (const auto& q : qpus) n += q.num_qubits;
    return n;
}

std::vector<std::size_t> ArchitectureSpec::qubit_offsets() const {
    std::vector<std::size_t> off(qpus.size(), 0);
    for (std::size_t i = 1; i < qpus.size(); ++i) off[i] = off[i - 1] + qpus[i - 1].num_qubits;
    return off;
}

ArchitectureSpec architecture_from_json(const Json& j) {
    try {
        check_keys(j, {"name", "qpus", "network", "partition"}, "architecture");
        ArchitectureSpec spec;
        if (auto it = j.find("name"); it != j.end()) {
            if (!it->is_string()) throw InputError("architecture.name: expected a string");
            spec.name = it->get<std::string>();
        }
        const Json& qpus = require(j, "qpus", "architecture");
        if (!qpus.is_array()) throw InputError("architecture.qpus: expected an array");
        for (std::size_t i = 0; i < qpus.size(); ++i) spec.qpus.push_back(qpu_from_json(qpus[i], i));

        const Json& net = require(j, "network", "architecture");
        check_keys(net, {"alpha", "edges"}, "network");
        spec.network.alpha = probability(net, "alpha", "network");
        const Json& edges = require(net, "edges", "network");
        if (!edges.is_array()) throw InputError("network.edges: expected an array");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string where = "network.edges[" + std::to_string(i) + "]";
            check_keys(edges[i], {"qpu_a", "qpu_b", "length_km"}, where);
            NetworkEdge e;
            e.qpu_a = require(edges[i], "qpu_a", where).get<std::string>();
            e.qpu_b = require(edges[i], "qpu_b", where).get<std::string>();
            e.length_km = probability(edges[i], "length_km", where);
            spec.network.edges.push_back(std::move(e));
        }

        if (auto it = j.find("partition"); it != j.end() && !it->is_null()) {
            check_keys(*it, {"partition", "mapping"}, "partition");
            PartitionMap pm;
            for (const Json& p : require(*it, "partition", "partition")) {
                pm.partition.push_back(count(p, "partition.partition"));
            }
            for (const Json& m : require(*it, "mapping", "partition")) {
                pm.mapping.push_back(m.get<std::string>());
            }
            spec.partition_map = std::move(pm);
        }
        validate_architecture(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("architecture: ") + e.what());
    }
}

Json architecture_to_json(const ArchitectureSpec& spec) {
    Json j;
    j["name"] = spec.name;
    Json qpus = Json::array();
    for (const auto& q : spec.qpus) qpus.push_back(qpu_to_json(q));
    j["qpus"] = qpus;
    Json edges = Json::array();
    for (const auto& e : spec.network.edges) {
        edges.push_back(Json{{"qpu_a", e.qpu_a}, {"qpu_b", e.qpu_b}, {"length_km", e.length_km}});
    }
    j["network"] = Json{{"alpha", spec.network.alpha}, {"edges", edges}};
    if (spec.partition_map) {
        j["partition"] = Json{{"partition", spec.partition_map->partition},
                              {"mapping", spec.partition_map->mapping}};
    } else {
        j["partition"] = nullptr;
    }
    return j;
}

std::string serialize_architecture(const ArchitectureSpec& spec) {
    return architecture_to_json(spec).dump(2) + "\n";
}

void validate_architecture(const ArchitectureSpec& spec) {
    if (spec.qpus.empty()) throw InputError("architecture has no QPUs");
    std::set<std::string> ids;
    for (const auto& q : spec.qpus) {
        if (q.id.empty()) throw InputError("QPU id must be non-empty");
        if (!ids.insert(q.id).second) throw InputError("duplicate QPU id \"" + q.id + "\"");
        if (q.num_qubits == 0) throw InputError("QPU " + q.id + " has no qubits");
        for (auto [a, b] : q.coupling_map) {
            if (a == b) throw InputError("QPU " + q.id + ": coupling self-loop on qubit " + std::to_string(a));
            if (b >= q.num_qubits) {
                throw InputError("QPU " + q.id + ": coupling pair (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ") out of range");
            }
        }
        (void)q.family();
        for (double p : {q.noise.p1, q.noise.p2, q.noise.p_ro, q.noise.p_reset}) {
            if (!(p >= 0.0 && p <= 1.0)) throw InputError("QPU " + q.id + ": noise probability outside [0, 1]");
        }
    }
    if (!(spec.network.alpha >= 0.0) || !std::isfinite(spec.network.alpha)) {
        throw InputError("network alpha must be a non-negative number");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : spec.network.edges) {
        if (!ids.count(e.qpu_a) || !ids.count(e.qpu_b)) {
            throw InputError("network edge " + e.qpu_a + "-" + e.qpu_b + " names an unknown QPU");
        }
        if (e.qpu_a == e.qpu_b) throw InputError("network edge on " + e.qpu_a + " is a self-loop");
        if (!(e.length_km > 0.0) || !std::isfinite(e.length_km)) {
            throw InputError("network edge " + e.qpu_a + "-" + e.qpu_b + " needs a positive length");
        }
        auto key = std::minmax(e.qpu_a, e.qpu_b);
        if (!seen.emplace(key.first, key.second).second) {
            throw InputError("duplicate network edge " + e.qpu_a + "-" + e.qpu_b);
        }
    }
    if (spec.partition_map) {
        const auto& pm = *spec.partition_map;
        std::set<std::string> targets;
        for (const auto& m : pm.mapping) {
            if (!ids.count(m)) throw InputError("partition mapping targets unknown QPU \"" + m + "\"");
            if (!targets.insert(m).second) {
                throw InputError("partition mapping assigns two partitions to QPU " + m);
            }
        }
        for (std::size_t p : pm.partition) {
            if (p >= pm.mapping.size()) {
                throw InputError("partition id " + std::to_string(p) + " has no mapping entry");
            }
        }
    }
}

void validate_partition(const PartitionMap& pm, const ArchitectureSpec& spec, std::size_t num_data_qubits) {
    if (pm.partition.size() != num_data_qubits) {
        throw InputError("partition covers " + std::to_string(pm.partition.size()) +
                         " qubits, circuit has " + std::to_string(num_data_qubits));
    }
    ArchitectureSpec probe = spec;
    probe.partition_map = pm;
    validate_architecture(probe);
    std::vector<std::size_t> load(pm.mapping.size(), 0);
    for (std::size_t p : pm.partition) ++load[p];
    for (std::size_t p = 0; p < pm.mapping.size(); ++p) {
        const auto& q = spec.qpu(pm.mapping[p]);
        if (load[p] > q.num_qubits) {
            throw CapacityError("partition " + std::to_string(p) + " holds " + std::to_string(load[p]) +
                                " qubits but QPU " + q.id + " has " + std::to_string(q.num_qubits));
        }
    }
}

std::vector<std::size_t> reserved_comm_qubits(const ArchitectureSpec& spec) {
    std::vector<std::size_t> reserve(spec.qpus.size(), 0);
    if (spec.qpus.size() < 2) return reserve;
    for (std::size_t i = 0; i < spec.qpus.size(); ++i) {
        if (!spec.network.neighbors(spec.qpus[i].id).empty()) reserve[i] = 1;
    }
    // Any QPU that sits inside an optimal route may need a second qubit.
    for (std::size_t a = 0; a < spec.qpus.size(); ++a) {
        for (std::size_t b = a + 1; b < spec.qpus.size(); ++b) {
            if (reserve[a] == 0 || reserve[b] == 0) continue;
            EsPath path;
            try {
                path = route_es(spec.qpus[a].id, spec.qpus[b].id, spec.network);
            } catch (const RoutingError&) {
                continue;
            }
            for (std::size_t k = 1; k + 1 < path.qpus.size(); ++k) reserve[spec.qpu_index(path.qpus[k])] = 2;
        }
    }
    return reserve;
}

PartitionMap default_partition(const Circuit& c, const ArchitectureSpec& spec) {
    std::size_t n = 0;
    for (QubitRole r : c.qubit_roles()) n += r == QubitRole::Data ? 1 : 0;

    const auto reserve = reserved_comm_qubits(spec);
    std::vector<std::size_t> cap(spec.qpus.size(), 0);
    for (std::size_t i = 0; i < spec.qpus.size(); ++i) {
        const bool usable = spec.qpus.size() == 1 || reserve[i] > 0;
        if (usable && spec.qpus[i].num_qubits > reserve[i]) cap[i] = spec.qpus[i].num_qubits - reserve[i];
    }
    std::size_t total = 0;
    for (std::size_t v : cap) total += v;
    if (total < n) {
        throw CapacityError("circuit needs " + std::to_string(n) + " data qubits, architecture " +
                            spec.name + " offers " + std::to_string(total) + " after communication reserve");
    }

    // Lowest fill level that fits everything, then hand out the remainder in
    // declaration order.
    std::size_t level = 0;
    auto filled = [&](std::size_t l) {
        std::size_t s = 0;
        for (std::size_t v : cap) s += std::min(v, l);
        return s;
    };
    while (filled(level) < n) ++level;
    std::vector<std::size_t> share(cap.size(), 0);
    std::size_t given = 0;
    for (std::size_t i = 0; i < cap.size(); ++i) {
        share[i] = level == 0 ? 0 : std::min(cap[i], level - 1);
        given += share[i];
    }
    for (std::size_t i = 0; i < cap.size() && given < n; ++i) {
        if (cap[i] >= level && level > 0) {
            ++share[i];
            ++given;
        }
    }

    PartitionMap pm;
    pm.partition.reserve(n);
    for (std::size_t i = 0; i < cap.size(); ++i) {
        if (share[i] == 0) continue;
        const std::size_t pid = pm.mapping.size();
        pm.mapping.push_back(spec.qpus[i].id);
        for (std::size_t k = 0; k < share[i]; ++k) pm.partition.push_back(pid);
    }
    return pm;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, text] : presets::k_all) out.emplace_back(name);
    return out;
}

bool is_preset_name(const std::string& name) {
    for (const auto& [n, text] : presets::k_all) {
        if (n == name) return true;
    }
    return false;
}

std::string preset_text(const std::string& name) {
    for (const auto& [n, text] : presets::k_all) {
        if (n == name) return std::string(text);
    }
    throw InputError("unknown architecture preset \"" + name + "\"");
}

ArchitectureSpec preset_architecture(const std::string& name) {
    return architecture_from_json(parse_json_text(preset_text(name)));
}

ArchitectureSpec load_architecture(const std::string& path_or_preset) {
    if (is_preset_name(path_or_preset)) return preset_architecture(path_or_preset);
    if (!std::filesystem::exists(path_or_preset)) {
        throw InputError("architecture \"" + path_or_preset + "\" is neither a preset nor a file");
    }
    return architecture_from_json(parse_json_text(read_text_file(path_or_preset)));
}

ArchitectureSpec with_link_length(ArchitectureSpec spec, double length_km) {
    if (!(length_km > 0.0)) throw InputError("link length must be positive");
    for (auto& e : spec.network.edges) e.length_km = length_km;
    return spec;
}

ArchitectureSpec with_zero_noise(ArchitectureSpec spec) {
    for (auto& q : spec.qpus) q.noise = DeviceNoiseProfile{};
    return spec;
}

}  // namespace disq
