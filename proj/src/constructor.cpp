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

#include "disq/constructor.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <tuple>

#include "disq/error.hpp"

namespace disq {

namespace sync_tag {

namespace {
std::string fmt(const char* pattern, std::size_t a, std::size_t b = 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

bool read_digits(std::string_view s, std::size_t& pos, std::size_t min_len, std::size_t& out) {
    std::size_t start = pos;
    out = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        out = out * 10 + static_cast<std::size_t>(s[pos] - '0');
        ++pos;
    }
    return pos - start >= min_len;
}
}  // namespace

std::string epr(std::size_t remote_index, std::size_t link) {
    return fmt("rg%04zu.epr%02zu", remote_index, link);
}
std::string es(std::size_t remote_index, std::size_t repeater) {
    return fmt("rg%04zu.es%02zu", remote_index, repeater);
}
std::string telegate(std::size_t remote_index) { return fmt("rg%04zu.tg", remote_index); }
std::string telegate_local(std::size_t remote_index) { return telegate(remote_index) + ".local"; }

std::optional<Parsed> parse(std::string_view tag) {
    if (tag.substr(0, 2) != "rg") return std::nullopt;
    std::size_t pos = 2;
    Parsed p{Kind::Epr, 0, 0};
    if (!read_digits(tag, pos, 4, p.remote_index)) return std::nullopt;
    if (pos >= tag.size() || tag[pos] != '.') return std::nullopt;
    const std::string_view rest = tag.substr(pos + 1);
    if (rest == "tg") {
        p.kind = Kind::TeleGate;
        return p;
    }
    std::size_t skip = 0;
    if (rest.substr(0, 3) == "epr") {
        p.kind = Kind::Epr;
        skip = 3;
    } else if (rest.substr(0, 2) == "es") {
        p.kind = Kind::Es;
        skip = 2;
    } else {
        return std::nullopt;
    }
    std::size_t q = skip;
    if (!read_digits(rest, q, 2, p.index) || q != rest.size()) return std::nullopt;
    return p;
}

}  // namespace sync_tag

std::size_t CommAllocation::count(const std::string& qpu) const {
    auto it = per_qpu.find(qpu);
    return it == per_qpu.end() ? 0 : it->second.size();
}

std::size_t CommAllocation::total() const {
    std::size_t n = 0;
    for (const auto& [id, v] : per_qpu) n += v.size();
    return n;
}

std::size_t DqcCircuit::epr_pairs() const {
    std::size_t n = 0;
    for (const auto& r : remote_cnots) n += r.path.hops();
    return n;
}

std::vector<RemoteGate> identify_remote_gates(const Circuit& c, const PartitionMap& pm) {
    std::vector<RemoteGate> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& ins = c[i];
        if (!ins.is_two_qubit_unitary()) continue;
        const std::size_t pa = pm.partition.at(ins.qubits[0]);
        const std::size_t pb = pm.partition.at(ins.qubits[1]);
        if (pa != pb) out.push_back({i, pa, pb});
    }
    return out;
}

Circuit decompose_to_remote_cnots(const Circuit& c, const std::vector<RemoteGate>& remote) {
    std::set<std::size_t> idx;
    for (const auto& r : remote) idx.insert(r.instruction);
    Circuit out(c.num_qubits(), c.num_clbits());
    for (Qubit q = 0; q < c.num_qubits(); ++q) out.set_role(q, c.role(q));
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& ins = c[i];
        if (!idx.count(i)) {
            out.append(ins);
            continue;
        }
        if (ins.condition) throw InputError("classically conditioned remote gates are not supported");
        const Qubit a = ins.qubits[0], b = ins.qubits[1];
        switch (ins.kind) {
            case GateKind::CX:
                out.append(make_gate(GateKind::CX, {a, b}));
                break;
            case GateKind::CZ:
                out.append(make_gate(GateKind::H, {b}));
                out.append(make_gate(GateKind::CX, {a, b}));
                out.append(make_gate(GateKind::H, {b}));
                break;
            case GateKind::SWAP:
                out.append(make_gate(GateKind::CX, {a, b}));
                out.append(make_gate(GateKind::CX, {b, a}));
                out.append(make_gate(GateKind::CX, {a, b}));
                break;
            case GateKind::RZZ:
                out.append(make_gate(GateKind::CX, {a, b}));
                out.append(make_gate(GateKind::RZ, {b}, {ins.params[0]}));
                out.append(make_gate(GateKind::CX, {a, b}));
                break;
            case GateKind::RXX:
                out.append(make_gate(GateKind::H, {a}));
                out.append(make_gate(GateKind::H, {b}));
                out.append(make_gate(GateKind::CX, {a, b}));
                out.append(make_gate(GateKind::RZ, {b}, {ins.params[0]}));
                out.append(make_gate(GateKind::CX, {a, b}));
                out.append(make_gate(GateKind::H, {a}));
                out.append(make_gate(GateKind::H, {b}));
                break;
            default:
                throw InputError("remote gate " + std::string(gate_name(ins.kind)) + " cannot be decomposed");
        }
    }
    return out;
}

namespace {

struct RouteSearch {
    const NetworkTopology& net;
    std::string target;
    std::vector<std::string> stack;
    std::set<std::string> on_stack;
    double length = 0.0;
    bool found = false;
    EsPath best;

    bool better(std::size_t hops, double len, const std::vector<std::string>& seq) const {
        if (!found) return true;
        const std::size_t best_hops = best.hops();
        return std::tie(hops, len, seq) < std::tie(best_hops, best.total_length_km, best.qpus);
    }

    void dfs(const std::string& at) {
        if (at == target) {
            if (better(stack.size() - 1, length, stack)) {
                best.qpus = stack;
                best.total_length_km = length;
                found = true;
            }
            return;
        }
        // Paths longer than the best in hops cannot win.
        if (found && stack.size() - 1 >= best.hops()) return;
        for (const auto& next : net.neighbors(at)) {
            if (on_stack.count(next)) continue;
            const double len = net.find(at, next)->length_km;
            stack.push_back(next);
            on_stack.insert(next);
            length += len;
            dfs(next);
            length -= len;
            on_stack.erase(next);
            stack.pop_back();
        }
    }
};

}  // namespace

EsPath route_es(const std::string& from, const std::string& to, const NetworkTopology& network) {
    if (from == to) throw InternalError("route_es called with identical endpoints " + from);
    // Route the unordered pair once so both orientations use the same links.
    const bool flip = to < from;
    const std::string& a = flip ? to : from;
    const std::string& b = flip ? from : to;
    EsPath path;
    if (const NetworkEdge* e = network.find(a, b)) {
        path.qpus = {a, b};
        path.total_length_km = e->length_km;
    } else {
        RouteSearch s{network, b, {a}, {a}};
        s.dfs(a);
        if (!s.found) throw RoutingError("no optical path between QPU " + from + " and QPU " + to);
        path = s.best;
    }
    if (flip) std::reverse(path.qpus.begin(), path.qpus.end());
    return path;
}

CommAllocation allocate_comm_qubits(const std::vector<EsPath>& paths, const ArchitectureSpec& spec,
                                    const PartitionMap& pm) {
    std::vector<bool> endpoint(spec.qpus.size(), false), repeater(spec.qpus.size(), false);
    for (const auto& p : paths) {
        for (std::size_t k = 0; k < p.qpus.size(); ++k) {
            const std::size_t q = spec.qpu_index(p.qpus[k]);
            if (k == 0 || k + 1 == p.qpus.size()) {
                endpoint[q] = true;
            } else {
                repeater[q] = true;
            }
        }
    }
    std::vector<std::size_t> data(spec.qpus.size(), 0);
    for (std::size_t part : pm.partition) ++data[spec.qpu_index(pm.mapping.at(part))];

    CommAllocation alloc;
    std::string shortfalls;
    for (std::size_t i = 0; i < spec.qpus.size(); ++i) {
        const auto& q = spec.qpus[i];
        const std::size_t need = repeater[i] ? 2 : endpoint[i] ? 1 : 0;
        if (data[i] + need > q.num_qubits) {
            if (!shortfalls.empty()) shortfalls += "; ";
            shortfalls += "QPU " + q.id + " needs " + std::to_string(data[i]) + " data + " + std::to_string(need) +
                          " communication qubits but has " + std::to_string(q.num_qubits) + " (short by " +
                          std::to_string(data[i] + need - q.num_qubits) + ")";
            continue;
        }
        if (need == 0) continue;
        auto& slots = alloc.per_qpu[q.id];
        CommQubit first{q.num_qubits - 1, {}};
        if (endpoint[i]) first.roles.push_back(CommRole::Endpoint);
        if (repeater[i]) first.roles.push_back(CommRole::RepeaterLeft);
        slots.push_back(first);
        if (repeater[i]) slots.push_back(CommQubit{q.num_qubits - 2, {CommRole::RepeaterRight}});
    }
    if (!shortfalls.empty()) throw CapacityError(shortfalls);
    return alloc;
}

DqcCircuit place_es_and_telegate(const Circuit& decomposed, const ArchitectureSpec& spec, const PartitionMap& pm,
                                 const std::vector<EsPath>& paths, const CommAllocation& alloc) {
    const std::size_t n = decomposed.num_qubits();
    DqcCircuit out;
    out.num_data_qubits = n;
    out.num_output_clbits = decomposed.num_clbits();
    out.partition_map = pm;
    out.allocation = alloc;

    // Logical qubit numbering: data first, then comm slots per QPU in declaration order.
    out.qpu_of_qubit.resize(n);
    out.local_index.resize(n);
    std::vector<std::size_t> next_local(spec.qpus.size(), 0);
    for (Qubit q = 0; q < n; ++q) {
        const std::size_t qi = spec.qpu_index(pm.mapping.at(pm.partition.at(q)));
        out.qpu_of_qubit[q] = qi;
        out.local_index[q] = next_local[qi]++;
    }
    std::vector<std::vector<Qubit>> comm(spec.qpus.size());
    Qubit next = static_cast<Qubit>(n);
    for (std::size_t i = 0; i < spec.qpus.size(); ++i) {
        auto it = alloc.per_qpu.find(spec.qpus[i].id);
        if (it == alloc.per_qpu.end()) continue;
        for (const auto& slot : it->second) {
            comm[i].push_back(next++);
            out.qpu_of_qubit.push_back(i);
            out.local_index.push_back(slot.local_index);
        }
    }

    std::size_t total_hops = 0;
    for (const auto& p : paths) total_hops += p.hops();
    Circuit c(next, decomposed.num_clbits() + 2 * total_hops);
    for (Qubit q = static_cast<Qubit>(n); q < next; ++q) c.set_role(q, QubitRole::Communication);

    auto qpu_of = [&](Qubit q) { return out.qpu_of_qubit[q]; };
    auto slot = [&](const std::string& id, std::size_t s) -> Qubit {
        const auto& v = comm[spec.qpu_index(id)];
        if (s >= v.size()) throw InternalError("QPU " + id + " lacks communication slot " + std::to_string(s));
        return v[s];
    };

    // Clbit writers per QPU, to reject conditions that cross partitions.
    std::vector<std::set<std::size_t>> writers(decomposed.num_clbits());
    for (const auto& ins : decomposed) {
        if (ins.kind == GateKind::Measure) writers[ins.clbits[0]].insert(qpu_of(ins.qubits[0]));
    }

    const auto remote = identify_remote_gates(decomposed, pm);
    if (remote.size() != paths.size()) throw InternalError("one routed path is needed per remote CNOT");
    std::size_t r = 0;
    Clbit next_clbit = static_cast<Clbit>(decomposed.num_clbits());

    for (std::size_t i = 0; i < decomposed.size(); ++i) {
        const auto& ins = decomposed[i];
        if (ins.tag && sync_tag::parse(*ins.tag)) {
            throw InputError("instruction tag \"" + *ins.tag + "\" is reserved for communication operations");
        }
        if (ins.condition) {
            for (std::size_t w : writers[ins.condition->clbit]) {
                if (w != qpu_of(ins.qubits[0])) {
                    throw InputError("condition on clbit " + std::to_string(ins.condition->clbit) +
                                     " crosses partitions");
                }
            }
        }
        if (r < remote.size() && remote[r].instruction == i) {
            if (ins.kind != GateKind::CX) throw InternalError("remote gate left undecomposed");
            const EsPath& path = paths[r];
            const Qubit ctl = ins.qubits[0], tgt = ins.qubits[1];
            if (path.qpus.front() != spec.qpus[qpu_of(ctl)].id || path.qpus.back() != spec.qpus[qpu_of(tgt)].id) {
                throw InternalError("path endpoints do not match remote CNOT partitions");
            }
            const std::size_t h = path.hops();
            const Qubit e_a = slot(path.qpus.front(), 0);
            const Qubit e_b = slot(path.qpus.back(), 0);

            for (std::size_t j = 0; j < h; ++j) {
                const Qubit x = j == 0 ? e_a : slot(path.qpus[j], 1);
                const Qubit y = j + 1 == h ? e_b : slot(path.qpus[j + 1], 0);
                const std::string tag = sync_tag::epr(r, j);
                c.append(with_tag(make_gate(GateKind::H, {x}), tag));
                c.append(with_tag(make_gate(GateKind::CX, {x, y}), tag));
            }
            for (std::size_t k = 1; k < h; ++k) {
                const Qubit rl = slot(path.qpus[k], 0), rr = slot(path.qpus[k], 1);
                const Clbit m1 = next_clbit++, m2 = next_clbit++;
                const std::string tag = sync_tag::es(r, k);
                c.append(with_tag(make_gate(GateKind::CX, {rl, rr}), tag));
                c.append(with_tag(make_gate(GateKind::H, {rl}), tag));
                c.append(with_tag(make_measure(rl, m1), tag));
                c.append(with_tag(make_measure(rr, m2), tag));
                c.append(with_tag(with_condition(make_gate(GateKind::X, {e_b}), m2), tag));
                c.append(with_tag(with_condition(make_gate(GateKind::Z, {e_b}), m1), tag));
                c.append(with_tag(make_reset(rl), tag));
                c.append(with_tag(make_reset(rr), tag));
            }
            const Clbit ma = next_clbit++, mb = next_clbit++;
            const std::string tag = sync_tag::telegate(r);
            c.append(with_tag(make_gate(GateKind::CX, {ctl, e_a}), sync_tag::telegate_local(r)));
            c.append(with_tag(make_measure(e_a, ma), tag));
            c.append(with_tag(with_condition(make_gate(GateKind::X, {e_b}), ma), tag));
            c.append(with_tag(make_gate(GateKind::CX, {e_b, tgt}), tag));
            c.append(with_tag(make_gate(GateKind::H, {e_b}), tag));
            c.append(with_tag(make_measure(e_b, mb), tag));
            c.append(with_tag(with_condition(make_gate(GateKind::Z, {ctl}), mb), tag));
            c.append(with_tag(make_reset(e_a), tag));
            c.append(with_tag(make_reset(e_b), tag));

            out.remote_cnots.push_back({ctl, tgt, path, sync_tag::telegate(r).substr(0, 6)});
            ++r;
            continue;
        }
        if (ins.kind == GateKind::Barrier) {
            // A barrier spanning QPUs becomes one barrier per QPU.
            std::vector<std::vector<Qubit>> parts(spec.qpus.size());
            for (Qubit q : ins.qubits) parts[qpu_of(q)].push_back(q);
            for (auto& part : parts) {
                if (part.empty()) continue;
                Instruction b = make_barrier(std::move(part));
                b.tag = ins.tag;
                c.append(std::move(b));
            }
            continue;
        }
        c.append(ins);
    }
    out.circuit = std::move(c);
    return out;
}

DqcCircuit construct(const Circuit& c, const ArchitectureSpec& spec, const PartitionMap& pm) {
    for (QubitRole role : c.qubit_roles()) {
        if (role != QubitRole::Data) throw InputError("monolithic circuit must contain only data qubits");
    }
    validate_partition(pm, spec, c.num_qubits());
    const auto remote = identify_remote_gates(c, pm);
    const Circuit decomposed = decompose_to_remote_cnots(c, remote);
    const auto remote_cx = identify_remote_gates(decomposed, pm);

    std::map<std::pair<std::size_t, std::size_t>, EsPath> cache;
    std::vector<EsPath> paths;
    paths.reserve(remote_cx.size());
    for (const auto& rg : remote_cx) {
        auto key = std::make_pair(rg.control_partition, rg.target_partition);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, route_es(pm.mapping[rg.control_partition], pm.mapping[rg.target_partition],
                                             spec.network))
                     .first;
        }
        paths.push_back(it->second);
    }
    const CommAllocation alloc = allocate_comm_qubits(paths, spec, pm);
    return place_es_and_telegate(decomposed, spec, pm, paths, alloc);
}

namespace {
constexpr std::array<std::string_view, 3> k_role_names = {"endpoint", "repeater-left", "repeater-right"};

CommRole role_from_name(const std::string& n) {
    for (std::size_t i = 0; i < k_role_names.size(); ++i) {
        if (k_role_names[i] == n) return static_cast<CommRole>(i);
    }
    throw InputError("unknown communication role \"" + n + "\"");
}
}  // namespace

Json dqc_to_json(const DqcCircuit& d) {
    Json alloc = Json::object();
    for (const auto& [qpu, slots] : d.allocation.per_qpu) {
        Json list = Json::array();
        for (const auto& s : slots) {
            Json roles = Json::array();
            for (CommRole r : s.roles) roles.push_back(k_role_names[static_cast<std::size_t>(r)]);
            list.push_back(Json{{"local_index", s.local_index}, {"roles", roles}});
        }
        alloc[qpu] = list;
    }
    Json remote = Json::array();
    for (const auto& r : d.remote_cnots) {
        remote.push_back(Json{{"control", r.control},
                              {"target", r.target},
                              {"path", r.path.qpus},
                              {"length_km", r.path.total_length_km},
                              {"sync_prefix", r.sync_prefix}});
    }
    return Json{{"circuit", circuit_to_json(d.circuit)},
                {"num_data_qubits", d.num_data_qubits},
                {"num_output_clbits", d.num_output_clbits},
                {"qpu_of_qubit", d.qpu_of_qubit},
                {"local_index", d.local_index},
                {"partition", Json{{"partition", d.partition_map.partition}, {"mapping", d.partition_map.mapping}}},
                {"allocation", alloc},
                {"remote_cnots", remote}};
}

DqcCircuit dqc_from_json(const Json& j) {
    try {
        DqcCircuit d;
        d.circuit = circuit_from_json(j.at("circuit"));
        d.num_data_qubits = j.at("num_data_qubits").get<std::size_t>();
        d.num_output_clbits = j.at("num_output_clbits").get<std::size_t>();
        d.qpu_of_qubit = j.at("qpu_of_qubit").get<std::vector<std::size_t>>();
        d.local_index = j.at("local_index").get<std::vector<std::size_t>>();
        d.partition_map.partition = j.at("partition").at("partition").get<std::vector<std::size_t>>();
        d.partition_map.mapping = j.at("partition").at("mapping").get<std::vector<std::string>>();
        for (const auto& [qpu, list] : j.at("allocation").items()) {
            auto& slots = d.allocation.per_qpu[qpu];
            for (const auto& s : list) {
                CommQubit cq;
                cq.local_index = s.at("local_index").get<std::size_t>();
                for (const auto& r : s.at("roles")) cq.roles.push_back(role_from_name(r.get<std::string>()));
                slots.push_back(std::move(cq));
            }
        }
        for (const auto& r : j.at("remote_cnots")) {
            RoutedRemoteCx cx;
            cx.control = r.at("control").get<Qubit>();
            cx.target = r.at("target").get<Qubit>();
            cx.path.qpus = r.at("path").get<std::vector<std::string>>();
            cx.path.total_length_km = r.at("length_km").get<double>();
            cx.sync_prefix = r.at("sync_prefix").get<std::string>();
            d.remote_cnots.push_back(std::move(cx));
        }
        if (d.qpu_of_qubit.size() != d.circuit.num_qubits() || d.local_index.size() != d.circuit.num_qubits()) {
            throw InputError("dqc-logical artifact: qubit maps do not match the circuit");
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("dqc-logical artifact: ") + e.what());
    }
}

}  // namespace disq
