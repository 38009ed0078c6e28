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

#include "disq/transpiler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <numbers>

#include "disq/error.hpp"

namespace disq {

namespace {

using std::numbers::pi;

constexpr double k_angle_tol = 1e-10;

/// Wraps an angle into (-pi, pi].
double wrap(double a) {
    a = std::fmod(a, 2 * pi);
    if (a <= -pi) a += 2 * pi;
    if (a > pi) a -= 2 * pi;
    return a;
}

bool near_zero_angle(double a) { return std::abs(wrap(a)) < k_angle_tol; }
bool near(double a, double b) { return std::abs(wrap(a - b)) < k_angle_tol; }

Instruction gate1(GateKind k, Qubit q, std::initializer_list<double> p = {}) { return make_gate(k, {q}, p); }

void push_rz(std::vector<Instruction>& out, Qubit q, double angle) {
    if (!near_zero_angle(angle)) out.push_back(gate1(GateKind::RZ, q, {wrap(angle)}));
}

Mat2 sequence_matrix(const std::vector<Instruction>& seq) {
    Mat2 m{1.0, 0.0, 0.0, 1.0};
    for (const auto& g : seq) m = mul(matrix_1q(g.kind, g.params), m);
    return m;
}

std::vector<Instruction> synth_superconducting(const Mat2& u, Qubit q, const QpuProfile& qpu) {
    const ZyzAngles a = zyz_decompose(u);
    std::vector<Instruction> out;
    if (std::abs(a.theta) < k_angle_tol) {
        push_rz(out, q, a.phi + a.lambda);
        return out;
    }
    if (std::abs(a.theta - pi / 2) < k_angle_tol) {
        push_rz(out, q, a.lambda - pi / 2);
        out.push_back(gate1(GateKind::SX, q));
        push_rz(out, q, a.phi + pi / 2);
        return out;
    }
    if (std::abs(a.theta - pi) < k_angle_tol && qpu.in_basis(GateKind::X)) {
        push_rz(out, q, a.lambda - pi / 2);
        out.push_back(gate1(GateKind::X, q));
        push_rz(out, q, a.phi + pi / 2);
        return out;
    }
    push_rz(out, q, a.lambda);
    out.push_back(gate1(GateKind::SX, q));
    push_rz(out, q, a.theta + pi);
    out.push_back(gate1(GateKind::SX, q));
    push_rz(out, q, a.phi + pi);
    return out;
}

std::vector<Instruction> synth_ion(const Mat2& u, Qubit q) {
    const ZyzAngles a = zyz_decompose(u);
    std::vector<Instruction> out;
    if (std::abs(a.theta) < k_angle_tol) {
        push_rz(out, q, a.phi + a.lambda);
        return out;
    }
    // RZ(phi) RY(theta) RZ(-phi) is a rotation about an equatorial axis; on
    // the x axis it is a single RX.
    if (near(a.phi, -a.lambda)) {
        if (near(a.phi, pi / 2)) {
            out.push_back(gate1(GateKind::RX, q, {-a.theta}));
            return out;
        }
        if (near(a.phi, -pi / 2)) {
            out.push_back(gate1(GateKind::RX, q, {a.theta}));
            return out;
        }
    }
    push_rz(out, q, a.lambda);
    out.push_back(gate1(GateKind::RY, q, {a.theta}));
    push_rz(out, q, a.phi);
    return out;
}

void append_all(std::vector<Instruction>& dst, std::vector<Instruction> src) {
    for (auto& g : src) dst.push_back(std::move(g));
}

/// Expresses a two-qubit gate through CX and single-qubit gates.
std::vector<Instruction> via_cx(const Instruction& ins) {
    const Qubit a = ins.qubits[0], b = ins.qubits[1];
    switch (ins.kind) {
        case GateKind::CX: return {ins};
        case GateKind::CZ:
            return {gate1(GateKind::H, b), make_gate(GateKind::CX, {a, b}), gate1(GateKind::H, b)};
        case GateKind::SWAP:
            return {make_gate(GateKind::CX, {a, b}), make_gate(GateKind::CX, {b, a}), make_gate(GateKind::CX, {a, b})};
        case GateKind::RZZ:
            return {make_gate(GateKind::CX, {a, b}), gate1(GateKind::RZ, b, {ins.params[0]}),
                    make_gate(GateKind::CX, {a, b})};
        case GateKind::RXX:
            return {gate1(GateKind::H, a), gate1(GateKind::H, b), make_gate(GateKind::CX, {a, b}),
                    gate1(GateKind::RZ, b, {ins.params[0]}), make_gate(GateKind::CX, {a, b}),
                    gate1(GateKind::H, a), gate1(GateKind::H, b)};
        default: break;
    }
    throw InternalError("via_cx: unexpected gate " + std::string(gate_name(ins.kind)));
}

/// CX(c, t) = RX(pi/2)_t RY(pi/2)_c RX(-pi/2)_c RXX(pi/2) RY(-pi/2)_c up to phase.
std::vector<Instruction> cx_via_rxx(Qubit c, Qubit t) {
    return {gate1(GateKind::RY, c, {-pi / 2}), make_gate(GateKind::RXX, {c, t}, {pi / 2}),
            gate1(GateKind::RX, c, {-pi / 2}), gate1(GateKind::RY, c, {pi / 2}), gate1(GateKind::RX, t, {pi / 2})};
}

std::vector<Instruction> lower_2q(const Instruction& ins, const QpuProfile& qpu) {
    const Qubit a = ins.qubits[0], b = ins.qubits[1];
    std::vector<Instruction> prim;
    if (qpu.family() == BasisFamily::TrappedIon) {
        if (ins.kind == GateKind::RZZ) {
            prim = {gate1(GateKind::H, a), gate1(GateKind::H, b), make_gate(GateKind::RXX, {a, b}, {ins.params[0]}),
                    gate1(GateKind::H, a), gate1(GateKind::H, b)};
        } else {
            for (const auto& g : via_cx(ins)) {
                if (g.kind == GateKind::CX) {
                    append_all(prim, cx_via_rxx(g.qubits[0], g.qubits[1]));
                } else {
                    prim.push_back(g);
                }
            }
        }
    } else {
        prim = via_cx(ins);
    }
    std::vector<Instruction> out;
    for (const auto& g : prim) {
        if (qpu.in_basis(g.kind)) {
            out.push_back(g);
        } else if (is_single_qubit_unitary(g.kind)) {
            append_all(out, synthesize_1q(matrix_1q(g.kind, g.params), g.qubits[0], qpu));
        } else {
            throw InternalError("no lowering for " + std::string(gate_name(g.kind)) + " on QPU " + qpu.id);
        }
    }
    return out;
}

/// Shortest path from a to b with lowest-index tie-breaking; empty when unreachable.
std::vector<Qubit> shortest_path(const std::vector<std::vector<Qubit>>& adj, Qubit a, Qubit b) {
    const std::size_t n = adj.size();
    std::vector<std::int64_t> parent(n, -1);
    std::deque<Qubit> queue{a};
    parent[a] = a;
    while (!queue.empty()) {
        const Qubit u = queue.front();
        queue.pop_front();
        if (u == b) break;
        for (Qubit v : adj[u]) {
            if (parent[v] >= 0) continue;
            parent[v] = u;
            queue.push_back(v);
        }
    }
    if (parent[b] < 0) return {};
    std::vector<Qubit> path{b};
    while (path.back() != a) path.push_back(static_cast<Qubit>(parent[path.back()]));
    std::reverse(path.begin(), path.end());
    return path;
}

bool mergeable_1q(const Instruction& ins) {
    return is_single_qubit_unitary(ins.kind) && !ins.condition && !ins.tag;
}

/// One pass of single-qubit run merging. Returns true on any change.
bool merge_runs(std::vector<Instruction>& v, std::size_t num_qubits, const QpuProfile& qpu) {
    std::vector<std::vector<std::size_t>> run(num_qubits);
    std::vector<bool> removed(v.size(), false);
    std::vector<std::vector<Instruction>> insert_after(v.size());
    bool changed = false;

    auto flush = [&](Qubit q) {
        auto& r = run[q];
        if (r.size() >= 2) {
            std::vector<Instruction> seq;
            for (std::size_t i : r) seq.push_back(v[i]);
            auto synth = synthesize_1q(sequence_matrix(seq), q, qpu);
            if (synth.size() < r.size()) {
                for (std::size_t i : r) removed[i] = true;
                insert_after[r.back()] = std::move(synth);
                changed = true;
            }
        } else if (r.size() == 1) {
            // A lone rotation by a multiple of 2 pi is an identity.
            const auto& g = v[r[0]];
            if ((g.kind == GateKind::RZ || g.kind == GateKind::RX || g.kind == GateKind::RY) &&
                near_zero_angle(g.params[0])) {
                removed[r[0]] = true;
                changed = true;
            }
        }
        r.clear();
    };

    for (std::size_t i = 0; i < v.size(); ++i) {
        if (mergeable_1q(v[i])) {
            run[v[i].qubits[0]].push_back(i);
            continue;
        }
        for (Qubit q : v[i].qubits) flush(q);
    }
    for (Qubit q = 0; q < num_qubits; ++q) flush(q);
    if (!changed) return false;

    std::vector<Instruction> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!removed[i]) out.push_back(std::move(v[i]));
        for (auto& g : insert_after[i]) out.push_back(std::move(g));
    }
    v = std::move(out);
    return true;
}

/// One pass of adjacent CX cancellation and RXX merging.
bool cancel_pairs(std::vector<Instruction>& v, std::size_t num_qubits) {
    std::vector<std::int64_t> last(num_qubits, -1);  // last live instruction on each qubit
    std::vector<bool> removed(v.size(), false);
    bool changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto& g = v[i];
        const bool candidate =
            (g.kind == GateKind::CX || g.kind == GateKind::RXX) && !g.condition && !g.tag;
        if (candidate) {
            const std::int64_t p = last[g.qubits[0]];
            if (p >= 0 && p == last[g.qubits[1]]) {
                auto& prev = v[static_cast<std::size_t>(p)];
                if (prev.kind == g.kind && !prev.condition && !prev.tag) {
                    if (g.kind == GateKind::CX && prev.qubits == g.qubits) {
                        removed[static_cast<std::size_t>(p)] = removed[i] = true;
                        changed = true;
                    } else if (g.kind == GateKind::RXX) {
                        const double sum = prev.params[0] + g.params[0];
                        removed[static_cast<std::size_t>(p)] = true;
                        if (near_zero_angle(sum)) {
                            removed[i] = true;
                        } else {
                            g.params[0] = sum;
                        }
                        changed = true;
                    }
                }
            }
        }
        // After a cancellation the earlier neighbour is picked up by the next pass.
        const std::int64_t mark = removed[i] ? -1 : static_cast<std::int64_t>(i);
        for (Qubit q : g.qubits) last[q] = mark;
    }
    if (!changed) return false;
    std::vector<Instruction> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!removed[i]) out.push_back(std::move(v[i]));
    }
    v = std::move(out);
    return true;
}

Circuit rebuild(const Circuit& like, std::vector<Instruction> v) {
    Circuit out(like.num_qubits(), like.num_clbits());
    for (Qubit q = 0; q < like.num_qubits(); ++q) out.set_role(q, like.role(q));
    for (auto& g : v) out.append(std::move(g));
    return out;
}

}  // namespace

std::vector<Instruction> synthesize_1q(const Mat2& u, Qubit q, const QpuProfile& qpu) {
    std::vector<Instruction> out = qpu.family() == BasisFamily::TrappedIon ? synth_ion(u, q)
                                                                           : synth_superconducting(u, q, qpu);
    if (!equal_up_to_phase(sequence_matrix(out), u, 1e-9)) {
        throw InternalError("single-qubit synthesis lost accuracy on QPU " + qpu.id);
    }
    return out;
}

std::vector<Instruction> lower_to_basis(const Instruction& ins, const QpuProfile& qpu) {
    if (!ins.is_unitary() || qpu.in_basis(ins.kind)) return {ins};
    std::vector<Instruction> out;
    if (is_single_qubit_unitary(ins.kind)) {
        out = synthesize_1q(matrix_1q(ins.kind, ins.params), ins.qubits[0], qpu);
    } else {
        out = lower_2q(ins, qpu);
    }
    for (auto& g : out) {
        g.condition = ins.condition;
        g.tag = ins.tag;
    }
    return out;
}

Circuit decompose_to_basis(const Circuit& c, const QpuProfile& qpu) {
    std::vector<Instruction> v;
    v.reserve(c.size());
    for (const auto& ins : c) append_all(v, lower_to_basis(ins, qpu));
    return rebuild(c, std::move(v));
}

namespace {

constexpr std::size_t k_lookahead = 8;
constexpr double k_lookahead_decay = 0.7;
constexpr int k_layout_rounds = 3;

using DistanceTable = std::vector<std::vector<int>>;

DistanceTable all_distances(const std::vector<std::vector<Qubit>>& adj) {
    const std::size_t n = adj.size();
    DistanceTable d(n, std::vector<int>(n, -1));
    for (Qubit s = 0; s < n; ++s) {
        std::deque<Qubit> queue{s};
        d[s][s] = 0;
        while (!queue.empty()) {
            const Qubit u = queue.front();
            queue.pop_front();
            for (Qubit w : adj[u]) {
                if (d[s][w] >= 0) continue;
                d[s][w] = d[s][u] + 1;
                queue.push_back(w);
            }
        }
    }
    return d;
}

/// Position i needs virtual qubits (a, b) adjacent just before instruction i.
struct Interaction {
    std::size_t position;
    Qubit a, b;
};

std::vector<Interaction> interactions(const Circuit& c) {
    std::vector<Interaction> out;
    const auto& ins = c.instructions();
    for (std::size_t i = 0; i < ins.size(); ++i) {
        const auto& g = ins[i];
        if (g.is_two_qubit_unitary()) {
            out.push_back({i, g.qubits[0], g.qubits[1]});
        } else if (g.kind == GateKind::Barrier && i + 1 < ins.size() && vg_needs_coupling(ins[i + 1])) {
            out.push_back({i, ins[i + 1].qubits[0], ins[i + 1].qubits[1]});
        } else if (vg_needs_coupling(g) && !(i > 0 && ins[i - 1].kind == GateKind::Barrier)) {
            out.push_back({i, g.qubits[0], g.qubits[1]});
        }
    }
    return out;
}

std::vector<Qubit> bfs_region_layout(const Circuit& c, const QpuProfile& qpu) {
    const std::size_t n = qpu.num_qubits;
    std::vector<bool> used(n, false);
    for (const auto& ins : c) {
        for (Qubit q : ins.qubits) used[q] = true;
    }
    const auto adj = qpu.adjacency();
    std::vector<Qubit> order;
    std::vector<bool> seen(n, false);
    for (Qubit start = 0; start < n && order.size() < n; ++start) {
        if (seen[start]) continue;
        std::deque<Qubit> queue{start};
        seen[start] = true;
        while (!queue.empty()) {
            const Qubit u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (Qubit w : adj[u]) {
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    const std::size_t k = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
    std::vector<Qubit> region(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Qubit> rest(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    std::sort(region.begin(), region.end());
    std::sort(rest.begin(), rest.end());
    std::vector<Qubit> layout(n);
    std::size_t ri = 0, si = 0;
    for (Qubit v = 0; v < n; ++v) layout[v] = used[v] ? region[ri++] : rest[si++];
    return layout;
}

/// Places qubits in order of first interaction, each next to its partner.
std::vector<Qubit> greedy_layout(const Circuit& c, const QpuProfile& qpu, const DistanceTable& dist) {
    const std::size_t n = qpu.num_qubits;
    constexpr Qubit none = UINT32_MAX;
    std::vector<Qubit> v2p(n, none);
    std::vector<bool> taken(n, false);
    auto nearest_free = [&](std::optional<Qubit> anchor) {
        Qubit best = none;
        int best_d = INT32_MAX;
        for (Qubit p = 0; p < n; ++p) {
            if (taken[p]) continue;
            int d = 0;
            if (anchor) {
                d = dist[*anchor][p] < 0 ? INT32_MAX - 1 : dist[*anchor][p];
            } else {
                // Closest to anything placed so far.
                d = INT32_MAX - 1;
                for (Qubit v = 0; v < n; ++v) {
                    if (v2p[v] != none && dist[v2p[v]][p] >= 0) d = std::min(d, dist[v2p[v]][p]);
                }
            }
            if (d < best_d) {
                best_d = d;
                best = p;
            }
        }
        return best;
    };
    auto place = [&](Qubit v, std::optional<Qubit> anchor) {
        v2p[v] = nearest_free(anchor);
        taken[v2p[v]] = true;
    };
    for (const auto& it : interactions(c)) {
        const bool pa = v2p[it.a] != none, pb = v2p[it.b] != none;
        if (pa && pb) continue;
        if (!pa && !pb) place(it.a, std::nullopt);
        if (v2p[it.b] == none) {
            place(it.b, v2p[it.a]);
        } else {
            place(it.a, v2p[it.b]);
        }
    }
    std::vector<bool> used(n, false);
    for (const auto& ins : c) {
        for (Qubit q : ins.qubits) used[q] = true;
    }
    for (Qubit v = 0; v < n; ++v) {
        if (used[v] && v2p[v] == none) place(v, std::nullopt);
    }
    for (Qubit v = 0; v < n; ++v) {
        if (v2p[v] != none) continue;
        Qubit p = 0;
        while (taken[p]) ++p;
        v2p[v] = p;
        taken[p] = true;
    }
    return v2p;
}

Circuit reversed(const Circuit& c) {
    Circuit r(c.num_qubits(), c.num_clbits());
    for (std::size_t i = c.size(); i-- > 0;) r.append(c[i]);
    return r;
}

}  // namespace

std::vector<Qubit> initial_layout(const Circuit& c, const QpuProfile& qpu) {
    const std::size_t n = qpu.num_qubits;
    if (c.num_qubits() != n) throw InternalError("subcircuit width differs from QPU " + qpu.id);
    const DistanceTable dist = all_distances(qpu.adjacency());
    const Circuit back = reversed(c);
    std::vector<Qubit> best;
    std::size_t best_swaps = SIZE_MAX;
    auto consider = [&](const std::vector<Qubit>& layout) {
        const std::size_t swaps = route_to_coupling(c, qpu, layout).swaps;
        if (swaps < best_swaps) {
            best_swaps = swaps;
            best = layout;
        }
    };
    for (auto start : {bfs_region_layout(c, qpu), greedy_layout(c, qpu, dist)}) {
        consider(start);
        std::vector<Qubit> layout = start;
        for (int round = 0; round < k_layout_rounds; ++round) {
            // Route forward then backward; the end mapping of the backward
            // pass is a layout tuned to the start of the circuit.
            const auto fwd = route_to_coupling(c, qpu, layout);
            layout = route_to_coupling(back, qpu, fwd.final_permutation).final_permutation;
            consider(layout);
        }
    }
    return best;
}

RoutedCircuit route_to_coupling(const Circuit& c, const QpuProfile& qpu, const std::vector<Qubit>& layout) {
    const std::size_t n = qpu.num_qubits;
    const auto adj = qpu.adjacency();
    const DistanceTable dist = all_distances(adj);
    std::vector<Qubit> v2p = layout, p2v(n);
    for (Qubit v = 0; v < n; ++v) p2v[v2p[v]] = v;

    RoutedCircuit out;
    out.circuit = Circuit(n, c.num_clbits());
    for (Qubit v = 0; v < n; ++v) out.circuit.set_role(v2p[v], c.role(v));

    const std::vector<Interaction> need = interactions(c);
    std::size_t next_need = 0;

    auto swap_phys = [&](Qubit p, Qubit q, std::vector<Qubit>& m, std::vector<Qubit>& inv) {
        std::swap(inv[p], inv[q]);
        m[inv[p]] = p;
        m[inv[q]] = q;
    };
    // Weighted distance of the upcoming interactions under mapping m.
    auto lookahead_cost = [&](const std::vector<Qubit>& m) {
        double cost = 0.0, w = 1.0;
        for (std::size_t k = next_need + 1; k < need.size() && k <= next_need + k_lookahead; ++k) {
            cost += w * dist[m[need[k].a]][m[need[k].b]];
            w *= k_lookahead_decay;
        }
        return cost;
    };

    auto bring_together = [&](Qubit va, Qubit vb) {
        if (qpu.coupled(v2p[va], v2p[vb])) return;
        const auto path = shortest_path(adj, v2p[va], v2p[vb]);
        if (path.empty()) {
            throw RoutingError("QPU " + qpu.id + ": physical qubits " + std::to_string(v2p[va]) + " and " +
                               std::to_string(v2p[vb]) + " are not connected in the coupling map");
        }
        // va walks k steps forward and vb walks the remaining d-1-k back;
        // pick the meeting point that suits the next interactions best.
        const std::size_t d = path.size() - 1;
        std::size_t best_k = d - 1;
        double best_cost = 0.0;
        for (std::size_t k = d; k-- > 0;) {
            std::vector<Qubit> m = v2p, inv = p2v;
            for (std::size_t s = 0; s < k; ++s) swap_phys(path[s], path[s + 1], m, inv);
            for (std::size_t s = d; s > k + 1; --s) swap_phys(path[s], path[s - 1], m, inv);
            const double cost = lookahead_cost(m);
            if (k == d - 1 || cost < best_cost - 1e-12) {
                best_cost = cost;
                best_k = k;
            }
        }
        auto emit = [&](Qubit p, Qubit q) {
            out.circuit.append(make_gate(GateKind::SWAP, {p, q}));
            ++out.swaps;
            swap_phys(p, q, v2p, p2v);
        };
        for (std::size_t s = 0; s < best_k; ++s) emit(path[s], path[s + 1]);
        for (std::size_t s = d; s > best_k + 1; --s) emit(path[s], path[s - 1]);
    };

    const auto& ins = c.instructions();
    for (std::size_t i = 0; i < ins.size(); ++i) {
        if (next_need < need.size() && need[next_need].position == i) {
            bring_together(need[next_need].a, need[next_need].b);
            ++next_need;
        }
        Instruction mapped = ins[i];
        for (auto& q : mapped.qubits) q = v2p[q];
        out.circuit.append(std::move(mapped));
    }
    out.final_permutation = v2p;
    return out;
}

Circuit optimize(const Circuit& c, const QpuProfile& qpu, int opt_level) {
    if (opt_level <= 0) return c;
    std::vector<Instruction> v(c.begin(), c.end());
    bool changed = true;
    while (changed) {
        changed = merge_runs(v, c.num_qubits(), qpu);
        changed = cancel_pairs(v, c.num_qubits()) || changed;
    }
    return rebuild(c, std::move(v));
}

TranspiledSubcircuit transpile(const IsolatedSubcircuit& sub, const QpuProfile& qpu, int opt_level) {
    if (sub.qpu_id != qpu.id) throw InternalError("transpile: subcircuit for " + sub.qpu_id + " given QPU " + qpu.id);
    TranspiledSubcircuit t;
    t.qpu_id = sub.qpu_id;
    t.layout = initial_layout(sub.circuit, qpu);
    auto routed = route_to_coupling(sub.circuit, qpu, t.layout);
    t.final_permutation = routed.final_permutation;
    t.circuit = optimize(decompose_to_basis(routed.circuit, qpu), qpu, opt_level);
    t.vg_records = sub.vg_records;
    t.local_to_global = sub.local_to_global;
    return t;
}

TranspiledSubcircuit passthrough(const IsolatedSubcircuit& sub) {
    TranspiledSubcircuit t;
    t.qpu_id = sub.qpu_id;
    t.circuit = sub.circuit;
    t.layout.resize(sub.circuit.num_qubits());
    for (Qubit q = 0; q < t.layout.size(); ++q) t.layout[q] = q;
    t.final_permutation = t.layout;
    t.vg_records = sub.vg_records;
    t.local_to_global = sub.local_to_global;
    return t;
}

Json transpiled_to_json(const TranspiledSubcircuit& t) {
    IsolatedSubcircuit view{t.qpu_id, t.circuit, t.vg_records, t.local_to_global};
    IsolationResult wrap;
    wrap.subcircuits.push_back(view);
    Json sub = isolation_to_json(wrap)["subcircuits"][0];
    sub["layout"] = t.layout;
    sub["final_permutation"] = t.final_permutation;
    return sub;
}

TranspiledSubcircuit transpiled_from_json(const Json& j) {
    Json wrap{{"num_logical_qubits", 0}, {"num_data_qubits", 0}, {"num_clbits", 0},
              {"num_output_clbits", 0}, {"subcircuits", Json::array({j})}, {"sync_table", Json::array()}};
    const IsolationResult iso = isolation_from_json(wrap);
    TranspiledSubcircuit t;
    t.qpu_id = iso.subcircuits[0].qpu_id;
    t.circuit = iso.subcircuits[0].circuit;
    t.vg_records = iso.subcircuits[0].vg_records;
    t.local_to_global = iso.subcircuits[0].local_to_global;
    try {
        t.layout = j.at("layout").get<std::vector<Qubit>>();
        t.final_permutation = j.at("final_permutation").get<std::vector<Qubit>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("transpiled subcircuit: ") + e.what());
    }
    return t;
}

}  // namespace disq
