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

#include <gtest/gtest.h>

#include <random>

#include "../oracles/dense.hpp"
#include "../oracles/density_matrix.hpp"
#include "../support/builders.hpp"
#include "disq/benchmarks.hpp"
#include "disq/constructor.hpp"
#include "disq/error.hpp"
#include "disq/simulator.hpp"

using namespace disq;
namespace ts = testing_support;

namespace {

double linf(const std::map<std::uint64_t, double>& a, const std::map<std::uint64_t, double>& b) {
    double m = 0.0;
    for (const auto& [k, v] : a) m = std::max(m, std::abs(v - (b.count(k) ? b.at(k) : 0.0)));
    for (const auto& [k, v] : b) m = std::max(m, std::abs(v - (a.count(k) ? a.at(k) : 0.0)));
    return m;
}

std::size_t count_epr_cx(const Circuit& c) {
    std::size_t n = 0;
    for (const auto& ins : c) {
        if (ins.kind != GateKind::CX || !ins.tag) continue;
        const auto p = sync_tag::parse(*ins.tag);
        if (p && p->kind == sync_tag::Kind::Epr) ++n;
    }
    return n;
}

Circuit bell_input() {
    Circuit c(2, 2);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::CX, {0, 1}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    return c;
}

}  // namespace

TEST(RemoteGates, identify) {
    Circuit c(2);
    c.append(make_gate(GateKind::CX, {0, 1}));
    const auto s = ts::network(2, 4, false);
    EXPECT_TRUE(identify_remote_gates(c, ts::partition({0, 0}, s)).empty());
    const auto r = identify_remote_gates(c, ts::partition({0, 1}, s));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].instruction, 0u);
    EXPECT_EQ(r[0].control_partition, 0u);
    EXPECT_EQ(r[0].target_partition, 1u);
}

TEST(RemoteGates, ghz_split_four_ways) {
    const Circuit ghz = generate(parse_benchmark("ghz-16"));
    const auto b = preset_architecture("arch-b");
    const auto r = identify_remote_gates(ghz, default_partition(ghz, b));
    ASSERT_EQ(r.size(), 3u);
    const std::vector<std::pair<Qubit, Qubit>> want{{3, 4}, {7, 8}, {11, 12}};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& ins = ghz[r[i].instruction];
        EXPECT_EQ(ins.kind, GateKind::CX);
        EXPECT_EQ(std::make_pair(ins.qubits[0], ins.qubits[1]), want[i]);
    }
}

TEST(RemoteGates, textbook_decompositions) {
    auto decompose_one = [](Instruction ins) {
        Circuit c(2);
        c.append(ins);
        const auto s = ts::network(2, 4, false);
        return decompose_to_remote_cnots(c, identify_remote_gates(c, ts::partition({0, 1}, s)));
    };
    const Circuit cz = decompose_one(make_gate(GateKind::CZ, {0, 1}));
    ASSERT_EQ(cz.size(), 3u);
    EXPECT_EQ(cz[0], make_gate(GateKind::H, {1}));
    EXPECT_EQ(cz[1], make_gate(GateKind::CX, {0, 1}));
    EXPECT_EQ(cz[2], make_gate(GateKind::H, {1}));

    const Circuit rzz = decompose_one(make_gate(GateKind::RZZ, {0, 1}, {oracle::k_pi / 2}));
    ASSERT_EQ(rzz.size(), 3u);
    EXPECT_EQ(rzz[0].kind, GateKind::CX);
    EXPECT_EQ(rzz[1].kind, GateKind::RZ);
    EXPECT_EQ(rzz[2].kind, GateKind::CX);
    EXPECT_LE((oracle::unitary(rzz) - oracle::embed(oracle::gate_matrix(GateKind::RZZ, {oracle::k_pi / 2}), {0, 1}, 2))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);

    const Circuit sw = decompose_one(make_gate(GateKind::SWAP, {0, 1}));
    ASSERT_EQ(sw.size(), 3u);
    for (const auto& ins : sw) EXPECT_EQ(ins.kind, GateKind::CX);
    EXPECT_TRUE(oracle::equal_up_to_phase(oracle::unitary(sw), oracle::gate_matrix(GateKind::SWAP, {}), 1e-12));

    const Circuit rxx = decompose_one(make_gate(GateKind::RXX, {1, 0}, {0.37}));
    for (const auto& ins : rxx) {
        if (ins.is_two_qubit_unitary()) EXPECT_EQ(ins.kind, GateKind::CX);
    }
    EXPECT_TRUE(oracle::equal_up_to_phase(oracle::unitary(rxx),
                                          oracle::embed(oracle::gate_matrix(GateKind::RXX, {0.37}), {1, 0}, 2), 1e-12));
}

TEST(RemoteGates, random_decompositions_are_equivalent) {
    std::mt19937_64 rng(3);
    const auto s = ts::network(2, 6, false);
    for (int t = 0; t < 30; ++t) {
        const Circuit c = ts::random_unitary_circuit(rng, 4, 20, 0.6);
        const auto pm = ts::partition({0, 1, 0, 1}, s);
        const Circuit d = decompose_to_remote_cnots(c, identify_remote_gates(c, pm));
        for (const auto& r : identify_remote_gates(d, pm)) EXPECT_EQ(d[r.instruction].kind, GateKind::CX);
        ASSERT_TRUE(oracle::equal_up_to_phase(oracle::unitary(d), oracle::unitary(c), 1e-10));
    }
}

TEST(EsRouting, paths) {
    NetworkTopology direct;
    direct.edges = {{"A", "B", 1.0}};
    const EsPath p = route_es("A", "B", direct);
    EXPECT_EQ(p.qpus, (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(p.hops(), 1u);

    NetworkTopology tri;
    tri.edges = {{"A", "B", 1.0}, {"A", "C", 1.0}, {"B", "C", 1.0}};
    EXPECT_EQ(route_es("A", "C", tri).qpus, (std::vector<std::string>{"A", "C"}));

    NetworkTopology line;
    line.edges = {{"A", "B", 1.0}, {"B", "C", 1.0}};
    const EsPath l = route_es("A", "C", line);
    EXPECT_EQ(l.qpus, (std::vector<std::string>{"A", "B", "C"}));
    EXPECT_EQ(l.hops(), 2u);
    EXPECT_EQ(l.repeaters(), 1u);
    EXPECT_DOUBLE_EQ(l.total_length_km, 2.0);
    EXPECT_EQ(route_es("C", "A", line).qpus, (std::vector<std::string>{"C", "B", "A"}));

    NetworkTopology split;
    split.edges = {{"A", "B", 1.0}, {"C", "D", 1.0}};
    EXPECT_THROW(route_es("A", "D", split), RoutingError);

    // Equal hops: the shorter link length wins.
    NetworkTopology two_ways;
    two_ways.edges = {{"A", "B", 5.0}, {"B", "D", 5.0}, {"A", "C", 1.0}, {"C", "D", 1.0}};
    EXPECT_EQ(route_es("A", "D", two_ways).qpus, (std::vector<std::string>{"A", "C", "D"}));
}

TEST(CommAllocation, counts_by_role) {
    const auto direct = ts::network(2, 4, false);
    const auto pm2 = ts::partition({0, 1}, direct);
    const CommAllocation a = allocate_comm_qubits({route_es("q0", "q1", direct.network)}, direct, pm2);
    EXPECT_EQ(a.count("q0"), 1u);
    EXPECT_EQ(a.count("q1"), 1u);

    const auto line = ts::network(4, 4, false);
    const auto pm4 = ts::partition({0, 1, 2, 3}, line);
    const CommAllocation b = allocate_comm_qubits({route_es("q0", "q2", line.network)}, line, pm4);
    EXPECT_EQ(b.count("q0"), 1u);
    EXPECT_EQ(b.count("q1"), 2u);
    EXPECT_EQ(b.count("q2"), 1u);
    EXPECT_EQ(b.count("q3"), 0u);
    EXPECT_EQ(b.total(), 4u);
    // Communication qubits sit at the top of each QPU.
    for (const auto& c : b.per_qpu.at("q1")) EXPECT_GE(c.local_index, 2u);
}

TEST(Telegate, direct_edge_matches_local_cx) {
    const auto s = ts::network(2, 3, false);
    const DqcCircuit d = construct(bell_input(), s, ts::partition({0, 1}, s));
    EXPECT_EQ(d.telegates(), 1u);
    EXPECT_EQ(d.epr_pairs(), 1u);
    EXPECT_EQ(count_epr_cx(d.circuit), 1u);
    ASSERT_LE(d.circuit.num_qubits(), 6u);
    const auto got = oracle::density_distribution(d.circuit, {}, d.num_output_clbits);
    const std::map<std::uint64_t, double> want{{0b00, 0.5}, {0b11, 0.5}};
    EXPECT_LE(linf(got, want), 1e-10);
    EXPECT_LE(linf(run_exact(d.circuit, d.num_output_clbits), want), 1e-10);
}

TEST(Telegate, two_hop_path_matches_local_cx) {
    const auto s = ts::network(3, 3, false);
    const DqcCircuit d = construct(bell_input(), s, ts::partition({0, 2}, s));
    ASSERT_EQ(d.remote_cnots.size(), 1u);
    EXPECT_EQ(d.remote_cnots[0].path.hops(), 2u);
    EXPECT_EQ(d.epr_pairs(), 2u);
    EXPECT_EQ(count_epr_cx(d.circuit), 2u);
    ASSERT_LE(d.circuit.num_qubits(), 6u);
    const auto got = oracle::density_distribution(d.circuit, {}, d.num_output_clbits);
    const std::map<std::uint64_t, double> want{{0b00, 0.5}, {0b11, 0.5}};
    EXPECT_LE(linf(got, want), 1e-10);
}

TEST(Telegate, no_remote_gates_is_identity) {
    const auto s = ts::network(2, 4, false);
    const Circuit in = bell_input();
    const DqcCircuit d = construct(in, s, ts::partition({0, 0}, s));
    EXPECT_EQ(d.circuit.instructions(), in.instructions());
    EXPECT_EQ(d.allocation.total(), 0u);
    EXPECT_EQ(d.epr_pairs(), 0u);
}

TEST(Telegate, random_circuits_on_lines_and_rings) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 24; ++t) {
        const std::size_t k = 2 + static_cast<std::size_t>(t % 3);
        const bool ring = t % 2 == 1;
        const auto s = ts::network(k, 5, ring);
        const std::size_t n = 4;
        std::vector<std::size_t> part(n);
        for (auto& p : part) p = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
        const Circuit c = ts::measured(ts::random_unitary_circuit(rng, n, 14, 0.5));
        const DqcCircuit d = construct(c, s, ts::partition(part, s));
        EXPECT_EQ(count_epr_cx(d.circuit), d.epr_pairs());
        ASSERT_LE(linf(run_exact(d.circuit, d.num_output_clbits), oracle::terminal_distribution(c)), 1e-9)
            << "trial " << t;
    }
}

TEST(Telegate, json_round_trip) {
    const auto s = ts::network(3, 3, true);
    const DqcCircuit d = construct(bell_input(), s, ts::partition({0, 2}, s));
    const DqcCircuit back = dqc_from_json(dqc_to_json(d));
    EXPECT_EQ(back.circuit, d.circuit);
    EXPECT_EQ(back.allocation, d.allocation);
    EXPECT_EQ(back.partition_map, d.partition_map);
    EXPECT_EQ(back.epr_pairs(), d.epr_pairs());
    EXPECT_EQ(dqc_to_json(back), dqc_to_json(d));
}

TEST(SyncTags, parse) {
    EXPECT_EQ(sync_tag::epr(3, 1), "rg0003.epr01");
    const auto e = sync_tag::parse(sync_tag::es(12, 0));
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->kind, sync_tag::Kind::Es);
    EXPECT_EQ(e->remote_index, 12u);
    const auto t = sync_tag::parse(sync_tag::telegate(7));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->kind, sync_tag::Kind::TeleGate);
    EXPECT_FALSE(sync_tag::parse(sync_tag::telegate_local(7)).has_value());
    EXPECT_FALSE(sync_tag::parse("pin.rg0000.tg").has_value());
    EXPECT_FALSE(sync_tag::parse("rg00x0.tg").has_value());
}
