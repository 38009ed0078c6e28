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

#include <map>
#include <set>

#include "../oracles/topo.hpp"
#include "../support/builders.hpp"
#include "../support/deadlock.hpp"
#include "disq/assembler.hpp"
#include "disq/constructor.hpp"
#include "disq/error.hpp"
#include "disq/isolator.hpp"
#include "disq/transpiler.hpp"

using namespace disq;
namespace ts = testing_support;

namespace {

AssembledCircuit build(const Circuit& in, const ArchitectureSpec& s, const PartitionMap& pm, bool lower) {
    const DqcCircuit d = construct(in, s, pm);
    const IsolationResult iso = isolate(d, s);
    std::vector<TranspiledSubcircuit> subs;
    for (const auto& x : iso.subcircuits) subs.push_back(lower ? transpile(x, s.qpu(x.qpu_id), 1) : passthrough(x));
    return assemble(subs, iso.sync_table, s, iso.num_data_qubits, iso.num_clbits, iso.num_output_clbits);
}

std::vector<std::size_t> positions(const std::vector<std::size_t>& order) {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    return pos;
}

/// Conditioned instructions come after the last earlier write of their clbit, in trace order.
void expect_conditions_follow_sources(const AssembledCircuit& a) {
    const auto pos = positions(a.trace.order);
    for (std::size_t i = 0; i < a.circuit.size(); ++i) {
        const auto& ins = a.circuit[i];
        if (!ins.condition) continue;
        std::optional<std::size_t> src;
        for (std::size_t j = 0; j < i; ++j) {
            const auto& w = a.circuit[j];
            if (w.kind == GateKind::Measure && w.clbits[0] == ins.condition->clbit) src = j;
        }
        ASSERT_TRUE(src.has_value()) << i;
        EXPECT_LT(pos[*src], pos[i]);
    }
}

Circuit fig4_input() {
    Circuit c(2, 2);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::Z, {1}));
    c.append(make_gate(GateKind::CX, {0, 1}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    return c;
}

}  // namespace

TEST(Assembler, fig4_merge_places_local_gates_first) {
    const auto s = ts::network(2, 3, false);
    const AssembledCircuit a = build(fig4_input(), s, ts::partition({0, 1}, s), false);
    const Qubit q0 = static_cast<Qubit>(a.qubit_offsets[0] + 0);
    const Qubit q1 = static_cast<Qubit>(a.qubit_offsets[1] + 0);
    std::optional<std::size_t> h, z, sync_start;
    for (std::size_t i = 0; i < a.circuit.size(); ++i) {
        const auto& ins = a.circuit[i];
        if (ins.kind == GateKind::H && ins.qubits[0] == q0 && !ins.tag && !h) h = i;
        if (ins.kind == GateKind::Z && ins.qubits[0] == q1 && !ins.tag && !z) z = i;
        if (ins.tag && *ins.tag == sync_tag::telegate(0) && !sync_start) sync_start = i;
    }
    ASSERT_TRUE(h && z && sync_start);
    EXPECT_LT(*h, *sync_start);
    EXPECT_LT(*z, *sync_start);
    const auto pos = positions(a.trace.order);
    EXPECT_LT(pos[*h], pos[*sync_start]);
    EXPECT_LT(pos[*z], pos[*sync_start]);
    EXPECT_TRUE(oracle::respects(a.trace.order, a.circuit.size(), oracle::dependency_edges(a.circuit)));
    expect_conditions_follow_sources(a);
}

TEST(Assembler, no_sync_points_concatenate) {
    auto s = ts::network(2, 2, false);
    IsolatedSubcircuit x{"q0", Circuit(2, 2), {}, {0, 1}};
    x.circuit.append(make_gate(GateKind::H, {0}));
    x.circuit.append(make_measure(0, 0));
    IsolatedSubcircuit y{"q1", Circuit(2, 2), {}, {2, 3}};
    y.circuit.append(make_gate(GateKind::X, {1}));
    y.circuit.append(make_measure(1, 1));
    const AssembledCircuit a = assemble({passthrough(x), passthrough(y)}, SyncTable{}, s, 4, 2, 2);
    ASSERT_EQ(a.circuit.size(), 4u);
    EXPECT_EQ(a.circuit[0], make_gate(GateKind::H, {0}));
    EXPECT_EQ(a.circuit[1], make_measure(0, 0));
    EXPECT_EQ(a.circuit[2], make_gate(GateKind::X, {3}));
    EXPECT_EQ(a.circuit[3], make_measure(3, 1));
    EXPECT_EQ(a.qubit_offsets, (std::vector<std::size_t>{0, 2}));
}

TEST(Assembler, crossed_single_qubit_vgs_deadlock) {
    const ts::DeadlockFixture f = ts::crossed_single_vgs();
    EXPECT_TRUE(validate_isolation(f.subs).empty());
    try {
        assemble({passthrough(f.subs[0]), passthrough(f.subs[1])}, f.table, f.spec, 0, 0, 0);
        FAIL() << "expected a deadlock";
    } catch (const DeadlockError& e) {
        EXPECT_EQ(e.blocked_sync_ids(), f.sync_ids);
        EXPECT_EQ(e.category(), ErrorCategory::Internal);
    }
}

TEST(Assembler, opposite_telegates_do_not_deadlock) {
    const auto s = ts::network(2, 4, false);
    Circuit c(4, 4);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::H, {3}));
    c.append(make_gate(GateKind::CX, {0, 2}));
    c.append(make_gate(GateKind::CX, {3, 1}));
    c.append(make_gate(GateKind::CX, {2, 1}));
    c.append(make_gate(GateKind::CX, {1, 2}));
    for (Qubit q = 0; q < 4; ++q) c.append(make_measure(q, q));
    for (bool lower : {false, true}) {
        const AssembledCircuit a = build(c, s, ts::partition({0, 0, 1, 1}, s), lower);
        EXPECT_TRUE(oracle::respects(a.trace.order, a.circuit.size(), oracle::dependency_edges(a.circuit)));
        expect_conditions_follow_sources(a);
    }
}

TEST(Trace, single_qpu_follows_instruction_order) {
    const auto s = ts::network(1, 3, false);
    Circuit c(2, 2);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::CX, {0, 1}));
    c.append(make_gate(GateKind::X, {1}));
    c.append(make_gate(GateKind::CX, {1, 0}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    AssembledCircuit a = build(c, s, ts::partition({0, 0}, s), false);
    const auto trace = derive_trace(a);
    ASSERT_EQ(trace.size(), a.circuit.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        EXPECT_EQ(trace[i].index, i);
        EXPECT_EQ(trace[i].qpu, "q0");
        EXPECT_FALSE(trace[i].sync_id.has_value());
    }
}

TEST(Trace, two_hop_bell_measurement_precedes_corrections) {
    const auto s = ts::network(3, 3, false);
    Circuit c(2, 2);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::CX, {0, 1}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    AssembledCircuit a = build(c, s, ts::partition({0, 2}, s), true);
    const auto trace = derive_trace(a);
    // Each ES correction sits on the far endpoint and follows the repeater measurement feeding it.
    std::map<Clbit, std::size_t> measured_at;
    std::set<Qubit> repeater_qubits;
    std::size_t links = 0, fixes = 0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (trace[k].qpu == "link") ++links;
        if (!trace[k].sync_id) continue;
        const auto tag = sync_tag::parse(*trace[k].sync_id);
        if (!tag || tag->kind != sync_tag::Kind::Es) continue;
        const auto& ins = a.circuit[trace[k].index];
        if (ins.kind == GateKind::Measure) {
            measured_at[ins.clbits[0]] = k;
            repeater_qubits.insert(ins.qubits[0]);
        }
        if (!ins.condition) continue;
        ++fixes;
        ASSERT_TRUE(measured_at.count(ins.condition->clbit)) << k;
        EXPECT_LT(measured_at[ins.condition->clbit], k);
        EXPECT_FALSE(repeater_qubits.count(ins.qubits[0]));
    }
    EXPECT_EQ(measured_at.size(), 2u);
    EXPECT_EQ(repeater_qubits.size(), 2u);
    EXPECT_GE(fixes, 2u);
    EXPECT_EQ(links, 4u);  // H and CX for each of two raw pairs
    expect_conditions_follow_sources(a);
    const std::string jsonl = trace_to_jsonl(trace);
    EXPECT_EQ(static_cast<std::size_t>(std::count(jsonl.begin(), jsonl.end(), '\n')), trace.size());
    EXPECT_EQ(assembled_from_json(assembled_to_json(a)), a);
}

TEST(Assembler, rejects_inconsistent_inputs) {
    const auto s = ts::network(2, 3, false);
    const DqcCircuit d = construct(fig4_input(), s, ts::partition({0, 1}, s));
    const IsolationResult iso = isolate(d, s);
    std::vector<TranspiledSubcircuit> subs;
    for (const auto& x : iso.subcircuits) subs.push_back(passthrough(x));
    SyncTable missing = iso.sync_table;
    missing.entries.pop_back();
    EXPECT_THROW(assemble(subs, missing, s, iso.num_data_qubits, iso.num_clbits, iso.num_output_clbits),
                 InternalError);
    auto narrow = subs;
    narrow[0].circuit = Circuit(2, iso.num_clbits);
    EXPECT_THROW(assemble(narrow, iso.sync_table, s, iso.num_data_qubits, iso.num_clbits, iso.num_output_clbits),
                 InternalError);
}
