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

#include <cmath>

#include "../support/builders.hpp"
#include "disq/architecture.hpp"
#include "disq/assembler.hpp"
#include "disq/constructor.hpp"
#include "disq/error.hpp"
#include "disq/isolator.hpp"
#include "disq/noise.hpp"
#include "disq/transpiler.hpp"

using namespace disq;
namespace ts = testing_support;

namespace {

AssembledCircuit build(const Circuit& in, const ArchitectureSpec& s, const PartitionMap& pm) {
    const DqcCircuit d = construct(in, s, pm);
    const IsolationResult iso = isolate(d, s);
    std::vector<TranspiledSubcircuit> subs;
    for (const auto& x : iso.subcircuits) subs.push_back(transpile(x, s.qpu(x.qpu_id), 1));
    return assemble(subs, iso.sync_table, s, iso.num_data_qubits, iso.num_clbits, iso.num_output_clbits);
}

Circuit bell() {
    Circuit c(2, 2);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::CX, {0, 1}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    return c;
}

}  // namespace

TEST(Link, transmissivity_values) {
    EXPECT_NEAR(transmissivity(0.05, 0.2), 0.990049834, 1e-9);
    EXPECT_NEAR(transmissivity(0.05, 2.0), 0.904837418, 1e-9);
    EXPECT_DOUBLE_EQ(transmissivity(0.3, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(transmissivity(0.0, 7.0), 1.0);
    EXPECT_THROW(transmissivity(-0.1, 1.0), InputError);
    EXPECT_THROW(transmissivity(0.1, -1.0), InputError);
}

TEST(Link, pair_depolarizing) {
    const LinkNoiseProfile l = link_noise(0.05, 0.2);
    EXPECT_NEAR(l.p_epr, 1.0 - std::exp(-0.01), 1e-15);
    EXPECT_NEAR(l.p_epr, 0.00995, 1e-5);
    EXPECT_EQ(link_noise(0.05, 0.2, 0.0).p_epr, 0.0);
    EXPECT_NEAR(link_noise(0.05, 0.2, 0.5).p_epr, 0.5 * l.p_epr, 1e-15);
    double last = -1.0;
    for (double d : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double p = link_noise(0.05, d).p_epr;
        EXPECT_GT(p, last) << d;
        last = p;
    }
    EXPECT_THROW(link_noise(0.05, 0.2, -0.01), InputError);
    EXPECT_THROW(link_noise(0.05, 0.2, 1.01), InputError);
}

TEST(NoiseSpec, zero_noise_is_silent) {
    const ArchitectureSpec b = with_zero_noise(preset_architecture("arch-b"));
    Circuit c(8, 8);
    for (Qubit q = 0; q < 8; ++q) c.append(make_gate(GateKind::H, {q}));
    for (Qubit q = 0; q + 1 < 8; ++q) c.append(make_gate(GateKind::CX, {q, static_cast<Qubit>(q + 1)}));
    for (Qubit q = 0; q < 8; ++q) c.append(make_measure(q, q));
    const AssembledCircuit a = build(c, b, default_partition(c, b));
    const NoiseSpec ns = build_noise_spec(a, b, 0.0);
    ASSERT_EQ(ns.channels.size(), a.circuit.size());
    for (const auto& ch : ns.channels) EXPECT_EQ(ch, ErrorChannel{});
    EXPECT_EQ(ns.average_gate_noise, 0.0);
    EXPECT_EQ(ns.noisy_instructions, 0u);
}

TEST(NoiseSpec, single_vigo_device_channels) {
    const ArchitectureSpec b = preset_architecture("arch-b");
    Circuit c(3, 3);
    c.append(make_gate(GateKind::H, {0}));
    c.append(make_gate(GateKind::CX, {0, 1}));
    c.append(make_gate(GateKind::CX, {1, 2}));
    c.append(make_gate(GateKind::RZ, {2}, {0.3}));
    for (Qubit q = 0; q < 3; ++q) c.append(make_measure(q, q));
    const AssembledCircuit a = build(c, b, ts::partition({0, 0, 0}, b));
    const NoiseSpec ns = build_noise_spec(a, b);
    std::size_t two = 0, one = 0, ro = 0, noisy = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.circuit.size(); ++i) {
        const auto& ins = a.circuit[i];
        const auto& ch = ns.channels[i];
        if (is_two_qubit_unitary(ins.kind)) {
            EXPECT_EQ(ch.kind, ChannelKind::Depolarizing2);
            EXPECT_DOUBLE_EQ(ch.p, 7e-3);
            ++two;
        } else if (is_single_qubit_unitary(ins.kind)) {
            EXPECT_EQ(ch.kind, ChannelKind::Depolarizing1);
            EXPECT_DOUBLE_EQ(ch.p, 5e-4);
            ++one;
        } else if (ins.kind == GateKind::Measure) {
            EXPECT_EQ(ch.kind, ChannelKind::ReadoutFlip);
            EXPECT_DOUBLE_EQ(ch.p, 2e-2);
            ++ro;
        } else {
            EXPECT_EQ(ch.kind, ChannelKind::None) << gate_name(ins.kind);
        }
        if (ch.kind != ChannelKind::None) {
            ++noisy;
            sum += ch.p;
        }
    }
    EXPECT_GE(two, 2u);
    EXPECT_GE(one, 1u);
    EXPECT_EQ(ro, 3u);
    EXPECT_EQ(ns.noisy_instructions, noisy);
    EXPECT_NEAR(ns.average_gate_noise, sum / static_cast<double>(noisy), 1e-15);
}

TEST(NoiseSpec, one_remote_cx_has_one_link_channel) {
    auto s = ts::network(2, 3, false, 0.2);
    s.network.alpha = 0.05;
    const AssembledCircuit a = build(bell(), s, ts::partition({0, 1}, s));
    const NoiseSpec ns = build_noise_spec(a, s);
    std::size_t links = 0;
    for (std::size_t i = 0; i < ns.channels.size(); ++i) {
        if (ns.channels[i].kind != ChannelKind::EprDepolarizing) continue;
        ++links;
        EXPECT_EQ(a.circuit[i].kind, GateKind::CX);
        EXPECT_TRUE(is_epr_preparation(a.circuit[i]));
        EXPECT_NEAR(ns.channels[i].p, 1.0 - 0.990049834, 1e-9);
    }
    EXPECT_EQ(links, 1u);
    EXPECT_EQ(ns.noisy_instructions, 1u);  // devices are noiseless in this fixture

    const NoiseSpec off = build_noise_spec(a, s, 0.0);
    EXPECT_EQ(off.noisy_instructions, 0u);
}

TEST(NoiseSpec, json_round_trip) {
    const ArchitectureSpec b = preset_architecture("arch-b");
    const AssembledCircuit a = build(bell(), b, ts::partition({0, 1}, b));
    const NoiseSpec ns = build_noise_spec(a, b);
    EXPECT_EQ(noise_spec_from_json(noise_spec_to_json(ns)), ns);
    for (auto k : {ChannelKind::None, ChannelKind::Depolarizing1, ChannelKind::Depolarizing2, ChannelKind::ReadoutFlip,
                   ChannelKind::EprDepolarizing, ChannelKind::ResetFailure}) {
        EXPECT_EQ(channel_from_name(channel_name(k)), k);
    }
    EXPECT_THROW(channel_from_name("amplitude-damping"), InputError);
    EXPECT_THROW(noise_spec_from_json(parse_json_text(R"({"channels": []})")), InputError);
}
