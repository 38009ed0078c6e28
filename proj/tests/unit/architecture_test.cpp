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

#include <filesystem>
#include <numeric>

#include "../support/builders.hpp"
#include "disq/architecture.hpp"
#include "disq/benchmarks.hpp"
#include "disq/circuit_io.hpp"
#include "disq/constructor.hpp"
#include "disq/error.hpp"

using namespace disq;

namespace {

std::vector<std::size_t> sizes(const PartitionMap& pm) {
    std::vector<std::size_t> out(pm.num_partitions(), 0);
    for (auto p : pm.partition) ++out[p];
    return out;
}

}  // namespace

TEST(Architecture, preset_shapes) {
    const ArchitectureSpec b = preset_architecture("arch-b");
    ASSERT_EQ(b.qpus.size(), 4u);
    for (const auto& q : b.qpus) EXPECT_EQ(q.num_qubits, 5u);
    ASSERT_EQ(b.network.edges.size(), 6u);  // all pairs of 4
    EXPECT_DOUBLE_EQ(b.network.alpha, 0.05);
    for (const auto& e : b.network.edges) EXPECT_DOUBLE_EQ(e.length_km, 0.2);

    const ArchitectureSpec a = preset_architecture("arch-a");
    ASSERT_EQ(a.qpus.size(), 1u);
    EXPECT_EQ(a.qpus[0].num_qubits, 28u);
    EXPECT_TRUE(a.network.edges.empty());

    EXPECT_EQ(preset_names(), (std::vector<std::string>{"arch-a", "arch-b", "arch-c", "arch-d", "arch-e"}));
    EXPECT_THROW(preset_architecture("arch-z"), InputError);
}

TEST(Architecture, surrogate_noise_values) {
    const ArchitectureSpec a = preset_architecture("arch-a");
    const auto& cam = a.qpus[0].noise;
    EXPECT_DOUBLE_EQ(cam.p1, 1e-3);
    EXPECT_DOUBLE_EQ(cam.p2, 2e-2);
    EXPECT_DOUBLE_EQ(cam.p_ro, 3e-2);
    const ArchitectureSpec b = preset_architecture("arch-b");
    const auto& vigo = b.qpus[0].noise;
    EXPECT_DOUBLE_EQ(vigo.p1, 5e-4);
    EXPECT_DOUBLE_EQ(vigo.p2, 7e-3);
    EXPECT_DOUBLE_EQ(vigo.p_ro, 2e-2);
    const ArchitectureSpec c = preset_architecture("arch-c");
    const QpuProfile& aria = c.qpu("aria");
    EXPECT_DOUBLE_EQ(aria.noise.p2, 4e-3);
    EXPECT_DOUBLE_EQ(aria.noise.p_ro, 5e-3);
    EXPECT_TRUE(aria.all_to_all());
    EXPECT_TRUE(aria.in_basis(GateKind::RXX));
    EXPECT_EQ(aria.family(), BasisFamily::TrappedIon);
}

TEST(Architecture, presets_round_trip_byte_exact) {
    for (const auto& name : preset_names()) {
        const ArchitectureSpec s = preset_architecture(name);
        EXPECT_EQ(serialize_architecture(s), preset_text(name)) << name;
        EXPECT_EQ(architecture_from_json(architecture_to_json(s)), s) << name;
        EXPECT_NO_THROW(validate_architecture(s)) << name;
    }
}

TEST(Architecture, loads_files) {
    const auto path = std::filesystem::temp_directory_path() / "disq_arch_test.json";
    write_text_file(path, preset_text("arch-d"));
    EXPECT_EQ(load_architecture(path.string()), preset_architecture("arch-d"));
    std::filesystem::remove(path);
    EXPECT_THROW(load_architecture("/no/such/file.json"), InputError);
}

TEST(Architecture, validation_errors) {
    auto s = testing_support::network(2, 4, false);
    s.network.edges.push_back({"q0", "nowhere", 1.0});
    EXPECT_THROW(validate_architecture(s), InputError);

    s = testing_support::network(2, 4, false);
    s.qpus[1].basis_gates = {GateKind::CX, GateKind::RZ};  // no way to leave the Z axis
    EXPECT_THROW(validate_architecture(s), InputError);

    s = testing_support::network(2, 4, false);
    s.qpus[1].id = "q0";
    EXPECT_THROW(validate_architecture(s), InputError);

    s = testing_support::network(2, 4, false);
    s.qpus[0].coupling_map = {{0, 7}};
    EXPECT_THROW(validate_architecture(s), InputError);

    s = testing_support::network(2, 4, false);
    s.network.edges[0].length_km = -1.0;
    EXPECT_THROW(validate_architecture(s), InputError);

    EXPECT_THROW(architecture_from_json(parse_json_text(R"({"name": "x", "qpus": [], "network": {}, "extra": 1})")),
                 InputError);
}

TEST(Architecture, partition_validation) {
    const auto s = testing_support::network(2, 4, false);
    EXPECT_NO_THROW(validate_partition(testing_support::partition({0, 0, 1}, s), s, 3));
    EXPECT_THROW(validate_partition(testing_support::partition({0, 0}, s), s, 3), InputError);
    EXPECT_THROW(validate_partition(testing_support::partition({0, 5, 1}, s), s, 3), InputError);
    PartitionMap bad = testing_support::partition({0, 1, 1}, s);
    bad.mapping[1] = "missing";
    EXPECT_THROW(validate_partition(bad, s, 3), InputError);
}

TEST(Architecture, six_qubits_on_five_is_capacity_error) {
    auto s = testing_support::network(2, 5, false);
    Circuit c(7);
    for (Qubit q = 0; q + 1 < 7; ++q) c.append(make_gate(GateKind::CX, {q, static_cast<Qubit>(q + 1)}));
    const PartitionMap pm = testing_support::partition({0, 0, 0, 0, 0, 0, 1}, s);
    try {
        construct(c, s, pm);
        FAIL() << "expected a capacity error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::Capacity) << e.what();
    }
}

TEST(DefaultPartition, ghz_on_arch_b_is_even) {
    const Circuit ghz = generate(parse_benchmark("ghz-16"));
    const ArchitectureSpec b = preset_architecture("arch-b");
    const PartitionMap pm = default_partition(ghz, b);
    EXPECT_EQ(sizes(pm), (std::vector<std::size_t>{4, 4, 4, 4}));
    EXPECT_EQ(reserved_comm_qubits(b), (std::vector<std::size_t>{1, 1, 1, 1}));
    // Contiguous blocks in index order.
    for (std::size_t q = 1; q < pm.partition.size(); ++q) EXPECT_LE(pm.partition[q - 1], pm.partition[q]);
    const DqcCircuit d = construct(ghz, b, pm);
    for (const auto& q : b.qpus) EXPECT_EQ(d.allocation.count(q.id), 1u) << q.id;
}

TEST(DefaultPartition, single_qpu_and_overflow) {
    const ArchitectureSpec a = preset_architecture("arch-a");
    const Circuit c8 = generate(parse_benchmark("qaoa-8"));
    const PartitionMap pm = default_partition(c8, a);
    EXPECT_EQ(sizes(pm), (std::vector<std::size_t>{8}));
    EXPECT_EQ(reserved_comm_qubits(a), (std::vector<std::size_t>{0}));
    EXPECT_EQ(construct(c8, a, pm).allocation.total(), 0u);

    const ArchitectureSpec d = preset_architecture("arch-d");
    EXPECT_EQ(sizes(default_partition(generate(parse_benchmark("ghz-16")), d)), (std::vector<std::size_t>{12, 4}));
    try {
        default_partition(Circuit(40), d);
        FAIL() << "expected a capacity error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::Capacity);
    }
}

TEST(Architecture, overrides) {
    const ArchitectureSpec b = with_link_length(preset_architecture("arch-b"), 2.0);
    for (const auto& e : b.network.edges) EXPECT_DOUBLE_EQ(e.length_km, 2.0);
    const ArchitectureSpec z = with_zero_noise(preset_architecture("arch-c"));
    for (const auto& q : z.qpus) {
        EXPECT_EQ(q.noise.p1, 0.0);
        EXPECT_EQ(q.noise.p2, 0.0);
        EXPECT_EQ(q.noise.p_ro, 0.0);
        EXPECT_EQ(q.noise.p_reset, 0.0);
    }
}

TEST(Architecture, coupling_helpers) {
    const auto v = testing_support::qpu("v", 5, testing_support::sc_basis(), testing_support::vigo_coupling());
    EXPECT_TRUE(v.coupled(1, 0));
    EXPECT_TRUE(v.coupled(3, 4));
    EXPECT_FALSE(v.coupled(0, 2));
    EXPECT_EQ(v.adjacency()[1], (std::vector<Qubit>{0, 2, 3}));
    const auto all = testing_support::qpu("w", 3);
    EXPECT_TRUE(all.coupled(0, 2));
    EXPECT_EQ(all.adjacency()[2], (std::vector<Qubit>{0, 1}));
}
