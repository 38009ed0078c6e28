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

#include <sstream>

#include "../support/builders.hpp"
#include "disq/benchmarks.hpp"
#include "disq/pipeline.hpp"

using namespace disq;
namespace ts = testing_support;

namespace {

constexpr Stage k_stages[] = {Stage::DqcLogical, Stage::Isolated, Stage::Transpiled,
                              Stage::Assembled,  Stage::Trace,    Stage::NoiseSpec};

PipelineOptions quick(bool exact) {
    PipelineOptions o;
    o.exact = exact;
    o.shots = 2000;
    o.seed = 9;
    return o;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out(1);
    for (char ch : s) {
        if (ch == sep) {
            out.emplace_back();
        } else {
            out.back() += ch;
        }
    }
    return out;
}

bool has_key(const Json& j, const char* k) { return j.contains(k); }

}  // namespace

TEST(Pipeline, stage_names) {
    for (Stage s : k_stages) EXPECT_EQ(stage_from_name(stage_name(s)), s);
    EXPECT_EQ(stage_name(Stage::NoiseSpec), "noisespec");
    EXPECT_THROW(stage_from_name("simulated"), InputError);
    EXPECT_EQ(fidelity_metric_from_name(fidelity_metric_name(FidelityMetric::TopRatio)), FidelityMetric::TopRatio);
    EXPECT_THROW(fidelity_metric_from_name("l2"), InputError);
}

TEST(Pipeline, resuming_from_any_stage_gives_the_same_report) {
    const Circuit in = generate(parse_benchmark("ghz-6"));
    const ArchitectureSpec b = preset_architecture("arch-b");
    for (bool exact : {true, false}) {
        const PipelineOptions o = quick(exact);
        const std::string direct = report_to_json(run_pipeline(in, b, o)).dump();
        for (Stage st : k_stages) {
            PipelineState s = start_pipeline(in, b, o);
            advance(s, st);
            const std::string text = stage_to_json(s).dump();
            PipelineState resumed = stage_from_json(parse_json_text(text));
            EXPECT_EQ(resumed.reached, st);
            EXPECT_EQ(stage_to_json(resumed).dump(), text) << stage_name(st);
            advance(resumed, Stage::NoiseSpec);
            EXPECT_EQ(report_to_json(simulate(resumed, o)).dump(), direct) << stage_name(st) << " exact=" << exact;
        }
    }
}

TEST(Pipeline, stage_artifacts_reject_other_schemas) {
    PipelineState s = start_pipeline(generate(parse_benchmark("ghz-4")), preset_architecture("arch-b"), quick(true));
    advance(s, Stage::Isolated);
    Json j = stage_to_json(s);
    j["schema"] = k_schema_version + 1;
    EXPECT_THROW(stage_from_json(j), InputError);
    j = stage_to_json(s);
    j["artifact"].erase("isolation");
    EXPECT_THROW(stage_from_json(j), InputError);
}

TEST(Pipeline, errors_carry_stage_and_category) {
    const ArchitectureSpec b = preset_architecture("arch-b");
    try {
        run_pipeline(generate(parse_benchmark("ghz-40")), b, quick(true));
        FAIL() << "expected a stage error";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "dqc-logical");
        EXPECT_EQ(e.category(), ErrorCategory::Capacity);
        EXPECT_NE(std::string(e.what()).find("stage dqc-logical"), std::string::npos);
    }

    // q0 and q2 have no optical path between them.
    auto split_net = ts::network(3, 4, false);
    split_net.network.edges.pop_back();
    split_net.partition_map = ts::partition({0, 2}, split_net);
    Circuit c(2, 2);
    c.append(make_gate(GateKind::CX, {0, 1}));
    try {
        run_pipeline(c, split_net, quick(true));
        FAIL() << "expected a stage error";
    } catch (const StageError& e) {
        EXPECT_EQ(e.category(), ErrorCategory::Capacity) << e.what();
    }

    PipelineState early = start_pipeline(c, b, quick(true));
    advance(early, Stage::Assembled);
    EXPECT_THROW(simulate(early, quick(true)), InternalError);
}

TEST(Pipeline, default_measurements) {
    Circuit c(3, 0);
    c.append(make_gate(GateKind::H, {0}));
    const Circuit m = with_default_measurements(c);
    EXPECT_EQ(m.num_clbits(), 3u);
    ASSERT_EQ(m.size(), 4u);
    for (Qubit q = 0; q < 3; ++q) EXPECT_EQ(m[1 + q], make_measure(q, q));
    EXPECT_EQ(with_default_measurements(m), m);
}

TEST(Pipeline, ghz_on_single_qpu_exact) {
    const SimulationReport r = run_pipeline(generate(parse_benchmark("ghz")), preset_architecture("arch-a"), quick(true));
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.shots, 0u);
    EXPECT_EQ(r.num_bits, 16u);
    EXPECT_NEAR(r.top_prob, 0.5, 1e-12);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
    EXPECT_EQ(r.metrics.epr_pairs_consumed, 0u);
    EXPECT_EQ(r.metrics.comm_qubits, 0u);
    EXPECT_EQ(r.metrics.qubits, 16u);
}

TEST(Pipeline, report_json_layout) {
    const SimulationReport r = run_pipeline(generate(parse_benchmark("ghz-4")), preset_architecture("arch-b"), quick(false));
    const Json j = report_to_json(r);
    for (const char* k : {"schema", "mode", "shots", "seed", "top_state", "top_prob", "fidelity_metric", "fidelity",
                          "infidelity", "sampled_fidelity", "golden", "metrics", "distribution"}) {
        EXPECT_TRUE(has_key(j, k)) << k;
    }
    for (const char* k : {"qubits", "depth", "two_qubit_count", "igd", "epr_pairs_consumed", "comm_qubits",
                          "average_gate_noise"}) {
        EXPECT_TRUE(has_key(j["metrics"], k)) << k;
    }
    EXPECT_EQ(j["mode"], "shots");
    EXPECT_EQ(j["shots"], 2000);
    EXPECT_EQ(j["golden"]["state"].get<std::string>().size(), 4u);
    EXPECT_NEAR(j["infidelity"].get<double>(), 1.0 - j["fidelity"].get<double>(), 1e-15);
    EXPECT_GT(r.metrics.epr_pairs_consumed, 0u);
    EXPECT_GT(r.metrics.average_gate_noise, 0.0);
    EXPECT_GT(r.fidelity, 0.5);
    EXPECT_LT(r.fidelity, 1.0);
}

TEST(Matrix, empty) {
    EXPECT_TRUE(run_matrix({}, {"arch-b"}, {0.2}, quick(true)).empty());
    const std::string csv = matrix_to_csv({});
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
    EXPECT_EQ(matrix_to_json({})["cells"].size(), 0u);
}

TEST(Matrix, cells_csv_and_threads) {
    const auto cells = run_matrix({"ghz-4", "ghz-40"}, {"arch-b", "arch-e"}, {0.2, 2.0}, quick(false), 1);
    ASSERT_EQ(cells.size(), 8u);
    EXPECT_EQ(cells[1].benchmark, "ghz-4");
    EXPECT_EQ(cells[1].arch, "arch-b");
    EXPECT_EQ(cells[1].distance_km, 2.0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        EXPECT_EQ(cells[i].seed, shot_seed(9, i));
        const bool wide = cells[i].benchmark == "ghz-40";
        EXPECT_EQ(cells[i].report.has_value(), !wide) << i << " " << cells[i].error;
        EXPECT_EQ(cells[i].error.empty(), !wide);
    }

    const std::string csv = matrix_to_csv(cells);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "benchmark,arch,distance_km,seed,fidelity,infidelity,sampled_fidelity,average_gate_noise,"
                      "epr_pairs_consumed,depth,two_qubit_count,comm_qubits,top_state,top_prob,error");
    const std::size_t width = split(header, ',').size();
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line); ++rows) EXPECT_EQ(split(line, ',').size(), width) << line;
    EXPECT_EQ(rows, cells.size());

    const Json j = matrix_to_json(cells);
    ASSERT_EQ(j["cells"].size(), 8u);
    EXPECT_TRUE(j["cells"][0]["error"].is_null());
    EXPECT_TRUE(j["cells"][4]["error"].is_string());

    const auto threaded = run_matrix({"ghz-4", "ghz-40"}, {"arch-b", "arch-e"}, {0.2, 2.0}, quick(false), 3);
    EXPECT_EQ(matrix_to_csv(threaded), csv);
}
