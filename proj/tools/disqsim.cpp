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

// disqsim: command-line driver for the distributed compile-and-simulate pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disq/architecture.hpp"
#include "disq/benchmarks.hpp"
#include "disq/circuit_io.hpp"
#include "disq/error.hpp"
#include "disq/metrics.hpp"
#include "disq/pipeline.hpp"

namespace {

using namespace disq;

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text_file(out, text);
    }
}

/// A file path, or a benchmark name such as "ghz-16" when no such file exists.
Circuit load_input(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_circuit_file(arg);
    try {
        return generate(parse_benchmark(arg));
    } catch (const InputError&) {
        throw InputError("circuit \"" + arg + "\" is neither a file nor a benchmark name");
    }
}

struct RunArgs {
    std::string circuit;
    std::string arch;
    std::size_t shots = 10000;
    std::uint64_t seed = 1;
    bool exact = false;
    double kappa = 1.0;
    std::optional<double> distance;
    int opt_level = 1;
    std::string metric = "bhattacharyya";
    std::string stage;
    std::string from_stage;
    bool noise_free = false;
    std::string out;
    std::string format = "json";
};

PipelineOptions options_of(const RunArgs& a) {
    PipelineOptions o;
    o.exact = a.exact;
    o.shots = a.shots;
    o.seed = a.seed;
    o.kappa = a.kappa;
    o.distance_km = a.distance;
    o.opt_level = a.opt_level;
    o.noise_free = a.noise_free;
    o.metric = fidelity_metric_from_name(a.metric);
    return o;
}

int cmd_run(const RunArgs& a) {
    const PipelineOptions opts = options_of(a);
    PipelineState state;
    if (!a.from_stage.empty()) {
        state = stage_from_json(parse_json_text(read_text_file(a.from_stage)));
    } else {
        if (a.circuit.empty()) throw InputError("run needs a circuit (or --from-stage)");
        if (a.arch.empty()) throw InputError("run needs --arch");
        state = start_pipeline(load_input(a.circuit), load_architecture(a.arch), opts);
    }
    if (!a.stage.empty()) {
        const Stage target = stage_from_name(a.stage);
        if (state.started && target < state.reached) {
            throw InputError("--stage " + a.stage + " precedes the loaded stage " +
                             std::string(stage_name(state.reached)));
        }
        advance(state, target);
        if (target == Stage::Trace && a.format == "jsonl") {
            AssembledCircuit copy = *state.assembled;
            emit(trace_to_jsonl(derive_trace(copy)), a.out);
        } else {
            emit(stage_to_json(state).dump(2) + "\n", a.out);
        }
        return 0;
    }
    advance(state, Stage::NoiseSpec);
    emit(report_to_json(simulate(state, opts)).dump(2) + "\n", a.out);
    return 0;
}

struct MatrixArgs {
    std::vector<std::string> benchmarks;
    std::vector<std::string> archs;
    std::vector<double> distances{0.2};
    std::size_t shots = 10000;
    std::uint64_t seed = 1;
    double kappa = 1.0;
    bool exact = false;
    bool noise_free = false;
    int opt_level = 1;
    std::string metric = "bhattacharyya";
    std::size_t threads = 0;
    std::string format = "csv";
    std::string out;
};

int cmd_matrix(const MatrixArgs& a) {
    PipelineOptions o;
    o.shots = a.shots;
    o.seed = a.seed;
    o.kappa = a.kappa;
    o.exact = a.exact;
    o.noise_free = a.noise_free;
    o.opt_level = a.opt_level;
    o.metric = fidelity_metric_from_name(a.metric);
    std::vector<std::string> benchmarks;
    for (const auto& b : a.benchmarks) {
        if (!b.empty()) benchmarks.push_back(b);
    }
    const auto cells = run_matrix(benchmarks, a.archs, a.distances, o, a.threads);
    if (a.format == "json") {
        emit(matrix_to_json(cells).dump(2) + "\n", a.out);
    } else {
        emit(matrix_to_csv(cells), a.out);
    }
    for (const auto& c : cells) {
        if (!c.error.empty()) {
            std::cerr << "cell " << c.benchmark << " / " << c.arch << " / " << c.distance_km << ": " << c.error
                      << "\n";
        }
    }
    return 0;
}

int cmd_bench_list() {
    for (const auto& name : benchmark_names()) {
        const BenchmarkSpec b = default_benchmark(name);
        const CircuitMetrics m = circuit_metrics(generate(b));
        char line[160];
        std::snprintf(line, sizeof line, "%-11s qubits=%-3zu depth=%-4zu two_qubit=%-4zu igd=%.2f\n", name.c_str(),
                      m.qubits, m.depth, m.two_qubit_count, m.igd);
        std::cout << line;
    }
    return 0;
}

int cmd_bench_gen(const std::string& name, const std::string& format, const std::string& out) {
    const Circuit c = generate(parse_benchmark(name));
    emit(format == "qasm" ? to_qasm(c) : serialize_circuit(c), out);
    return 0;
}

int cmd_validate_arch(const std::string& arg) {
    const ArchitectureSpec spec = load_architecture(arg);
    validate_architecture(spec);
    std::cout << "ok: " << spec.name << ", " << spec.qpus.size() << " QPUs, " << spec.total_qubits() << " qubits, "
              << spec.network.edges.size() << " links\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed quantum circuit compiler and noisy simulator"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Compile a circuit for an architecture and simulate it");
    run_cmd->add_option("circuit", run.circuit, "Circuit file (.qasm or native json) or benchmark name");
    run_cmd->add_option("--arch", run.arch, "Architecture preset name or JSON file");
    run_cmd->add_option("--shots", run.shots, "Number of shots")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_flag("--exact", run.exact, "Exact noise-free distribution instead of sampling");
    run_cmd->add_option("--kappa", run.kappa, "Scale of the EPR depolarizing channel")->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--distance", run.distance, "Override every link length (km)");
    run_cmd->add_option("--opt-level", run.opt_level, "Transpiler optimization level")->check(CLI::Range(0, 1));
    run_cmd->add_option("--fidelity-metric", run.metric, "bhattacharyya or top-ratio");
    run_cmd->add_option("--stage", run.stage, "Stop after this stage and dump its artifact");
    run_cmd->add_option("--from-stage", run.from_stage, "Resume from a dumped stage artifact");
    run_cmd->add_flag("--noise-free", run.noise_free, "Zero all device noise profiles");
    run_cmd->add_option("--out", run.out, "Output file (default stdout)");
    run_cmd->add_option("--format", run.format, "json, or jsonl for --stage trace");

    MatrixArgs mx;
    auto* mx_cmd = app.add_subcommand("matrix", "Fidelity and metrics over benchmarks x architectures x distances");
    mx_cmd->add_option("--benchmarks", mx.benchmarks, "Comma-separated benchmark names")->delimiter(',');
    mx_cmd->add_option("--archs", mx.archs, "Comma-separated presets or files")->delimiter(',');
    mx_cmd->add_option("--distances", mx.distances, "Comma-separated link lengths (km)")->delimiter(',');
    mx_cmd->add_option("--shots", mx.shots, "Shots per cell")->check(CLI::PositiveNumber);
    mx_cmd->add_option("--seed", mx.seed, "Master seed");
    mx_cmd->add_option("--kappa", mx.kappa, "Scale of the EPR depolarizing channel")->check(CLI::Range(0.0, 1.0));
    mx_cmd->add_flag("--exact", mx.exact, "Exact noise-free distributions");
    mx_cmd->add_flag("--noise-free", mx.noise_free, "Zero all device noise profiles");
    mx_cmd->add_option("--opt-level", mx.opt_level, "Transpiler optimization level")->check(CLI::Range(0, 1));
    mx_cmd->add_option("--fidelity-metric", mx.metric, "bhattacharyya or top-ratio");
    mx_cmd->add_option("--threads", mx.threads, "Worker threads (0 = hardware)");
    mx_cmd->add_option("--format", mx.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    mx_cmd->add_option("--out", mx.out, "Output file (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "Benchmark circuits");
    bench_cmd->require_subcommand(1);
    auto* list_cmd = bench_cmd->add_subcommand("list", "List benchmark families with their metrics");
    std::string gen_name, gen_format = "json", gen_out;
    auto* gen_cmd = bench_cmd->add_subcommand("gen", "Write a benchmark circuit");
    gen_cmd->add_option("name", gen_name, "Benchmark name, optionally with a size (ghz-16)")->required();
    gen_cmd->add_option("--format", gen_format, "json or qasm")->check(CLI::IsMember({"json", "qasm"}));
    gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    std::string arch_arg;
    auto* va_cmd = app.add_subcommand("validate-arch", "Check an architecture configuration");
    va_cmd->add_option("arch", arch_arg, "Preset name or JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ErrorCategory::Input);
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*mx_cmd) return cmd_matrix(mx);
        if (*list_cmd) return cmd_bench_list();
        if (*gen_cmd) return cmd_bench_gen(gen_name, gen_format, gen_out);
        if (*va_cmd) return cmd_validate_arch(arch_arg);
    } catch (const Error& e) {
        std::cerr << "disqsim: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "disqsim: internal error: " << e.what() << "\n";
        return static_cast<int>(ErrorCategory::Internal);
    }
    return 0;
}
