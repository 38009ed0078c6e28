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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disq/architecture.hpp"
#include "disq/assembler.hpp"
#include "disq/circuit.hpp"
#include "disq/circuit_io.hpp"
#include "disq/constructor.hpp"
#include "disq/error.hpp"
#include "disq/isolator.hpp"
#include "disq/noise.hpp"
#include "disq/simulator.hpp"
#include "disq/transpiler.hpp"

namespace disq {

inline constexpr int k_schema_version = 1;

enum class Stage { DqcLogical, Isolated, Transpiled, Assembled, Trace, NoiseSpec };

std::string_view stage_name(Stage s);
Stage stage_from_name(std::string_view name);

/// An error from one pipeline stage; keeps the category of the original.
class StageError : public Error {
public:
    StageError(ErrorCategory category, std::string stage, const std::string& what)
        : Error(category, "stage " + stage + ": " + what), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

enum class FidelityMetric { Bhattacharyya, TopRatio };

std::string_view fidelity_metric_name(FidelityMetric m);
FidelityMetric fidelity_metric_from_name(std::string_view name);

struct PipelineOptions {
    bool exact = false;
    std::size_t shots = 10000;
    std::uint64_t seed = 1;
    double kappa = 1.0;
    std::optional<double> distance_km;  // overrides every link length
    int opt_level = 1;
    bool noise_free = false;            // zero device noise; link noise still follows kappa
    FidelityMetric metric = FidelityMetric::Bhattacharyya;
    SimulatorOptions sim;
};

/// Everything produced so far. The architecture already carries the
/// distance and noise-free overrides.
struct PipelineState {
    Stage reached = Stage::DqcLogical;
    bool started = false;  // false until the first stage ran
    ArchitectureSpec arch;
    Circuit input;
    double kappa = 1.0;
    int opt_level = 1;
    std::optional<DqcCircuit> dqc;
    std::optional<IsolationResult> isolation;
    std::optional<std::vector<TranspiledSubcircuit>> transpiled;
    std::optional<AssembledCircuit> assembled;
    std::optional<NoiseSpec> noise;
};

/// Appends a measurement of every qubit when the circuit measures nothing.
Circuit with_default_measurements(const Circuit& c);

PipelineState start_pipeline(const Circuit& input, const ArchitectureSpec& arch, const PipelineOptions& opts);

/// Runs the stages after `state.reached` up to and including `target`.
void advance(PipelineState& state, Stage target);

/// Self-contained dump of the state at its last completed stage.
Json stage_to_json(const PipelineState& state);
PipelineState stage_from_json(const Json& j);

struct ReportMetrics {
    std::size_t qubits = 0;  // data qubits
    std::size_t depth = 0;
    std::size_t two_qubit_count = 0;
    double igd = 0.0;
    std::size_t epr_pairs_consumed = 0;
    std::size_t comm_qubits = 0;
    double average_gate_noise = 0.0;  // mean error probability over noisy instructions
};

struct SimulationReport {
    bool exact = false;
    std::size_t num_bits = 0;
    Distribution distribution;  // exact, or the shot histogram
    Distribution estimate;      // exact, or the mean of per-shot Born distributions
    Distribution ideal;
    std::uint64_t top_state = 0;
    double top_prob = 0.0;
    double fidelity = 0.0;          // estimate against ideal
    double sampled_fidelity = 0.0;  // histogram against ideal
    FidelityMetric metric = FidelityMetric::Bhattacharyya;
    ReportMetrics metrics;
    std::size_t shots = 0;  // 0 in exact mode
    std::uint64_t seed = 0;
};

/// Simulates a state that has reached at least the noisespec stage.
SimulationReport simulate(const PipelineState& state, const PipelineOptions& opts);

SimulationReport run_pipeline(const Circuit& input, const ArchitectureSpec& arch, const PipelineOptions& opts);

Json report_to_json(const SimulationReport& r);

struct MatrixCell {
    std::string benchmark;
    std::string arch;
    double distance_km = 0.0;
    std::uint64_t seed = 0;
    std::optional<SimulationReport> report;
    std::string error;  // set when the cell failed
};

/// One cell per (benchmark, arch, distance) in that nesting order. Cell i
/// uses shot_seed(opts.seed, i). Failed cells keep their error and the
/// matrix continues. Cells run on up to `threads` workers (0 = hardware).
std::vector<MatrixCell> run_matrix(const std::vector<std::string>& benchmarks, const std::vector<std::string>& archs,
                                   const std::vector<double>& distances, const PipelineOptions& opts,
                                   std::size_t threads = 0);

std::string matrix_to_csv(const std::vector<MatrixCell>& cells);
Json matrix_to_json(const std::vector<MatrixCell>& cells);

}  // namespace disq
