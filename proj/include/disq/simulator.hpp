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
#include <map>
#include <string>
#include <vector>

#include "disq/assembler.hpp"
#include "disq/circuit.hpp"
#include "disq/noise.hpp"
#include "disq/statevector.hpp"

namespace disq {

/// Outcome probabilities keyed by the output clbits (bit i of the key is clbit i).
using Distribution = std::map<std::uint64_t, double>;

struct ShotResult {
    std::uint64_t bits = 0;
    std::uint64_t seed = 0;  // per-shot stream seed derived from (master seed, shot index)

    bool operator==(const ShotResult&) const = default;
};

struct SimulatorOptions {
    std::size_t qubit_limit = k_default_qubit_limit;
    /// Shots whose sampled error pattern is empty share one branching run;
    /// past this many live branches they fall back to per-shot trajectories.
    std::size_t branch_cap = 64;
};

/// Exact output distribution by branching on mid-circuit measurements.
/// Measurements that nothing later depends on are read from the final state.
/// The order defaults to instruction order.
Distribution run_exact(const Circuit& c, std::size_t num_output_clbits, const std::vector<std::size_t>& order = {},
                       const SimulatorOptions& opts = {});
Distribution run_exact(const AssembledCircuit& a, const SimulatorOptions& opts = {});

/// Monte-Carlo sampling with the noise channels. Shot i uses streams derived
/// from (seed, i) only, so results do not depend on the number of shots.
std::vector<ShotResult> run_shots(const Circuit& c, std::size_t num_output_clbits,
                                  const std::vector<std::size_t>& order, const NoiseSpec& noise, std::size_t shots,
                                  std::uint64_t seed, const SimulatorOptions& opts = {});
std::vector<ShotResult> run_shots(const AssembledCircuit& a, const NoiseSpec& noise, std::size_t shots,
                                  std::uint64_t seed, const SimulatorOptions& opts = {});

/// Order used by the AssembledCircuit overloads: the trace, except that each
/// EPR preparation runs just before the first instruction that needs it. Any
/// linearization of the dependency DAG gives the same distribution; this one
/// keeps fewer communication qubits entangled at a time.
std::vector<std::size_t> simulation_order(const AssembledCircuit& a);

struct TrajectoryRun {
    std::vector<ShotResult> shots;
    /// Mean over shots of each shot's Born distribution on the terminal
    /// measurements: an unbiased estimate of the noisy distribution with far
    /// less variance than the histogram of `shots`.
    Distribution born;
};

TrajectoryRun run_trajectories(const Circuit& c, std::size_t num_output_clbits, const std::vector<std::size_t>& order,
                               const NoiseSpec& noise, std::size_t shots, std::uint64_t seed,
                               const SimulatorOptions& opts = {});
TrajectoryRun run_trajectories(const AssembledCircuit& a, const NoiseSpec& noise, std::size_t shots,
                               std::uint64_t seed, const SimulatorOptions& opts = {});

Distribution shots_to_distribution(const std::vector<ShotResult>& shots);

/// Bhattacharyya fidelity (sum_s sqrt(p(s) q(s)))^2.
double fidelity(const Distribution& noisy, const Distribution& ideal);
/// noisy(top) / ideal(top) for the most likely ideal outcome, capped at 1.
double top_ratio_fidelity(const Distribution& noisy, const Distribution& ideal);
double total_variation(const Distribution& a, const Distribution& b);
double max_abs_difference(const Distribution& a, const Distribution& b);

/// Clbit n-1 first, clbit 0 last.
std::string bitstring(std::uint64_t key, std::size_t num_bits);

/// Deterministic per-shot seed.
std::uint64_t shot_seed(std::uint64_t master, std::uint64_t shot);

}  // namespace disq
